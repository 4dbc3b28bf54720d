// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "moi/bounds.hpp"
#include "moi/campaign.hpp"
#include "moi/json_io.hpp"
#include "moi/random_instance.hpp"
#include "moi/sharpness.hpp"

namespace {

using namespace moi;
using Clock = std::chrono::steady_clock;

SchattenExponent S(double p) { return SchattenExponent(p); }
const SchattenExponent kInf = SchattenExponent::infinity();

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

CampaignConfig base_config(std::size_t trials) {
  CampaignConfig cfg;
  cfg.trials = trials;
  cfg.max_dim = 6;
  cfg.max_width = 3;
  cfg.tol = 1e-9;
  return cfg;
}

std::string suite_line(const SuiteResult& r) {
  std::string s = r.name + " trials=" + std::to_string(r.trials) + " worst=" + fmt("%.3e", r.worst);
  if (r.failing_trial) s += " first failing trial " + std::to_string(*r.failing_trial);
  return s;
}

Verdict oracle_equivalence() {
  Verdict v;
  const auto t0 = Clock::now();
  const SuiteResult r = run_oracle_suite(base_config(500));
  const double secs = seconds_since(t0);
  v.note(suite_line(r) + " in " + fmt("%.1f", secs) + " s");
  v.require(r.pass, "an evaluator path disagrees with the oracle");
  v.require(secs < 60.0, "runtime budget exceeded");
  return v;
}

Verdict duality() {
  Verdict v;
  CampaignConfig cfg = base_config(100);
  cfg.duality_queries = 50;
  const SuiteResult r = run_duality_suite(cfg);
  v.note(suite_line(r) + " x 50 queries");
  v.require(r.pass, "duality mismatch");
  return v;
}

Verdict haagerup_main() {
  Verdict v;
  CampaignConfig cfg = base_config(500);
  cfg.arities = {3, 4};
  const SuiteResult r = run_haagerup_main_suite(cfg);
  v.note(suite_line(r));
  v.require(r.pass, "bound violated");

  // Psi = 1, T = R = diag(3, 2, 1), p = q = 2: ||T R||_1 = ||T||_2 ||R||_2
  FiniteSpectralMeasure trivial{3, {{AtomLabel::from_real(0.0), identity(3)}}};
  HaagerupChainRep one;
  one.head = VectorTable(ComplexMatrix::Ones(1, 1));
  one.middles.push_back(MatrixTable{1, 1, {ComplexMatrix::Ones(1, 1)}});
  one.tail = VectorTable(ComplexMatrix::Ones(1, 1));
  ComplexVector d(3);
  d << 3.0, 2.0, 1.0;
  const ComplexMatrix t = d.asDiagonal();
  const MoiInstance eq{{trivial, trivial, trivial}, {t, t}, one};
  const BoundReport rep = check_haagerup_main(eq, S(2), S(2));
  v.note("equality ratio " + fmt("%.15f", rep.ratio));
  v.require(std::abs(rep.ratio - 1.0) <= 1e-10, "equality case off");
  return v;
}

Verdict lemma_row() {
  Verdict v;
  CampaignConfig cfg = base_config(200);
  const SuiteResult r = run_lemma_row_suite(cfg);
  v.note(suite_line(r) + " (p in {2,3,4,inf}, trace identity at p=2)");
  v.require(r.pass, "row bound or trace identity violated");
  return v;
}

Verdict haagerup_like() {
  Verdict v;
  const SuiteResult r = run_haagerup_like_suite(base_config(500));
  v.note(suite_line(r));
  v.require(r.pass, "bound violated");
  return v;
}

Verdict sharpness_growth() {
  Verdict v;
  const auto t0 = Clock::now();
  const std::vector<std::size_t> dims = {64, 256, 1024, 4096};
  struct Case {
    const char* label;
    SweepTemplate tmpl;
    double factor_08;  // ratio(4096) / ratio(64) at s = 0.8 r, from the closed-form diagonal
  };
  const std::vector<Case> cases = {{"mixed m=3 p1=4 pm1=2", {3, Regime::mixed_large_small, S(4), S(2)}, 1.17227},
                                   {"both-small m=3", {3, Regime::both_small, S(1.5), S(1)}, 1.23605},
                                   {"both-large m=4 p1=p3=4", {4, Regime::both_large, S(4), S(4)}, 1.11178}};
  for (const auto& c : cases) {
    const SchattenExponent r = sharp_exponent(c.tmpl.p1, c.tmpl.pm1);
    const auto at_r = growth_sweep(c.tmpl, dims, r);
    double lo = at_r.front().ratio, hi = lo;
    for (const auto& row : at_r) {
      lo = std::min(lo, row.ratio);
      hi = std::max(hi, row.ratio);
    }
    const double variation = hi / lo - 1.0;
    const auto below = growth_sweep(c.tmpl, dims, S(0.8 * r.value()));
    const double factor = below.back().ratio / below.front().ratio;
    v.note(std::string(c.label) + ": variation at r " + fmt("%.2e", variation) + ", factor at 0.8r " +
           fmt("%.5f", factor));
    v.require(variation <= 0.10, std::string(c.label) + " not bounded at r");
    v.require(std::abs(factor - c.factor_08) <= 0.01 * c.factor_08, std::string(c.label) + " factor drifted from pin");
    v.require(factor >= 1.5, std::string(c.label) + " factor " + fmt("%.5f", factor) + " < 1.5");
  }
  const double secs = seconds_since(t0);
  v.require(secs < 30.0, "runtime budget exceeded");
  return v;
}

Verdict construction_fidelity() {
  Verdict v;
  struct RegimeCase {
    Regime regime;
    SchattenExponent p1, pm1;
  };
  const std::vector<RegimeCase> regimes = {{Regime::both_large, S(4), S(3)},
                                           {Regime::both_small, S(1), S(1.5)},
                                           {Regime::mixed_large_small, S(4), S(2)},
                                           {Regime::mixed_small_large, S(1.5), S(4)}};
  double worst = 0.0;
  for (std::size_t arity : {3u, 4u}) {
    for (const auto& rc : regimes) {
      for (std::size_t n : {1u, 4u, 16u, 64u}) {
        const SharpnessInstance built = build_construction(default_case(arity, rc.regime, rc.p1, rc.pm1, n));
        const double scale = instance_scale(built.instance);
        const double err = (eval_haagerup(built.instance) - built.expected).cwiseAbs().maxCoeff() / scale;
        worst = std::max(worst, err);
      }
    }
  }
  v.note("worst relative gap " + fmt("%.2e", worst));
  v.require(worst <= 1e-10, "construction disagrees with its closed form");

  // B_j e_0 = e_j with unitary characters, identity middles, P_j T1 T2 P_j e_j = d_j^2 e_j
  const std::size_t n = 16;
  const auto N = static_cast<Eigen::Index>(n);
  const CyclicModel cm = cyclic_model(n);
  double ident = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const ComplexMatrix b = integrate_scalar(cm.characters[j], cm.position);
    ident = std::max(ident, (b * basis_vector(N, 0) - basis_vector(N, static_cast<Eigen::Index>(j))).norm());
    ident = std::max(ident, operator_norm(b.adjoint() * b - identity(N)));
  }
  const ComplexMatrix b0 = integrate_scalar(cm.characters[0], cm.position);
  ident = std::max(ident, operator_norm(b0 - identity(N)));
  const ConstructionCase small = default_case(3, Regime::both_small, S(1), S(1), n);
  const SharpnessInstance sb = build_construction(small);
  const ComplexMatrix prod = sb.instance.operators[0] * sb.instance.operators[1];
  for (std::size_t j = 0; j < n; ++j) {
    const ComplexVector ej = basis_vector(N, static_cast<Eigen::Index>(j));
    const ComplexMatrix& pj = sb.instance.measures[0].projection(j);
    ident = std::max(ident, (pj * prod * pj * ej - small.d[j] * small.d[j] * ej).norm());
  }
  v.note("identity gap " + fmt("%.2e", ident));
  v.require(ident <= 1e-10, "construction identities fail");
  return v;
}

Verdict representation_independence() {
  Verdict v;
  const SuiteResult r = run_representation_suite(base_config(100));
  v.note(suite_line(r));
  v.require(r.pass, "representations disagree");
  return v;
}

int run_cli(const std::string& args, const std::string& stdout_path = "/dev/null", const std::string& env = "") {
  const std::string cmd = env + " \"" MOI_CLI_PATH "\" " + args + " > \"" + stdout_path + "\" 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Verdict cli_contract() {
  Verdict v;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("moi-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string inst = (dir / "inst.json").string();
  Rng rng(1);
  write_json_file(inst, to_json(InstanceFile{random_instance(InstanceShape{RepClass::haagerup, 3, 3, 2}, rng), {}, {}}));

  const int ok = run_cli("eval --instance \"" + inst + "\"");
  const int fail = run_cli("verify --trials 3 --dims 3 --tol 0 --repro \"" + (dir / "repro.json").string() + "\"");
  const int input = run_cli("eval --instance \"" + (dir / "missing.json").string() + "\"");
  const int cap = run_cli("eval --instance \"" + inst + "\" --oracle", "/dev/null", "MOI_MAX_TUPLES=1");
  v.note("exit codes " + std::to_string(ok) + "/" + std::to_string(fail) + "/" + std::to_string(input) + "/" +
         std::to_string(cap));
  v.require(ok == 0 && fail == 1 && input == 2 && cap == 3, "exit codes differ from 0/1/2/3");

  const std::string a = (dir / "a.txt").string(), b = (dir / "b.txt").string();
  const int ra = run_cli("verify --seed 42", a), rb = run_cli("verify --seed 42", b);
  const bool same = ra == 0 && rb == 0 && !slurp(a).empty() && slurp(a) == slurp(b);
  v.note(same ? "verify --seed 42 byte-identical across two runs" : "verify output differs");
  v.require(same, "verify not deterministic");
  fs::remove_all(dir);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::function<Verdict()>> criteria = {
      oracle_equivalence, duality,         haagerup_main,
      lemma_row,          haagerup_like,   sharpness_growth,
      construction_fidelity, representation_independence, cli_contract};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    all = all && v.pass;
    std::cout << "criterion " << i + 1 << ": " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail << std::endl;
  }
  return all ? 0 : 1;
}
