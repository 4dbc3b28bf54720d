#include "moi/cli.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "moi/bounds.hpp"
#include "moi/error.hpp"
#include "moi/json_io.hpp"
#include "moi/sharpness.hpp"

namespace moi::cli {

namespace {

// Maps library exceptions onto the exit-code contract.
template <class Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << " (requested " << e.requested() << ", cap " << e.cap() << ")\n";
    return kCapExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

BoundReport bound_for(const InstanceFile& file) {
  const SchattenExponent p = file.p.value_or(SchattenExponent::infinity());
  const SchattenExponent q = file.q.value_or(SchattenExponent::infinity());
  const Integrand& psi = file.instance.integrand;
  if (std::holds_alternative<ProjectiveRep>(psi)) return check_projective(file.instance, p, q);
  if (std::holds_alternative<HaagerupChainRep>(psi)) return check_haagerup_main(file.instance, p, q);
  return check_haagerup_like(file.instance, p, q);
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

std::string format_row(const std::string& suite, const std::string& trials, const std::string& worst,
                       const std::string& pass) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-28s %8s %14s  %s\n", suite.c_str(), trials.c_str(), worst.c_str(), pass.c_str());
  return buf;
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw InvalidInput("not a number: '" + text + "'");
  return v;
}

}  // namespace

std::optional<std::size_t> tuple_cap_from_env() {
  const char* raw = std::getenv("MOI_MAX_TUPLES");
  if (!raw || !*raw) return std::nullopt;
  std::size_t v = 0;
  const std::string text(raw);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v == 0) {
    throw InvalidInput("MOI_MAX_TUPLES must be a positive integer, got '" + text + "'");
  }
  return v;
}

int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::size_t cap = tuple_cap_from_env().value_or(opt.tuple_cap);
    const InstanceFile file = read_instance_file(opt.instance);
    const ComplexMatrix w = opt.oracle ? eval_oracle(file.instance, cap) : evaluate(file.instance);

    const RealVector sv = singular_values(w);
    Json doc;
    doc["result"] = to_json(w);
    doc["schatten"] = {{"1", schatten_norm_of_values(sv, SchattenExponent(1.0))},
                       {"2", schatten_norm_of_values(sv, SchattenExponent(2.0))},
                       {"inf", schatten_norm_of_values(sv, SchattenExponent::infinity())}};
    doc["rep_norm_bound"] = rep_norm_bound(file.instance.integrand);
    if (file.p || file.q) doc["bound"] = to_json(bound_for(file));
    emit(opt.out, doc.dump(2) + "\n", out);
    return kOk;
  });
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<SuiteResult> results = run_campaign(opt.config);
    out << format_row("suite", "trials", "worst", "pass");
    const SuiteResult* failed = nullptr;
    for (const auto& r : results) {
      char worst[32];
      std::snprintf(worst, sizeof worst, "%.6e", r.worst);
      out << format_row(r.name, std::to_string(r.trials), worst, r.pass ? "yes" : "NO");
      if (!r.pass && !failed) failed = &r;
    }
    if (!failed) return kOk;
    write_json_file(opt.repro_path, failed->repro);
    err << "verification failed in suite " << failed->name << " at seed " << opt.config.seed << ", trial "
        << *failed->failing_trial << "; reproduction written to " << opt.repro_path << '\n';
    return kVerificationFailed;
  });
}

SchattenExponent parse_sweep_exponent(const std::string& token, SchattenExponent r) {
  if (token.empty()) throw InvalidInput("empty exponent");
  const auto rpos = token.find('r');
  if (rpos == std::string::npos) return SchattenExponent::parse(token);
  if (token == "r") return r;
  if (r.is_infinite()) throw InvalidInput("multiples of r need a finite sharp exponent");
  if (rpos + 1 == token.size()) return SchattenExponent(parse_double(token.substr(0, rpos)) * r.value());
  if (rpos == 0 && token.size() > 2 && token[1] == '/') return SchattenExponent(r.value() / parse_double(token.substr(2)));
  throw InvalidInput("cannot read exponent '" + token + "' (use a number, inf, r, 0.8r or r/2)");
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SweepTemplate tmpl;
    tmpl.arity = opt.arity;
    tmpl.regime = parse_regime(opt.regime);
    tmpl.p1 = SchattenExponent::parse(opt.p1);
    tmpl.pm1 = SchattenExponent::parse(opt.pm1);
    require_regime(tmpl.regime, tmpl.p1, tmpl.pm1);
    if (tmpl.arity != 3 && tmpl.arity != 4) throw InvalidInput("sweep: arity must be 3 or 4");
    if (opt.dims.empty()) throw InvalidInput("sweep: empty dims list");
    if (opt.s.empty()) throw InvalidInput("sweep: empty s list");

    const SchattenExponent r = sharp_exponent(tmpl.p1, tmpl.pm1);
    std::vector<SchattenExponent> exponents;
    for (const auto& token : opt.s) exponents.push_back(parse_sweep_exponent(token, r));

    std::ostringstream csv;
    bool header = true;
    for (const auto& s : exponents) {
      write_sweep_csv(csv, growth_sweep(tmpl, opt.dims, s), header);
      header = false;
    }
    emit(opt.out, csv.str(), out);
    return kOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiple operator integrals on finite spectral measures"};
  app.require_subcommand(1);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an instance file");
  eval_cmd->add_option("--instance", eval.instance, "Instance JSON file")->required();
  eval_cmd->add_option("--out", eval.out, "Output path (default stdout)");
  eval_cmd->add_flag("--oracle", eval.oracle, "Use the exhaustive atomwise sum");

  VerifyOptions verify;
  std::vector<std::string> verify_exponents;
  std::optional<std::size_t> verify_dims;
  auto* verify_cmd = app.add_subcommand("verify", "Run the seeded verification campaign");
  verify_cmd->add_option("--seed", verify.config.seed, "Campaign seed");
  verify_cmd->add_option("--trials", verify.config.trials, "Trials per suite");
  verify_cmd->add_option("--dims", verify_dims, "Largest dimension (default 6)");
  verify_cmd->add_option("--width", verify.config.max_width, "Largest representation width");
  verify_cmd->add_option("--exponents", verify_exponents, "Exponent set for the bound suites")->delimiter(',');
  verify_cmd->add_option("--tol", verify.config.tol, "Pass tolerance");
  verify_cmd->add_option("--queries", verify.config.duality_queries, "Duality test operators per instance");
  verify_cmd->add_option("--repro", verify.repro_path, "Reproduction file written on failure");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Growth sweep of a sharpness construction");
  sweep_cmd->add_option("--m", sweep.arity, "Arity, 3 or 4");
  sweep_cmd->add_option("--regime", sweep.regime, "both-large, both-small, mixed, mixed-small-large");
  sweep_cmd->add_option("--p1", sweep.p1, "Exponent of T_1");
  sweep_cmd->add_option("--pm1", sweep.pm1, "Exponent of the last operator");
  sweep_cmd->add_option("--s", sweep.s, "Target exponents: numbers, inf, r, 0.8r, r/2")->delimiter(',');
  sweep_cmd->add_option("--dims", sweep.dims, "Ascending truncation sizes")->delimiter(',');
  sweep_cmd->add_option("--out", sweep.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  if (*eval_cmd) return cmd_eval(eval, out, err);
  if (*verify_cmd) {
    const int code = guarded(err, [&] {
      if (verify_dims) verify.config.max_dim = static_cast<Eigen::Index>(*verify_dims);
      if (!verify_exponents.empty()) {
        verify.config.exponents.clear();
        for (const auto& t : verify_exponents) verify.config.exponents.push_back(SchattenExponent::parse(t));
      }
      return kOk;
    });
    if (code != kOk) return code;
    return cmd_verify(verify, out, err);
  }
  return cmd_sweep(sweep, out, err);
}

}  // namespace moi::cli
