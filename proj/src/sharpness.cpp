#include "moi/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "moi/error.hpp"

namespace moi {

namespace {

bool large(SchattenExponent p) { return p.is_infinite() || p.value() >= 2.0; }
bool small(SchattenExponent p) { return !p.is_infinite() && p.value() <= 2.0; }

std::vector<double> witness(SchattenExponent t, std::size_t n) {
  std::vector<double> x(n, 1.0);
  if (t.is_infinite()) return x;
  const double e = 1.0 / t.value();
  for (std::size_t j = 0; j < n; ++j) {
    const double jj = static_cast<double>(j);
    x[j] = std::pow(jj + 1.0, -e) * std::pow(std::log(jj + 2.0), -2.0 * e);
  }
  return x;
}

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

ComplexMatrix diagonal(const std::vector<double>& x) {
  ComplexVector v(as_index(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) v[as_index(j)] = x[j];
  return v.asDiagonal();
}

ComplexVector as_vector(const std::vector<double>& x) {
  ComplexVector v(as_index(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) v[as_index(j)] = x[j];
  return v;
}

// e_0 x^T, i.e. e_j -> x_j e_0
ComplexMatrix collapse_onto_e0(const std::vector<double>& x) {
  ComplexMatrix t = ComplexMatrix::Zero(as_index(x.size()), as_index(x.size()));
  t.row(0) = as_vector(x).transpose();
  return t;
}

ComplexMatrix projection_e0(std::size_t n) {
  ComplexMatrix p = ComplexMatrix::Zero(as_index(n), as_index(n));
  p(0, 0) = 1.0;
  return p;
}

// atom i carries e_i: the family integrates to the Fourier projections
VectorTable delta_system(std::size_t n) { return VectorTable(identity(as_index(n))); }

// atom m carries diag(zeta_m^{sign j})_j, or the identity when sign = 0
MatrixTable character_diagonal(std::size_t n, int sign) {
  MatrixTable t;
  t.rows = t.cols = as_index(n);
  t.values.assign(n, identity(as_index(n)));
  if (sign == 0) return t;
  for (std::size_t j = 0; j < n; ++j) {
    const ScalarTable ch = character_table(n, sign * static_cast<std::int64_t>(j));
    for (std::size_t m = 0; m < n; ++m) t.values[m](as_index(j), as_index(j)) = ch.values[m];
  }
  return t;
}

RealVector descending(RealVector v) {
  v = v.cwiseAbs();
  std::sort(v.data(), v.data() + v.size(), std::greater<double>());
  return v;
}

RealVector from_std(const std::vector<double>& x) {
  return Eigen::Map<const RealVector>(x.data(), as_index(x.size()));
}

RealVector single(double x) { return RealVector::Constant(1, std::abs(x)); }

ConstructionCase mirrored(const ConstructionCase& cc) {
  ConstructionCase m = cc;
  m.regime = Regime::mixed_large_small;
  std::swap(m.p1, m.pm1);
  return m;
}

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt_exponent(SchattenExponent p) { return p.is_infinite() ? "inf" : fmt12(p.value()); }

}  // namespace

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::both_large:
      return "both-large";
    case Regime::both_small:
      return "both-small";
    case Regime::mixed_large_small:
      return "mixed-large-small";
    case Regime::mixed_small_large:
      return "mixed-small-large";
  }
  return "unknown";
}

Regime parse_regime(std::string_view text) {
  if (text == "both-large") return Regime::both_large;
  if (text == "both-small") return Regime::both_small;
  if (text == "mixed" || text == "mixed-large-small") return Regime::mixed_large_small;
  if (text == "mixed-small-large") return Regime::mixed_small_large;
  throw InvalidInput("unknown regime '" + std::string(text) + "'");
}

void require_regime(Regime regime, SchattenExponent p1, SchattenExponent pm1) {
  bool ok = false;
  switch (regime) {
    case Regime::both_large:
      ok = large(p1) && large(pm1);
      break;
    case Regime::both_small:
      ok = small(p1) && small(pm1);
      break;
    case Regime::mixed_large_small:
      ok = large(p1) && small(pm1);
      break;
    case Regime::mixed_small_large:
      ok = small(p1) && large(pm1);
      break;
  }
  if (!ok) {
    throw InvalidInput("regime " + std::string(to_string(regime)) + " does not admit p1 = " + p1.to_string() +
                       ", pm1 = " + pm1.to_string());
  }
}

SchattenExponent sharp_exponent(SchattenExponent p1, SchattenExponent pm1) {
  return SchattenExponent::harmonic_sum({p1.sharp(), pm1.sharp()});
}

void require_valid(const ConstructionCase& cc) {
  if (cc.arity != 3 && cc.arity != 4) throw InvalidInput("constructions exist for arity 3 and 4");
  if (cc.n == 0) throw InvalidInput("truncation n must be at least 1");
  require_regime(cc.regime, cc.p1, cc.pm1);
  auto check = [&](const std::vector<double>& x, const char* name) {
    if (x.size() != cc.n) throw InvalidInput(std::string("sequence ") + name + " must have length n");
    for (double v : x) {
      if (!std::isfinite(v)) throw InvalidInput(std::string("sequence ") + name + " has a non-finite entry");
    }
  };
  if (cc.regime != Regime::both_small) check(cc.c, "c");
  check(cc.d, "d");
}

SequencePair default_sequences(Regime regime, SchattenExponent p1, SchattenExponent pm1, std::size_t n) {
  require_regime(regime, p1, pm1);
  switch (regime) {
    case Regime::both_small:
      return {std::vector<double>(n, 1.0), witness(SchattenExponent(2.0), n)};
    case Regime::mixed_small_large:
      return {witness(pm1, n), witness(SchattenExponent(2.0), n)};
    default:
      return {witness(p1, n), witness(pm1.sharp(), n)};
  }
}

ConstructionCase default_case(std::size_t arity, Regime regime, SchattenExponent p1, SchattenExponent pm1,
                              std::size_t n) {
  SequencePair seq = default_sequences(regime, p1, pm1, n);
  return {arity, regime, p1, pm1, n, std::move(seq.c), std::move(seq.d)};
}

RealVector expected_diagonal(const ConstructionCase& cc) {
  require_valid(cc);
  RealVector w(as_index(cc.n));
  for (std::size_t j = 0; j < cc.n; ++j) {
    w[as_index(j)] = cc.regime == Regime::both_small ? cc.d[j] * cc.d[j] : cc.c[j] * cc.d[j];
  }
  return w;
}

ComplexMatrix expected_output(const ConstructionCase& cc) {
  return expected_diagonal(cc).cast<Complex>().asDiagonal();
}

std::vector<RealVector> operator_singular_values(const ConstructionCase& cc) {
  require_valid(cc);
  if (cc.regime == Regime::mixed_small_large) {
    std::vector<RealVector> sv = operator_singular_values(mirrored(cc));
    std::reverse(sv.begin(), sv.end());
    return sv;
  }
  const double v_norm = from_std(cc.d).norm();
  std::vector<RealVector> sv;
  switch (cc.regime) {
    case Regime::both_large:
      sv.push_back(descending(from_std(cc.c)));
      if (cc.arity == 4) sv.push_back(single(1.0));
      sv.push_back(descending(from_std(cc.d)));
      break;
    case Regime::both_small:
      sv.push_back(single(v_norm));
      if (cc.arity == 4) sv.push_back(single(1.0));
      sv.push_back(single(v_norm));
      break;
    default:
      sv.push_back(descending(from_std(cc.c)));
      if (cc.arity == 4) sv.push_back(single(1.0));
      sv.push_back(single(v_norm));
      break;
  }
  return sv;
}

SharpnessInstance build_construction(const ConstructionCase& cc) {
  require_valid(cc);
  if (cc.n > kMaxBuildN) throw CapExceeded("build_construction: n exceeds the build cap", cc.n, kMaxBuildN);

  if (cc.regime == Regime::mixed_small_large) {
    SharpnessInstance base = build_construction(mirrored(cc));
    return {adjoint_instance(base.instance), base.expected.adjoint(), cc};
  }

  const std::size_t n = cc.n;
  const CyclicModel cm = cyclic_model(n);
  MoiInstance inst;
  inst.measures.push_back(cm.fourier);
  for (std::size_t i = 0; i + 2 < cc.arity; ++i) inst.measures.push_back(cm.position);
  inst.measures.push_back(cm.fourier);

  HaagerupChainRep chain;
  if (cc.regime == Regime::both_large && cc.arity == 3) {
    // single-term integrand: W = T_1 T_2
    chain.head = VectorTable(ComplexMatrix::Ones(as_index(n), 1));
    chain.middles.push_back(MatrixTable{1, 1, std::vector<ComplexMatrix>(n, ComplexMatrix::Ones(1, 1))});
    chain.tail = VectorTable(ComplexMatrix::Ones(as_index(n), 1));
    inst.operators = {diagonal(cc.c), diagonal(cc.d)};
  } else {
    chain.head = delta_system(n);
    chain.tail = delta_system(n);
    const ComplexVector v = as_vector(cc.d);
    const ComplexMatrix e0 = basis_vector(as_index(n), 0);
    switch (cc.regime) {
      case Regime::both_small:
        // T_1 f = (f, e_0) v, T_last f = (f, v) e_0, identity-valued middles
        for (std::size_t i = 0; i + 2 < cc.arity; ++i) chain.middles.push_back(character_diagonal(n, 0));
        inst.operators.push_back(v * e0.adjoint());
        if (cc.arity == 4) inst.operators.push_back(projection_e0(n));
        inst.operators.push_back(e0 * v.adjoint());
        break;
      case Regime::mixed_large_small:
        // B_j e_0 = e_j; for m = 4 the second middle is the identity
        chain.middles.push_back(character_diagonal(n, 1));
        if (cc.arity == 4) chain.middles.push_back(character_diagonal(n, 0));
        inst.operators.push_back(diagonal(cc.c));
        if (cc.arity == 4) inst.operators.push_back(projection_e0(n));
        inst.operators.push_back(collapse_onto_e0(cc.d));
        break;
      default:
        // m = 4 both-large: B_j e_0 = e_j, G_j e_j = e_0, T_2 = P_0
        chain.middles.push_back(character_diagonal(n, 1));
        chain.middles.push_back(character_diagonal(n, -1));
        inst.operators = {diagonal(cc.c), projection_e0(n), diagonal(cc.d)};
        break;
    }
  }
  inst.integrand = std::move(chain);
  return {std::move(inst), expected_output(cc), cc};
}

std::vector<SweepRow> growth_sweep(const SweepTemplate& tmpl, const std::vector<std::size_t>& dims,
                                   SchattenExponent s) {
  if (dims.empty()) throw InvalidInput("growth_sweep: empty dimension list");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] == 0) throw InvalidInput("growth_sweep: dimensions must be positive");
    if (i > 0 && dims[i] <= dims[i - 1]) throw InvalidInput("growth_sweep: dimensions must be strictly ascending");
  }
  if (dims.back() > kMaxSweepN) throw CapExceeded("growth_sweep: n exceeds the sweep cap", dims.back(), kMaxSweepN);

  std::vector<SweepRow> rows;
  rows.reserve(dims.size());
  for (std::size_t n : dims) {
    const ConstructionCase cc = default_case(tmpl.arity, tmpl.regime, tmpl.p1, tmpl.pm1, n);
    const RealVector w = descending(expected_diagonal(cc));
    const std::vector<RealVector> sv = operator_singular_values(cc);

    SweepRow row;
    row.n = n;
    row.s = s;
    row.p1 = tmpl.p1;
    row.pm1 = tmpl.pm1;
    row.lhs = schatten_norm_of_values(w, s);
    row.rhs = schatten_norm_of_values(sv.front(), tmpl.p1) * schatten_norm_of_values(sv.back(), tmpl.pm1);
    for (std::size_t i = 1; i + 1 < sv.size(); ++i) row.rhs *= sv[i].maxCoeff();
    row.ratio = row.rhs == 0.0 ? 0.0 : row.lhs / row.rhs;

    if (n == dims.front() && n <= kMaxBuildN) {
      const SharpnessInstance built = build_construction(cc);
      const double scale = instance_scale(built.instance);
      const double err = (eval_haagerup(built.instance) - built.expected).cwiseAbs().maxCoeff();
      if (err > 1e-10 * scale) {
        throw std::logic_error("growth_sweep: construction disagrees with its closed form at n = " +
                               std::to_string(n));
      }
    }
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool header) {
  if (header) os << "n,s,p1,pm1,lhs,rhs,ratio\n";
  for (const auto& r : rows) {
    os << r.n << ',' << fmt_exponent(r.s) << ',' << fmt_exponent(r.p1) << ',' << fmt_exponent(r.pm1) << ','
       << fmt12(r.lhs) << ',' << fmt12(r.rhs) << ',' << fmt12(r.ratio) << '\n';
  }
}

}  // namespace moi
