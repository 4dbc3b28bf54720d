#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "moi/linalg.hpp"
#include "moi/moi_eval.hpp"

namespace moi {

/// Which side of 2 the outer exponents p_1 and p_{m-1} sit on.
enum class Regime { both_large, both_small, mixed_large_small, mixed_small_large };

std::string_view to_string(Regime r) noexcept;

/// Accepts "both-large", "both-small", "mixed-large-small", "mixed-small-large",
/// and "mixed" as a shorthand for mixed-large-small.
Regime parse_regime(std::string_view text);

/// Throws InvalidInput unless (p1, pm1) lie on the sides the regime names
/// (2 belongs to both sides).
void require_regime(Regime regime, SchattenExponent p1, SchattenExponent pm1);

/// 1/r = 1/max(p1, 2) + 1/max(pm1, 2).
SchattenExponent sharp_exponent(SchattenExponent p1, SchattenExponent pm1);

struct ConstructionCase {
  std::size_t arity = 3;  // 3 or 4
  Regime regime = Regime::mixed_large_small;
  SchattenExponent p1 = SchattenExponent(2.0);
  SchattenExponent pm1 = SchattenExponent(2.0);
  std::size_t n = 1;
  std::vector<double> c;  // unused by both-small
  std::vector<double> d;
};

/// Throws InvalidInput on bad arity, regime/exponent mismatch, n = 0, or
/// sequences of the wrong length or with non-finite entries.
void require_valid(const ConstructionCase& cc);

struct SequencePair {
  std::vector<double> c;
  std::vector<double> d;
};

/// Boundary witnesses x_j = (j+1)^{-1/t} log(j+2)^{-2/t}: bounded in l^t,
/// with the product sequence escaping every l^s, s < r.
///
/// c uses t = p1 and d uses t = max(pm1, 2). both-small sets c to ones.
/// mixed-small-large is built as an adjoint, so there c uses pm1 and d uses 2.
SequencePair default_sequences(Regime regime, SchattenExponent p1, SchattenExponent pm1, std::size_t n);

/// Case with default sequences of length n.
ConstructionCase default_case(std::size_t arity, Regime regime, SchattenExponent p1, SchattenExponent pm1,
                              std::size_t n);

struct SharpnessInstance {
  MoiInstance instance;
  ComplexMatrix expected;
  ConstructionCase meta;
};

/// Largest n for which build_construction materializes a full instance.
inline constexpr std::size_t kMaxBuildN = 128;

/// Realizes the counterexample family on the cyclic model with N = n. The
/// integrand is a Haagerup chain of representation norm 1. Throws CapExceeded
/// above kMaxBuildN.
SharpnessInstance build_construction(const ConstructionCase& cc);

/// Diagonal of the closed-form output in the Fourier basis: c_j d_j, or d_j^2
/// for both-small.
RealVector expected_diagonal(const ConstructionCase& cc);

ComplexMatrix expected_output(const ConstructionCase& cc);

/// Singular values of T_1 .. T_{m-1} of the built instance, without building it.
std::vector<RealVector> operator_singular_values(const ConstructionCase& cc);

struct SweepRow {
  std::size_t n = 0;
  SchattenExponent s = SchattenExponent::infinity();
  SchattenExponent p1 = SchattenExponent::infinity();
  SchattenExponent pm1 = SchattenExponent::infinity();
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct SweepTemplate {
  std::size_t arity = 3;
  Regime regime = Regime::mixed_large_small;
  SchattenExponent p1 = SchattenExponent(2.0);
  SchattenExponent pm1 = SchattenExponent(2.0);
};

inline constexpr std::size_t kMaxSweepN = 8192;

/// One row per n: lhs = ||W||_s from the closed-form diagonal,
/// rhs = ||T_1||_{p1} (middle operator norms) ||T_{m-1}||_{pm1}.
/// The smallest n is cross-checked against eval_haagerup when it is small
/// enough to build. dims must be nonempty and strictly ascending.
std::vector<SweepRow> growth_sweep(const SweepTemplate& tmpl, const std::vector<std::size_t>& dims,
                                   SchattenExponent s);

/// Header "n,s,p1,pm1,lhs,rhs,ratio", reals with 12 significant digits.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool header = true);

}  // namespace moi
