#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moi/linalg.hpp"
#include "moi/moi_eval.hpp"

namespace moi {

enum class BoundTag {
  proj_op_norm,
  proj_sp,
  proj_pq,
  haagerup_main,
  lemma_row,
  hlike_first,
  hlike_second,
  hlike_quad_1,
  hlike_quad_2,
};

std::string_view to_string(BoundTag tag) noexcept;

inline constexpr double kBoundTolerance = 1e-9;

/// One inequality instance lhs <= rhs. rhs is always computed from the given
/// representation, which can only overestimate the tensor norm, so `holds`
/// is a sound check.
struct BoundReport {
  BoundTag tag = BoundTag::proj_op_norm;
  std::vector<SchattenExponent> exponents;  // per Schatten-measured operator, in order
  SchattenExponent r = SchattenExponent::infinity();
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs, with 0/0 = 0
  bool holds = false;
  double tol = kBoundTolerance;
};

/// Fills ratio and holds from lhs, rhs and tol.
BoundReport finish_report(BoundReport rep);

/// Projective integrand, one exponent per operator with sum 1/p_i <= 1.
BoundReport check_projective(const MoiInstance& inst, const std::vector<SchattenExponent>& exponents,
                             double tol = kBoundTolerance);

/// Convenience form: T_1 in S_p, T_{m-1} in S_q, middle operators in S_inf
/// (m = 2 uses p only).
BoundReport check_projective(const MoiInstance& inst, SchattenExponent p, SchattenExponent q,
                             double tol = kBoundTolerance);

/// Haagerup chain, m >= 3, p, q in [2, inf]: ||W||_r <= |Psi| ||T_1||_p prod ||T_i|| ||T_{m-1}||_q.
BoundReport check_haagerup_main(const MoiInstance& inst, SchattenExponent p, SchattenExponent q,
                                double tol = kBoundTolerance);

/// Row matrix (A_0 T A_1 T ...) against ||T||_p; needs ||sum A_j* A_j|| <= 1 and p in [2, inf].
BoundReport check_lemma_row(const std::vector<ComplexMatrix>& a_blocks, const ComplexMatrix& t,
                            SchattenExponent p, double tol = kBoundTolerance);

/// Which operators a Haagerup-like bound measures in Schatten norms
/// (0-based operator indices; the rest enter through the operator norm).
struct HaagerupLikeExponentSlots {
  std::size_t p_operator;
  std::size_t q_operator;
  bool p_needs_two;  // second kind: p >= 2; first kind: q >= 2
};

HaagerupLikeExponentSlots haagerup_like_slots(HaagerupLikeKind kind, std::size_t arity);

/// Haagerup-like integrands with 1/p + 1/q in [1/2, 1]; first kind needs
/// q >= 2, second kind p >= 2. For m = 4 the Schatten pair is (T1, T2) for
/// the first kind and (T2, T3) for the second kind.
BoundReport check_haagerup_like(const MoiInstance& inst, SchattenExponent p, SchattenExponent q,
                                double tol = kBoundTolerance);

}  // namespace moi
