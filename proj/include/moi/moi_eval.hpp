#pragma once

#include <cstddef>
#include <vector>

#include "moi/integrand.hpp"
#include "moi/spectral.hpp"

namespace moi {

/// Data of  int...int Psi dE_1 T_1 dE_2 T_2 ... T_{m-1} dE_m.
struct MoiInstance {
  std::vector<FiniteSpectralMeasure> measures;  // m measures, common dim
  std::vector<ComplexMatrix> operators;         // T_1 .. T_{m-1}, dim x dim
  Integrand integrand;

  std::size_t arity() const noexcept { return measures.size(); }
  Eigen::Index dim() const noexcept { return measures.empty() ? 0 : measures.front().dim; }
  std::vector<std::size_t> atom_counts() const;
};

/// Shape and binding checks; `check_measures` also validates every measure.
void check_instance(const MoiInstance& inst, bool check_measures = false);

inline constexpr std::size_t kDefaultTupleCap = 1'000'000;
inline constexpr Eigen::Index kDefaultBlockCap = 4096;

/// rep_norm_bound * prod ||T_i||_inf, floored at 1e-12. Reference scale for
/// relative tolerances.
double instance_scale(const MoiInstance& inst);

/// Exhaustive atomwise sum  sum Psi(x_i1..x_im) P_i1 T_1 P_i2 ... T_{m-1} P_im.
/// Throws CapExceeded when the atom-tuple count exceeds `tuple_cap`.
ComplexMatrix eval_oracle(const MoiInstance& inst, std::size_t tuple_cap = kDefaultTupleCap);

ComplexMatrix eval_projective(const MoiInstance& inst);
ComplexMatrix eval_haagerup(const MoiInstance& inst);

/// Row block A(T_1), block matrices of the middle families, block-diagonal
/// copies of the inner operators and the column block, multiplied out.
/// Arity 3 or 4 only.
ComplexMatrix eval_haagerup_block(const MoiInstance& inst, Eigen::Index block_cap = kDefaultBlockCap);

/// sum_ij psi(i, j) P_i T Q_j for a dense (atoms_1 x atoms_2) table.
ComplexMatrix eval_double_schur(const ComplexMatrix& psi, const FiniteSpectralMeasure& e1,
                                const FiniteSpectralMeasure& e2, const ComplexMatrix& t);

/// Direct finite sum for Haagerup-like integrands, e.g. first kind m=3:
/// W = sum_jk A_j T B_k R G_jk.
ComplexMatrix eval_haagerup_like(const MoiInstance& inst);

/// Trace-duality functional Q -> trace(W Q), computed through the cycled
/// Haagerup chain (never through W).
Complex duality_functional(const MoiInstance& inst, const ComplexMatrix& q);

/// Row matrix (A_0 T  A_1 T  ...).
ComplexMatrix row_block(const std::vector<ComplexMatrix>& a_blocks, const ComplexMatrix& t);

/// Production path for the instance's representation class.
ComplexMatrix evaluate(const MoiInstance& inst);

/// The instance whose MOI is the adjoint: measures and operators reversed,
/// operators adjointed, integrand via adjoint_reversed. Chain and
/// Haagerup-like integrands only.
MoiInstance adjoint_instance(const MoiInstance& inst);

}  // namespace moi
