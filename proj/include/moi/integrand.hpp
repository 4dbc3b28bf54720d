#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "moi/spectral.hpp"

namespace moi {

/// Psi(x_1..x_m) = sum_n prod_i phi_{n,i}(x_i). No terms means Psi = 0.
struct ProjectiveRep {
  std::size_t arity = 0;
  std::vector<std::vector<ScalarTable>> terms;  // terms[n][i] lives on measure i
};

/// Psi = head(x_1) * middle_2(x_2) * ... * tail(x_m): row vector, matrices, column vector.
struct HaagerupChainRep {
  VectorTable head;
  std::vector<MatrixTable> middles;
  VectorTable tail;

  std::size_t arity() const noexcept { return middles.size() + 2; }
};

enum class HaagerupLikeKind { first, second };

std::string_view to_string(HaagerupLikeKind k) noexcept;

/// Haagerup-like integrands. Factor i lives on measure i; which factors are
/// vector families and which are matrix families is fixed by (kind, arity):
///
///   first,  m=3: a_j(x1) b_k(x2) g_jk(x3)                     (vec, vec, mat)
///   second, m=3: a_jk(x1) b_j(x2) g_k(x3)                     (mat, vec, vec)
///   first,  m=4: a_l(x1) b_j(x2) g_jk(x3) d_kl(x4)            (vec, vec, mat, mat)
///   second, m=4: a_jk(x1) b_kl(x2) g_l(x3) d_j(x4)            (mat, mat, vec, vec)
struct HaagerupLikeRep {
  using Factor = std::variant<VectorTable, MatrixTable>;

  HaagerupLikeKind kind = HaagerupLikeKind::first;
  std::vector<Factor> factors;

  std::size_t arity() const noexcept { return factors.size(); }
  const VectorTable& vec(std::size_t i) const;
  const MatrixTable& mat(std::size_t i) const;

  static HaagerupLikeRep first_kind(VectorTable a, VectorTable b, MatrixTable g);
  static HaagerupLikeRep second_kind(MatrixTable a, VectorTable b, VectorTable g);
  static HaagerupLikeRep first_kind(VectorTable a, VectorTable b, MatrixTable g, MatrixTable d);
  static HaagerupLikeRep second_kind(MatrixTable a, MatrixTable b, VectorTable g, VectorTable d);
};

/// True where factor i of a (kind, arity) Haagerup-like rep is a matrix family.
std::vector<bool> haagerup_like_matrix_slots(HaagerupLikeKind kind, std::size_t arity);

using Integrand = std::variant<ProjectiveRep, HaagerupChainRep, HaagerupLikeRep>;

std::size_t arity(const Integrand& psi);
std::string_view class_name(const Integrand& psi);

/// Throws InvalidInput on broken widths/shapes, or on atom counts that differ
/// from `atom_counts` (one entry per factor measure) when given.
void check_well_formed(const ProjectiveRep& rep, std::span<const std::size_t> atom_counts = {});
void check_well_formed(const HaagerupChainRep& rep, std::span<const std::size_t> atom_counts = {});
void check_well_formed(const HaagerupLikeRep& rep, std::span<const std::size_t> atom_counts = {});
void check_well_formed(const Integrand& psi, std::span<const std::size_t> atom_counts = {});

/// Norm of the given representation: an upper bound for the tensor norm.
double rep_norm_bound(const ProjectiveRep& rep);
double rep_norm_bound(const HaagerupChainRep& rep);
double rep_norm_bound(const HaagerupLikeRep& rep);
double rep_norm_bound(const Integrand& psi);

/// Psi at one atom index per factor.
Complex eval_pointwise(const ProjectiveRep& rep, std::span<const std::size_t> atoms);
Complex eval_pointwise(const HaagerupChainRep& rep, std::span<const std::size_t> atoms);
Complex eval_pointwise(const HaagerupLikeRep& rep, std::span<const std::size_t> atoms);
Complex eval_pointwise(const Integrand& psi, std::span<const std::size_t> atoms);

/// Width-n chain with diagonal middles. Middle factors are normalized to unit
/// sup-norm; head and tail each carry sqrt of the term weight.
/// `atom_counts` sizes the tables when the rep has no terms.
HaagerupChainRep embed_projective_in_haagerup(const ProjectiveRep& rep,
                                              std::span<const std::size_t> atom_counts = {});

/// Haagerup chain obtained by cycling the variables of a Haagerup-like rep so
/// that the matrix families sit in the middle.
struct CycledChain {
  HaagerupChainRep chain;
  /// measure_order[i] = original factor index that becomes chain position i.
  std::vector<std::size_t> measure_order;
};

CycledChain cycled_chain(const HaagerupLikeRep& rep);

/// Integrand of the adjoint MOI: variables reversed and values conjugated.
/// First-kind reps map to second-kind reps and back.
HaagerupChainRep adjoint_reversed(const HaagerupChainRep& rep);
HaagerupLikeRep adjoint_reversed(const HaagerupLikeRep& rep);

}  // namespace moi
