#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "moi/moi_eval.hpp"

namespace moi {

using Rng = std::mt19937_64;

/// Independent stream for trial `index` of the named suite under `seed`.
Rng trial_rng(std::uint64_t seed, std::string_view suite, std::uint64_t index);

enum class RepClass { projective, haagerup, haagerup_like_first, haagerup_like_second };

std::string_view to_string(RepClass c) noexcept;

/// Entries with independent standard normal real and imaginary parts.
ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);

ComplexMatrix random_unitary(Eigen::Index n, Rng& rng);

/// Spectral measure with `atoms` atoms (1 <= atoms <= n) of random ranks in a
/// random eigenbasis, at distinct real points.
FiniteSpectralMeasure random_measure(Eigen::Index n, std::size_t atoms, Rng& rng);

/// Scaled Gaussian operator; occasionally rank one.
ComplexMatrix random_operator(Eigen::Index n, Rng& rng);

/// Random representation of the given class over measures with these atom
/// counts; widths (and projective term counts) are drawn from [1, max_width].
Integrand random_integrand(RepClass cls, const std::vector<std::size_t>& atom_counts, Eigen::Index max_width,
                           Rng& rng);

struct InstanceShape {
  RepClass cls = RepClass::haagerup;
  std::size_t arity = 3;
  Eigen::Index dim = 3;
  Eigen::Index max_width = 3;
};

MoiInstance random_instance(const InstanceShape& shape, Rng& rng);

/// Draws a shape: arity from `arities` (restricted to 3 and 4 for
/// Haagerup-like classes), dim from [1, max_dim].
InstanceShape random_shape(RepClass cls, const std::vector<std::size_t>& arities, Eigen::Index max_dim,
                           Eigen::Index max_width, Rng& rng);

/// A different representation of the same pointwise integrand: rescaled or
/// split projective terms, or an invertible change of basis on a chain link.
Integrand equivalent_representation(const Integrand& psi, Rng& rng);

/// `count` spectral integrals A_j = int a_j dE over one random measure on
/// C^n, scaled so that ||sum A_j* A_j|| = 1 or a random factor below 1 of that.
/// These commute with their adjoints, as the blocks of a chain factorization do.
std::vector<ComplexMatrix> random_row_blocks(std::size_t count, Eigen::Index n, Rng& rng);

}  // namespace moi
