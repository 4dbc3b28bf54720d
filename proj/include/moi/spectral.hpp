#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moi/linalg.hpp"

namespace moi {

/// Spectral point of an atom. Labels are for reporting only; evaluation is
/// driven by atom position.
struct AtomLabel {
  enum class Kind { real, index, root_of_unity };

  Kind kind = Kind::real;
  double real = 0.0;       // Kind::real
  std::int64_t index = 0;  // Kind::index, or k of exp(2 pi i k / order)
  std::int64_t order = 1;  // Kind::root_of_unity

  static AtomLabel from_real(double x) { return {Kind::real, x, 0, 1}; }
  static AtomLabel from_index(std::int64_t j) { return {Kind::index, 0.0, j, 1}; }
  static AtomLabel root(std::int64_t k, std::int64_t n) { return {Kind::root_of_unity, 0.0, k, n}; }

  /// Complex value of the point (roots of unity map onto the circle).
  Complex value() const;
  std::string to_string() const;

  friend bool operator==(const AtomLabel&, const AtomLabel&) = default;
};

struct SpectralAtom {
  AtomLabel point;
  ComplexMatrix projection;
};

/// Finite projection-valued measure: orthogonal projections summing to I.
struct FiniteSpectralMeasure {
  Eigen::Index dim = 0;
  std::vector<SpectralAtom> atoms;

  std::size_t atom_count() const noexcept { return atoms.size(); }
  const ComplexMatrix& projection(std::size_t i) const { return atoms.at(i).projection; }
};

struct MeasureValidation {
  bool pass = false;
  bool points_distinct = true;
  bool shapes_ok = true;
  double hermitian_residual = 0.0;
  double idempotency_residual = 0.0;
  double orthogonality_residual = 0.0;  // max Frobenius norm of P_i P_j, i != j
  double completeness_residual = 0.0;
};

inline constexpr double kMeasureTolerance = 1e-10;

MeasureValidation validate_spectral_measure(const FiniteSpectralMeasure& e,
                                            double tol = kMeasureTolerance);

/// Throws InvalidInput with the worst residual if validation fails.
void require_valid(const FiniteSpectralMeasure& e, const char* what = "spectral measure");

/// One complex value per atom.
struct ScalarTable {
  std::vector<Complex> values;

  std::size_t atom_count() const noexcept { return values.size(); }
  double sup_norm() const;

  static ScalarTable constant(std::size_t atoms, Complex c) { return {std::vector<Complex>(atoms, c)}; }
};

/// One complex L-vector per atom, stored as an (atoms x L) matrix.
struct VectorTable {
  ComplexMatrix values;

  VectorTable() = default;
  explicit VectorTable(ComplexMatrix v) : values(std::move(v)) {}

  std::size_t atom_count() const noexcept { return static_cast<std::size_t>(values.rows()); }
  Eigen::Index width() const noexcept { return values.cols(); }
  /// max over atoms of the Euclidean norm.
  double sup_norm() const;
  /// Component j as a scalar table.
  ScalarTable component(Eigen::Index j) const;
};

/// One complex (rows x cols) matrix per atom.
struct MatrixTable {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::vector<ComplexMatrix> values;

  std::size_t atom_count() const noexcept { return values.size(); }
  /// max over atoms of the operator norm.
  double sup_norm() const;
  ScalarTable entry(Eigen::Index r, Eigen::Index c) const;
  /// Entrywise transpose at every atom.
  MatrixTable transposed() const;
  /// Throws InvalidInput if some atom's matrix has the wrong shape or is non-finite.
  void check_shapes() const;
};

/// sum_i values[i] P_i.
ComplexMatrix integrate_scalar(const ScalarTable& phi, const FiniteSpectralMeasure& e);

/// Spectral measure of a Hermitian matrix; eigenvalues closer than merge_tol
/// (consecutive gaps) share an atom.
FiniteSpectralMeasure from_hermitian(const ComplexMatrix& m, double merge_tol = 1e-8);

/// sum_i x_i P_i for real or index labels (roots of unity use their complex value).
ComplexMatrix reconstruct_operator(const FiniteSpectralMeasure& e);

/// Z_N surrogate for L^2(T): Fourier basis = standard basis e_0..e_{N-1}.
struct CyclicModel {
  FiniteSpectralMeasure fourier;   // atoms j, projections e_j e_j*
  FiniteSpectralMeasure position;  // atoms zeta_m, projections onto position vectors
  std::vector<ScalarTable> characters;  // characters[j](zeta) = zeta^j on `position`
};

CyclicModel cyclic_model(std::size_t n);

/// zeta -> zeta^j on the position atoms of the order-n cyclic model; j may be negative.
ScalarTable character_table(std::size_t n, std::int64_t j);

/// Fourier-basis vector e_j of C^n.
ComplexVector basis_vector(Eigen::Index n, Eigen::Index j);

}  // namespace moi
