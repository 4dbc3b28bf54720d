#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace moi {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Schatten exponent p in (0, inf]. Infinity is its own state, never a large float.
class SchattenExponent {
 public:
  /// Finite exponent; throws InvalidInput unless 0 < p < inf.
  explicit SchattenExponent(double p);

  static SchattenExponent infinity() noexcept { return SchattenExponent(); }

  bool is_infinite() const noexcept { return infinite_; }

  /// Finite value; throws InvalidInput when infinite.
  double value() const;

  /// 1/p, with 1/inf = 0.
  double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / p_; }

  /// max{p, 2}.
  SchattenExponent sharp() const noexcept;

  /// Conjugate exponent p' with 1/p + 1/p' = 1. Requires p >= 1; conj(1) = inf.
  SchattenExponent conjugate() const;

  /// Exponent r with 1/r = sum of reciprocals; zero sum gives inf.
  static SchattenExponent harmonic_sum(const std::vector<SchattenExponent>& parts);

  /// "inf" or the shortest round-tripping decimal.
  std::string to_string() const;

  /// Accepts "inf"/"infinity" or a positive decimal.
  static SchattenExponent parse(const std::string& text);

  friend bool operator==(const SchattenExponent& a, const SchattenExponent& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.p_ == b.p_);
  }

 private:
  SchattenExponent() noexcept : p_(0.0), infinite_(true) {}

  double p_;
  bool infinite_;
};

/// Throws InvalidInput if M is empty or has a NaN/Inf entry.
void require_finite(const ComplexMatrix& m, const char* what = "matrix");

/// Singular values, descending, length min(rows, cols).
RealVector singular_values(const ComplexMatrix& m);

/// (sum s_i^p)^{1/p}, or s_max for p = inf. A quasinorm for p < 1.
double schatten_norm(const ComplexMatrix& m, SchattenExponent p);

/// Same as schatten_norm but on a precomputed singular-value list.
double schatten_norm_of_values(const RealVector& sv, SchattenExponent p);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

struct HermitianEig {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns
};

/// Relative Hermitian gate: ||M - M*||_inf <= 1e-10 ||M||_inf.
inline constexpr double kHermitianTolerance = 1e-10;

bool is_hermitian(const ComplexMatrix& m, double rel_tol = kHermitianTolerance);

/// Eigendecomposition of a Hermitian matrix; throws InvalidInput for
/// non-square or non-Hermitian input.
HermitianEig hermitian_eig(const ComplexMatrix& m);

/// Split T = X Y with ||X||_p ||Y||_q = ||T||_r, 1/r = 1/p + 1/q, via the SVD
/// T = U S V*: X = U S^{r/p}, Y = S^{r/q} V*.
std::pair<ComplexMatrix, ComplexMatrix> factorize_schatten(const ComplexMatrix& t,
                                                           SchattenExponent p,
                                                           SchattenExponent q);

ComplexMatrix identity(Eigen::Index n);

}  // namespace moi
