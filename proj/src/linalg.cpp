#include "moi/linalg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "moi/error.hpp"

namespace moi {

namespace {

// Singular values below this fraction of s_max are treated as exact zeros
// before fractional powers are taken.
constexpr double kSingularClamp = 1e-13;

}  // namespace

SchattenExponent::SchattenExponent(double p) : p_(p), infinite_(false) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw InvalidInput("Schatten exponent must be a finite positive number (use infinity() for inf)");
  }
}

double SchattenExponent::value() const {
  if (infinite_) throw InvalidInput("value() called on the infinite Schatten exponent");
  return p_;
}

SchattenExponent SchattenExponent::sharp() const noexcept {
  if (infinite_) return *this;
  return p_ >= 2.0 ? *this : SchattenExponent(2.0);
}

SchattenExponent SchattenExponent::conjugate() const {
  if (infinite_) return SchattenExponent(1.0);
  if (p_ < 1.0) throw InvalidInput("conjugate exponent needs p >= 1");
  if (p_ == 1.0) return infinity();
  return SchattenExponent(p_ / (p_ - 1.0));
}

SchattenExponent SchattenExponent::harmonic_sum(const std::vector<SchattenExponent>& parts) {
  double inv = 0.0;
  for (const auto& e : parts) inv += e.reciprocal();
  if (inv == 0.0) return infinity();
  return SchattenExponent(1.0 / inv);
}

std::string SchattenExponent::to_string() const {
  if (infinite_) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, p_);
  return std::string(buf, res.ptr);
}

SchattenExponent SchattenExponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw InvalidInput("cannot parse Schatten exponent '" + text + "'");
  }
  return SchattenExponent(v);
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw InvalidInput(std::string(what) + ": matrix must have at least one row and column");
  }
  if (!m.allFinite()) throw InvalidInput(std::string(what) + ": non-finite entry");
}

RealVector singular_values(const ComplexMatrix& m) {
  require_finite(m);
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();  // Eigen returns them sorted descending
}

double schatten_norm_of_values(const RealVector& sv, SchattenExponent p) {
  if (sv.size() == 0) return 0.0;
  const double smax = sv.maxCoeff();
  if (smax == 0.0) return 0.0;
  if (p.is_infinite()) return smax;
  const double e = p.value();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv[i] / smax, e);
  return smax * std::pow(acc, 1.0 / e);
}

double schatten_norm(const ComplexMatrix& m, SchattenExponent p) {
  return schatten_norm_of_values(singular_values(m), p);
}

double operator_norm(const ComplexMatrix& m) {
  return schatten_norm(m, SchattenExponent::infinity());
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = operator_norm(m);
  const ComplexMatrix skew = m - m.adjoint();
  return operator_norm(skew) <= rel_tol * scale;
}

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  require_finite(m);
  if (m.rows() != m.cols()) throw InvalidInput("hermitian_eig: matrix is not square");
  if (!is_hermitian(m)) throw InvalidInput("hermitian_eig: matrix is not Hermitian within tolerance");
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
  if (es.info() != Eigen::Success) throw InvalidInput("hermitian_eig: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

std::pair<ComplexMatrix, ComplexMatrix> factorize_schatten(const ComplexMatrix& t,
                                                           SchattenExponent p,
                                                           SchattenExponent q) {
  require_finite(t);
  if (p.is_infinite() && q.is_infinite()) {
    return {t, identity(t.cols())};
  }
  const double inv_r = p.reciprocal() + q.reciprocal();
  const double left_power = p.reciprocal() / inv_r;   // r/p
  const double right_power = q.reciprocal() / inv_r;  // r/q

  Eigen::JacobiSVD<ComplexMatrix> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  RealVector s = svd.singularValues();
  const double smax = s.size() ? s.maxCoeff() : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] < kSingularClamp * smax) s[i] = 0.0;
  }
  RealVector sl(s.size()), sr(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    sl[i] = left_power == 0.0 ? (s[i] > 0 ? 1.0 : 0.0) : std::pow(s[i], left_power);
    sr[i] = right_power == 0.0 ? (s[i] > 0 ? 1.0 : 0.0) : std::pow(s[i], right_power);
  }
  ComplexMatrix x = svd.matrixU() * sl.cast<Complex>().asDiagonal();
  ComplexMatrix y = sr.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
  return {std::move(x), std::move(y)};
}

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

}  // namespace moi
