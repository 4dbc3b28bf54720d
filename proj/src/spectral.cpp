#include "moi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "moi/error.hpp"

namespace moi {

namespace {

Complex unit_root(std::int64_t k, std::int64_t n) {
  const std::int64_t kk = ((k % n) + n) % n;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(kk) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

}  // namespace

Complex AtomLabel::value() const {
  switch (kind) {
    case Kind::real:
      return {real, 0.0};
    case Kind::index:
      return {static_cast<double>(index), 0.0};
    case Kind::root_of_unity:
      return unit_root(index, order);
  }
  return {};
}

std::string AtomLabel::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::real:
      os << real;
      break;
    case Kind::index:
      os << index;
      break;
    case Kind::root_of_unity:
      os << "zeta(" << index << "/" << order << ")";
      break;
  }
  return os.str();
}

MeasureValidation validate_spectral_measure(const FiniteSpectralMeasure& e, double tol) {
  MeasureValidation rep;
  const Eigen::Index n = e.dim;
  if (n < 1 || e.atoms.empty()) {
    rep.shapes_ok = false;
    return rep;
  }
  for (const auto& a : e.atoms) {
    if (a.projection.rows() != n || a.projection.cols() != n || !a.projection.allFinite()) {
      rep.shapes_ok = false;
      return rep;
    }
  }

  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < e.atoms.size(); ++i) {
    const ComplexMatrix& p = e.atoms[i].projection;
    total += p;
    rep.hermitian_residual = std::max(rep.hermitian_residual, operator_norm(p - p.adjoint()));
    rep.idempotency_residual = std::max(rep.idempotency_residual, operator_norm(p * p - p));
    for (std::size_t j = i + 1; j < e.atoms.size(); ++j) {
      rep.orthogonality_residual =
          std::max(rep.orthogonality_residual, (p * e.atoms[j].projection).norm());
      if (e.atoms[i].point == e.atoms[j].point) rep.points_distinct = false;
    }
  }
  rep.completeness_residual = operator_norm(total - identity(n));
  rep.pass = rep.points_distinct && rep.hermitian_residual <= tol && rep.idempotency_residual <= tol &&
             rep.orthogonality_residual <= tol && rep.completeness_residual <= tol;
  return rep;
}

void require_valid(const FiniteSpectralMeasure& e, const char* what) {
  const auto rep = validate_spectral_measure(e);
  if (rep.pass) return;
  std::ostringstream os;
  os << what << " is not a valid spectral measure: ";
  if (!rep.shapes_ok) {
    os << "empty or mis-shaped projections";
  } else if (!rep.points_distinct) {
    os << "repeated atom points";
  } else {
    os << "hermitian " << rep.hermitian_residual << ", idempotency " << rep.idempotency_residual
       << ", orthogonality " << rep.orthogonality_residual << ", completeness "
       << rep.completeness_residual;
  }
  throw InvalidInput(os.str());
}

double ScalarTable::sup_norm() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

double VectorTable::sup_norm() const {
  if (values.cols() == 0) return 0.0;
  return values.rowwise().norm().maxCoeff();
}

ScalarTable VectorTable::component(Eigen::Index j) const {
  ScalarTable t;
  t.values.resize(atom_count());
  for (Eigen::Index i = 0; i < values.rows(); ++i) t.values[i] = values(i, j);
  return t;
}

double MatrixTable::sup_norm() const {
  if (rows == 0 || cols == 0) return 0.0;
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, operator_norm(v));
  return m;
}

ScalarTable MatrixTable::entry(Eigen::Index r, Eigen::Index c) const {
  ScalarTable t;
  t.values.reserve(values.size());
  for (const auto& v : values) t.values.push_back(v(r, c));
  return t;
}

MatrixTable MatrixTable::transposed() const {
  MatrixTable t{cols, rows, {}};
  t.values.reserve(values.size());
  for (const auto& v : values) t.values.push_back(v.transpose());
  return t;
}

void MatrixTable::check_shapes() const {
  for (const auto& v : values) {
    if (v.rows() != rows || v.cols() != cols) throw InvalidInput("matrix table: inconsistent per-atom shape");
    if (!v.allFinite()) throw InvalidInput("matrix table: non-finite entry");
  }
}

ComplexMatrix integrate_scalar(const ScalarTable& phi, const FiniteSpectralMeasure& e) {
  if (phi.atom_count() != e.atom_count()) {
    throw InvalidInput("integrate_scalar: table has " + std::to_string(phi.atom_count()) +
                       " values but the measure has " + std::to_string(e.atom_count()) + " atoms");
  }
  ComplexMatrix out = ComplexMatrix::Zero(e.dim, e.dim);
  for (std::size_t i = 0; i < phi.values.size(); ++i) {
    if (phi.values[i] != Complex{}) out += phi.values[i] * e.atoms[i].projection;
  }
  return out;
}

FiniteSpectralMeasure from_hermitian(const ComplexMatrix& m, double merge_tol) {
  const HermitianEig eig = hermitian_eig(m);
  const Eigen::Index n = m.rows();
  FiniteSpectralMeasure e;
  e.dim = n;

  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && eig.eigenvalues[end] - eig.eigenvalues[end - 1] <= merge_tol) ++end;
    const auto block = eig.eigenvectors.middleCols(start, end - start);
    const double mean = eig.eigenvalues.segment(start, end - start).mean();
    e.atoms.push_back({AtomLabel::from_real(mean), block * block.adjoint()});
    start = end;
  }
  return e;
}

ComplexMatrix reconstruct_operator(const FiniteSpectralMeasure& e) {
  ComplexMatrix out = ComplexMatrix::Zero(e.dim, e.dim);
  for (const auto& a : e.atoms) out += a.point.value() * a.projection;
  return out;
}

ComplexVector basis_vector(Eigen::Index n, Eigen::Index j) {
  ComplexVector v = ComplexVector::Zero(n);
  v[j] = 1.0;
  return v;
}

ScalarTable character_table(std::size_t n, std::int64_t j) {
  ScalarTable t;
  t.values.reserve(n);
  const auto order = static_cast<std::int64_t>(n);
  for (std::int64_t m = 0; m < order; ++m) {
    // zeta_m^j = exp(2 pi i m j / n), reduced exactly in the integers
    t.values.push_back(unit_root((m * (j % order)) % order, order));
  }
  return t;
}

CyclicModel cyclic_model(std::size_t n) {
  if (n == 0) throw InvalidInput("cyclic_model: N must be at least 1");
  const auto N = static_cast<Eigen::Index>(n);
  CyclicModel cm;
  cm.fourier.dim = N;
  cm.position.dim = N;
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index j = 0; j < N; ++j) {
    ComplexVector e = basis_vector(N, j);
    cm.fourier.atoms.push_back({AtomLabel::from_index(j), e * e.adjoint()});
  }
  for (Eigen::Index m = 0; m < N; ++m) {
    // point evaluation at zeta_m in Fourier coordinates: f_m[k] = zeta_m^{-k} / sqrt(N)
    ComplexVector f(N);
    for (Eigen::Index k = 0; k < N; ++k) f[k] = norm * unit_root(-(m * k) % N, N);
    cm.position.atoms.push_back({AtomLabel::root(m, N), f * f.adjoint()});
  }
  cm.characters.reserve(n);
  for (std::size_t j = 0; j < n; ++j) cm.characters.push_back(character_table(n, static_cast<std::int64_t>(j)));
  return cm;
}

}  // namespace moi
