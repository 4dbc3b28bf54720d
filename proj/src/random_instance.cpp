#include "moi/random_instance.hpp"

#include <algorithm>
#include <numeric>

#include "moi/error.hpp"

namespace moi {

namespace {

Eigen::Index uniform_index(Eigen::Index lo, Eigen::Index hi, Rng& rng) {
  return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng);
}

double uniform(double lo, double hi, Rng& rng) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

ScalarTable random_scalar_table(std::size_t atoms, Rng& rng) {
  const ComplexMatrix v = random_gaussian(static_cast<Eigen::Index>(atoms), 1, rng);
  ScalarTable t;
  t.values.assign(v.data(), v.data() + v.size());
  return t;
}

VectorTable random_vector_table(std::size_t atoms, Eigen::Index width, Rng& rng) {
  return VectorTable(random_gaussian(static_cast<Eigen::Index>(atoms), width, rng));
}

MatrixTable random_matrix_table(std::size_t atoms, Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  MatrixTable t;
  t.rows = rows;
  t.cols = cols;
  for (std::size_t i = 0; i < atoms; ++i) t.values.push_back(random_gaussian(rows, cols, rng));
  return t;
}

// unitary times a diagonal in [1/2, 2]: invertible and well conditioned
ComplexMatrix random_invertible(Eigen::Index n, Rng& rng) {
  ComplexVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d[i] = uniform(0.5, 2.0, rng);
  return random_unitary(n, rng) * d.asDiagonal();
}

// row-vector family v(x) -> v(x) U
VectorTable times_right(const VectorTable& v, const ComplexMatrix& u) { return VectorTable(v.values * u); }

// matrix family M(x) -> U M(x)
MatrixTable times_left(const ComplexMatrix& u, const MatrixTable& m) {
  MatrixTable out = m;
  for (auto& x : out.values) x = u * x;
  return out;
}

}  // namespace

Rng trial_rng(std::uint64_t seed, std::string_view suite, std::uint64_t index) {
  std::vector<std::uint32_t> words = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  for (char ch : suite) words.push_back(static_cast<unsigned char>(ch));
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

std::string_view to_string(RepClass c) noexcept {
  switch (c) {
    case RepClass::projective:
      return "projective";
    case RepClass::haagerup:
      return "haagerup";
    case RepClass::haagerup_like_first:
      return "haagerup-like-first";
    case RepClass::haagerup_like_second:
      return "haagerup-like-second";
  }
  return "unknown";
}

ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = g(rng);
      const double im = g(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) {
  const Eigen::HouseholderQR<ComplexMatrix> qr(random_gaussian(n, n, rng));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix column phases so the distribution is Haar
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

FiniteSpectralMeasure random_measure(Eigen::Index n, std::size_t atoms, Rng& rng) {
  if (atoms == 0 || static_cast<Eigen::Index>(atoms) > n) {
    throw InvalidInput("random_measure: need 1 <= atoms <= dim");
  }
  const ComplexMatrix u = random_unitary(n, rng);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> owner(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < order.size(); ++i) {
    owner[static_cast<std::size_t>(order[i])] =
        i < atoms ? i : static_cast<std::size_t>(uniform_index(0, static_cast<Eigen::Index>(atoms) - 1, rng));
  }

  FiniteSpectralMeasure e;
  e.dim = n;
  for (std::size_t a = 0; a < atoms; ++a) {
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
      if (owner[static_cast<std::size_t>(c)] == a) p += u.col(c) * u.col(c).adjoint();
    }
    const double point = static_cast<double>(a) + uniform(0.0, 0.5, rng) - 0.5 * static_cast<double>(atoms);
    e.atoms.push_back({AtomLabel::from_real(point), p});
  }
  return e;
}

ComplexMatrix random_operator(Eigen::Index n, Rng& rng) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  if (std::uniform_int_distribution<int>(0, 5)(rng) == 0) {
    return scale * random_gaussian(n, 1, rng) * random_gaussian(n, 1, rng).adjoint();
  }
  return scale * random_gaussian(n, n, rng);
}

Integrand random_integrand(RepClass cls, const std::vector<std::size_t>& atom_counts, Eigen::Index max_width,
                           Rng& rng) {
  const std::size_t m = atom_counts.size();
  auto width = [&] { return uniform_index(1, max_width, rng); };
  switch (cls) {
    case RepClass::projective: {
      ProjectiveRep rep;
      rep.arity = m;
      const Eigen::Index terms = width();
      for (Eigen::Index n = 0; n < terms; ++n) {
        std::vector<ScalarTable> term;
        for (std::size_t i = 0; i < m; ++i) term.push_back(random_scalar_table(atom_counts[i], rng));
        rep.terms.push_back(std::move(term));
      }
      return rep;
    }
    case RepClass::haagerup: {
      if (m < 2) throw InvalidInput("random_integrand: chains need arity >= 2");
      std::vector<Eigen::Index> links(m - 1);
      for (auto& w : links) w = width();
      HaagerupChainRep rep;
      rep.head = random_vector_table(atom_counts.front(), links.front(), rng);
      for (std::size_t i = 1; i + 1 < m; ++i) {
        rep.middles.push_back(random_matrix_table(atom_counts[i], links[i - 1], links[i], rng));
      }
      rep.tail = random_vector_table(atom_counts.back(), links.back(), rng);
      return rep;
    }
    case RepClass::haagerup_like_first:
    case RepClass::haagerup_like_second:
      break;
  }

  const bool first = cls == RepClass::haagerup_like_first;
  const auto& n = atom_counts;
  const Eigen::Index j = width(), k = width(), l = width();
  if (m == 3 && first) {
    return HaagerupLikeRep::first_kind(random_vector_table(n[0], j, rng), random_vector_table(n[1], k, rng),
                                       random_matrix_table(n[2], j, k, rng));
  }
  if (m == 3) {
    return HaagerupLikeRep::second_kind(random_matrix_table(n[0], j, k, rng), random_vector_table(n[1], j, rng),
                                        random_vector_table(n[2], k, rng));
  }
  if (m == 4 && first) {
    return HaagerupLikeRep::first_kind(random_vector_table(n[0], l, rng), random_vector_table(n[1], j, rng),
                                       random_matrix_table(n[2], j, k, rng), random_matrix_table(n[3], k, l, rng));
  }
  if (m == 4) {
    return HaagerupLikeRep::second_kind(random_matrix_table(n[0], j, k, rng), random_matrix_table(n[1], k, l, rng),
                                        random_vector_table(n[2], l, rng), random_vector_table(n[3], j, rng));
  }
  throw InvalidInput("random_integrand: Haagerup-like integrands need arity 3 or 4");
}

MoiInstance random_instance(const InstanceShape& shape, Rng& rng) {
  MoiInstance inst;
  for (std::size_t i = 0; i < shape.arity; ++i) {
    const auto atoms = static_cast<std::size_t>(uniform_index(1, shape.dim, rng));
    inst.measures.push_back(random_measure(shape.dim, atoms, rng));
  }
  for (std::size_t i = 0; i + 1 < shape.arity; ++i) inst.operators.push_back(random_operator(shape.dim, rng));
  inst.integrand = random_integrand(shape.cls, inst.atom_counts(), shape.max_width, rng);
  return inst;
}

InstanceShape random_shape(RepClass cls, const std::vector<std::size_t>& arities, Eigen::Index max_dim,
                           Eigen::Index max_width, Rng& rng) {
  std::vector<std::size_t> allowed;
  for (std::size_t m : arities) {
    const bool like = cls == RepClass::haagerup_like_first || cls == RepClass::haagerup_like_second;
    if (m >= 2 && (!like || m == 3 || m == 4)) allowed.push_back(m);
  }
  if (allowed.empty()) throw InvalidInput("random_shape: no admissible arity for " + std::string(to_string(cls)));
  InstanceShape s;
  s.cls = cls;
  s.arity = allowed[static_cast<std::size_t>(uniform_index(0, static_cast<Eigen::Index>(allowed.size()) - 1, rng))];
  s.dim = uniform_index(1, max_dim, rng);
  s.max_width = max_width;
  return s;
}

Integrand equivalent_representation(const Integrand& psi, Rng& rng) {
  if (const auto* p = std::get_if<ProjectiveRep>(&psi)) {
    ProjectiveRep out = *p;
    for (auto& term : out.terms) {
      if (term.size() < 2) continue;
      const Complex lambda = std::polar(uniform(0.5, 2.0, rng), uniform(0.0, 6.283185307179586, rng));
      for (auto& v : term.front().values) v *= lambda;
      for (auto& v : term.back().values) v /= lambda;
    }
    if (!out.terms.empty()) {
      // split the first term into two parts with weights t and 1 - t
      const double t = uniform(0.2, 0.8, rng);
      std::vector<ScalarTable> extra = out.terms.front();
      for (auto& v : out.terms.front().front().values) v *= t;
      for (auto& v : extra.front().values) v *= 1.0 - t;
      out.terms.push_back(std::move(extra));
    }
    return out;
  }

  if (const auto* h = std::get_if<HaagerupChainRep>(&psi)) {
    HaagerupChainRep out = *h;
    const Eigen::Index w = out.head.width();
    const ComplexMatrix u = random_invertible(w, rng);
    const ComplexMatrix u_inv = u.inverse();
    out.head = times_right(out.head, u);
    if (out.middles.empty()) {
      out.tail = times_right(out.tail, u_inv.transpose());
    } else {
      out.middles.front() = times_left(u_inv, out.middles.front());
    }
    return out;
  }

  HaagerupLikeRep out = std::get<HaagerupLikeRep>(psi);
  const bool first = out.kind == HaagerupLikeKind::first;
  const std::size_t m = out.arity();
  // the row vector that opens the contraction, and the matrix family it meets
  const std::size_t row = m == 3 ? (first ? 0 : 1) : (first ? 1 : 3);
  const std::size_t mat = m == 3 ? (first ? 2 : 0) : (first ? 2 : 0);
  const ComplexMatrix u = random_invertible(out.vec(row).width(), rng);
  out.factors[row] = times_right(out.vec(row), u);
  out.factors[mat] = times_left(u.inverse(), out.mat(mat));
  return out;
}

std::vector<ComplexMatrix> random_row_blocks(std::size_t count, Eigen::Index n, Rng& rng) {
  const FiniteSpectralMeasure e =
      random_measure(n, std::uniform_int_distribution<std::size_t>(1, static_cast<std::size_t>(n))(rng), rng);
  const ComplexMatrix table = random_gaussian(static_cast<Eigen::Index>(e.atom_count()), static_cast<Eigen::Index>(count), rng);
  // sum_j A_j* A_j = sum_x (sum_j |a_j(x)|^2) P_x, so the largest row norm is the normalization
  double scale = 1.0 / table.rowwise().norm().maxCoeff();
  if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) scale *= uniform(0.3, 1.0, rng);
  std::vector<ComplexMatrix> blocks;
  for (std::size_t j = 0; j < count; ++j) {
    ScalarTable a;
    for (Eigen::Index x = 0; x < table.rows(); ++x) a.values.push_back(scale * table(x, static_cast<Eigen::Index>(j)));
    blocks.push_back(integrate_scalar(a, e));
  }
  return blocks;
}

}  // namespace moi
