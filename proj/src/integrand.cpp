#include "moi/integrand.hpp"

#include <cmath>
#include <string>

#include "moi/error.hpp"

namespace moi {

namespace {

void check_atoms(std::size_t have, std::span<const std::size_t> atom_counts, std::size_t slot,
                 const char* what) {
  if (atom_counts.empty()) return;
  if (have != atom_counts[slot]) {
    throw InvalidInput(std::string(what) + " on measure " + std::to_string(slot + 1) + " has " +
                       std::to_string(have) + " atoms, measure has " + std::to_string(atom_counts[slot]));
  }
}

void check_vector_table(const VectorTable& t, std::span<const std::size_t> atom_counts, std::size_t slot) {
  if (!t.values.allFinite()) throw InvalidInput("vector table: non-finite entry");
  check_atoms(t.atom_count(), atom_counts, slot, "vector table");
}

void check_matrix_table(const MatrixTable& t, std::span<const std::size_t> atom_counts, std::size_t slot) {
  t.check_shapes();
  check_atoms(t.atom_count(), atom_counts, slot, "matrix table");
}

void require_width(Eigen::Index got, Eigen::Index want, const char* where) {
  if (got != want) {
    throw InvalidInput(std::string("malformed representation: ") + where + " (" + std::to_string(got) +
                       " vs " + std::to_string(want) + ")");
  }
}

MatrixTable conj_transposed(const MatrixTable& t) {
  MatrixTable out{t.cols, t.rows, {}};
  out.values.reserve(t.values.size());
  for (const auto& v : t.values) out.values.push_back(v.adjoint());
  return out;
}

VectorTable conj(const VectorTable& t) { return VectorTable(t.values.conjugate()); }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::string_view to_string(HaagerupLikeKind k) noexcept {
  return k == HaagerupLikeKind::first ? "first" : "second";
}

const VectorTable& HaagerupLikeRep::vec(std::size_t i) const {
  const auto* p = std::get_if<VectorTable>(&factors.at(i));
  if (!p) throw InvalidInput("Haagerup-like factor " + std::to_string(i + 1) + " is not a vector family");
  return *p;
}

const MatrixTable& HaagerupLikeRep::mat(std::size_t i) const {
  const auto* p = std::get_if<MatrixTable>(&factors.at(i));
  if (!p) throw InvalidInput("Haagerup-like factor " + std::to_string(i + 1) + " is not a matrix family");
  return *p;
}

HaagerupLikeRep HaagerupLikeRep::first_kind(VectorTable a, VectorTable b, MatrixTable g) {
  return {HaagerupLikeKind::first, {std::move(a), std::move(b), std::move(g)}};
}

HaagerupLikeRep HaagerupLikeRep::second_kind(MatrixTable a, VectorTable b, VectorTable g) {
  return {HaagerupLikeKind::second, {std::move(a), std::move(b), std::move(g)}};
}

HaagerupLikeRep HaagerupLikeRep::first_kind(VectorTable a, VectorTable b, MatrixTable g, MatrixTable d) {
  return {HaagerupLikeKind::first, {std::move(a), std::move(b), std::move(g), std::move(d)}};
}

HaagerupLikeRep HaagerupLikeRep::second_kind(MatrixTable a, MatrixTable b, VectorTable g, VectorTable d) {
  return {HaagerupLikeKind::second, {std::move(a), std::move(b), std::move(g), std::move(d)}};
}

std::vector<bool> haagerup_like_matrix_slots(HaagerupLikeKind kind, std::size_t arity) {
  if (arity == 3) {
    return kind == HaagerupLikeKind::first ? std::vector<bool>{false, false, true}
                                           : std::vector<bool>{true, false, false};
  }
  if (arity == 4) {
    return kind == HaagerupLikeKind::first ? std::vector<bool>{false, false, true, true}
                                           : std::vector<bool>{true, true, false, false};
  }
  throw InvalidInput("Haagerup-like representations have arity 3 or 4, got " + std::to_string(arity));
}

std::size_t arity(const Integrand& psi) {
  return std::visit(overloaded{[](const ProjectiveRep& r) { return r.arity; },
                               [](const HaagerupChainRep& r) { return r.arity(); },
                               [](const HaagerupLikeRep& r) { return r.arity(); }},
                    psi);
}

std::string_view class_name(const Integrand& psi) {
  return std::visit(overloaded{[](const ProjectiveRep&) { return std::string_view("projective"); },
                               [](const HaagerupChainRep&) { return std::string_view("haagerup"); },
                               [](const HaagerupLikeRep&) { return std::string_view("haagerup_like"); }},
                    psi);
}

// ---------------------------------------------------------------------------
// well-formedness

void check_well_formed(const ProjectiveRep& rep, std::span<const std::size_t> atom_counts) {
  if (rep.arity < 2) throw InvalidInput("projective representation needs arity >= 2");
  if (!atom_counts.empty() && atom_counts.size() != rep.arity) {
    throw InvalidInput("projective representation arity does not match the number of measures");
  }
  for (const auto& term : rep.terms) {
    if (term.size() != rep.arity) throw InvalidInput("projective term has the wrong number of factors");
    for (std::size_t i = 0; i < term.size(); ++i) {
      for (const auto& v : term[i].values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
          throw InvalidInput("projective term: non-finite value");
        }
      }
      check_atoms(term[i].atom_count(), atom_counts, i, "scalar table");
    }
  }
}

void check_well_formed(const HaagerupChainRep& rep, std::span<const std::size_t> atom_counts) {
  const std::size_t m = rep.arity();
  if (!atom_counts.empty() && atom_counts.size() != m) {
    throw InvalidInput("Haagerup chain arity does not match the number of measures");
  }
  check_vector_table(rep.head, atom_counts, 0);
  check_vector_table(rep.tail, atom_counts, m - 1);
  Eigen::Index width = rep.head.width();
  for (std::size_t i = 0; i < rep.middles.size(); ++i) {
    check_matrix_table(rep.middles[i], atom_counts, i + 1);
    require_width(rep.middles[i].rows, width, "chain link widths do not compose");
    width = rep.middles[i].cols;
  }
  require_width(rep.tail.width(), width, "tail width does not match the last link");
}

void check_well_formed(const HaagerupLikeRep& rep, std::span<const std::size_t> atom_counts) {
  const std::size_t m = rep.arity();
  const auto slots = haagerup_like_matrix_slots(rep.kind, m);
  if (!atom_counts.empty() && atom_counts.size() != m) {
    throw InvalidInput("Haagerup-like arity does not match the number of measures");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (slots[i]) {
      check_matrix_table(rep.mat(i), atom_counts, i);
    } else {
      check_vector_table(rep.vec(i), atom_counts, i);
    }
  }
  const bool first = rep.kind == HaagerupLikeKind::first;
  if (m == 3 && first) {
    require_width(rep.mat(2).rows, rep.vec(0).width(), "g_jk rows vs a_j width");
    require_width(rep.mat(2).cols, rep.vec(1).width(), "g_jk cols vs b_k width");
  } else if (m == 3) {
    require_width(rep.mat(0).rows, rep.vec(1).width(), "a_jk rows vs b_j width");
    require_width(rep.mat(0).cols, rep.vec(2).width(), "a_jk cols vs g_k width");
  } else if (first) {
    require_width(rep.mat(2).rows, rep.vec(1).width(), "g_jk rows vs b_j width");
    require_width(rep.mat(3).rows, rep.mat(2).cols, "d_kl rows vs g_jk cols");
    require_width(rep.mat(3).cols, rep.vec(0).width(), "d_kl cols vs a_l width");
  } else {
    require_width(rep.mat(0).rows, rep.vec(3).width(), "a_jk rows vs d_j width");
    require_width(rep.mat(1).rows, rep.mat(0).cols, "b_kl rows vs a_jk cols");
    require_width(rep.mat(1).cols, rep.vec(2).width(), "b_kl cols vs g_l width");
  }
}

void check_well_formed(const Integrand& psi, std::span<const std::size_t> atom_counts) {
  std::visit([&](const auto& r) { check_well_formed(r, atom_counts); }, psi);
}

// ---------------------------------------------------------------------------
// norms

double rep_norm_bound(const ProjectiveRep& rep) {
  double total = 0.0;
  for (const auto& term : rep.terms) {
    double prod = 1.0;
    for (const auto& t : term) prod *= t.sup_norm();
    total += prod;
  }
  return total;
}

double rep_norm_bound(const HaagerupChainRep& rep) {
  check_well_formed(rep);
  double prod = rep.head.sup_norm() * rep.tail.sup_norm();
  for (const auto& mid : rep.middles) prod *= mid.sup_norm();
  return prod;
}

double rep_norm_bound(const HaagerupLikeRep& rep) {
  check_well_formed(rep);
  double prod = 1.0;
  for (const auto& f : rep.factors) {
    prod *= std::visit([](const auto& t) { return t.sup_norm(); }, f);
  }
  return prod;
}

double rep_norm_bound(const Integrand& psi) {
  return std::visit([](const auto& r) { return rep_norm_bound(r); }, psi);
}

// ---------------------------------------------------------------------------
// pointwise values

namespace {

void check_atom_span(std::size_t m, std::span<const std::size_t> atoms) {
  if (atoms.size() != m) throw InvalidInput("eval_pointwise: expected one atom index per factor");
}

Eigen::RowVectorXcd row_at(const VectorTable& t, std::size_t atom) {
  if (atom >= t.atom_count()) throw InvalidInput("eval_pointwise: atom index out of range");
  return t.values.row(static_cast<Eigen::Index>(atom));
}

const ComplexMatrix& mat_at(const MatrixTable& t, std::size_t atom) {
  if (atom >= t.atom_count()) throw InvalidInput("eval_pointwise: atom index out of range");
  return t.values[atom];
}

}  // namespace

Complex eval_pointwise(const ProjectiveRep& rep, std::span<const std::size_t> atoms) {
  check_atom_span(rep.arity, atoms);
  Complex sum{};
  for (const auto& term : rep.terms) {
    Complex prod{1.0, 0.0};
    for (std::size_t i = 0; i < term.size(); ++i) {
      if (atoms[i] >= term[i].atom_count()) throw InvalidInput("eval_pointwise: atom index out of range");
      prod *= term[i].values[atoms[i]];
    }
    sum += prod;
  }
  return sum;
}

Complex eval_pointwise(const HaagerupChainRep& rep, std::span<const std::size_t> atoms) {
  check_atom_span(rep.arity(), atoms);
  Eigen::RowVectorXcd acc = row_at(rep.head, atoms[0]);
  for (std::size_t i = 0; i < rep.middles.size(); ++i) acc = acc * mat_at(rep.middles[i], atoms[i + 1]);
  if (acc.size() == 0) return {};
  return (acc * row_at(rep.tail, atoms.back()).transpose())(0, 0);
}

Complex eval_pointwise(const HaagerupLikeRep& rep, std::span<const std::size_t> atoms) {
  const std::size_t m = rep.arity();
  check_atom_span(m, atoms);
  Eigen::RowVectorXcd left;
  ComplexVector right;
  if (m == 3 && rep.kind == HaagerupLikeKind::first) {
    // sum_jk a_j b_k g_jk
    left = row_at(rep.vec(0), atoms[0]) * mat_at(rep.mat(2), atoms[2]);
    right = row_at(rep.vec(1), atoms[1]).transpose();
  } else if (m == 3) {
    // sum_jk a_jk b_j g_k
    left = row_at(rep.vec(1), atoms[1]) * mat_at(rep.mat(0), atoms[0]);
    right = row_at(rep.vec(2), atoms[2]).transpose();
  } else if (rep.kind == HaagerupLikeKind::first) {
    // sum_jkl a_l b_j g_jk d_kl
    left = row_at(rep.vec(1), atoms[1]) * mat_at(rep.mat(2), atoms[2]) * mat_at(rep.mat(3), atoms[3]);
    right = row_at(rep.vec(0), atoms[0]).transpose();
  } else {
    // sum_jkl a_jk b_kl g_l d_j
    left = row_at(rep.vec(3), atoms[3]) * mat_at(rep.mat(0), atoms[0]) * mat_at(rep.mat(1), atoms[1]);
    right = row_at(rep.vec(2), atoms[2]).transpose();
  }
  if (left.size() == 0) return {};
  return (left * right)(0, 0);
}

Complex eval_pointwise(const Integrand& psi, std::span<const std::size_t> atoms) {
  return std::visit([&](const auto& r) { return eval_pointwise(r, atoms); }, psi);
}

// ---------------------------------------------------------------------------
// embeddings and rearrangements

HaagerupChainRep embed_projective_in_haagerup(const ProjectiveRep& rep,
                                              std::span<const std::size_t> atom_counts) {
  check_well_formed(rep, atom_counts);
  const std::size_t m = rep.arity;
  const auto width = static_cast<Eigen::Index>(rep.terms.size());

  std::vector<std::size_t> atoms(m, 0);
  if (!atom_counts.empty()) {
    atoms.assign(atom_counts.begin(), atom_counts.end());
  } else if (!rep.terms.empty()) {
    for (std::size_t i = 0; i < m; ++i) atoms[i] = rep.terms.front()[i].atom_count();
  }

  HaagerupChainRep out;
  out.head.values = ComplexMatrix::Zero(static_cast<Eigen::Index>(atoms[0]), width);
  out.tail.values = ComplexMatrix::Zero(static_cast<Eigen::Index>(atoms[m - 1]), width);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    MatrixTable mid{width, width, {}};
    mid.values.assign(atoms[i], ComplexMatrix::Zero(width, width));
    out.middles.push_back(std::move(mid));
  }

  for (Eigen::Index n = 0; n < width; ++n) {
    const auto& term = rep.terms[static_cast<std::size_t>(n)];
    double weight = 1.0;
    for (const auto& t : term) weight *= t.sup_norm();
    if (weight == 0.0) continue;  // the term vanishes identically
    const double end_scale = std::sqrt(weight);

    const double h = term.front().sup_norm();
    for (std::size_t a = 0; a < atoms[0]; ++a) {
      out.head.values(static_cast<Eigen::Index>(a), n) = term.front().values[a] * (end_scale / h);
    }
    const double t = term.back().sup_norm();
    for (std::size_t a = 0; a < atoms[m - 1]; ++a) {
      out.tail.values(static_cast<Eigen::Index>(a), n) = term.back().values[a] * (end_scale / t);
    }
    for (std::size_t i = 1; i + 1 < m; ++i) {
      const double s = term[i].sup_norm();
      for (std::size_t a = 0; a < atoms[i]; ++a) out.middles[i - 1].values[a](n, n) = term[i].values[a] / s;
    }
  }
  return out;
}

CycledChain cycled_chain(const HaagerupLikeRep& rep) {
  check_well_formed(rep);
  CycledChain out;
  const bool first = rep.kind == HaagerupLikeKind::first;
  if (rep.arity() == 3 && first) {
    out.chain = {rep.vec(1), {rep.mat(2).transposed()}, rep.vec(0)};
    out.measure_order = {1, 2, 0};
  } else if (rep.arity() == 3) {
    out.chain = {rep.vec(2), {rep.mat(0).transposed()}, rep.vec(1)};
    out.measure_order = {2, 0, 1};
  } else if (first) {
    out.chain = {rep.vec(1), {rep.mat(2), rep.mat(3)}, rep.vec(0)};
    out.measure_order = {1, 2, 3, 0};
  } else {
    out.chain = {rep.vec(3), {rep.mat(0), rep.mat(1)}, rep.vec(2)};
    out.measure_order = {3, 0, 1, 2};
  }
  return out;
}

HaagerupChainRep adjoint_reversed(const HaagerupChainRep& rep) {
  check_well_formed(rep);
  HaagerupChainRep out;
  out.head = conj(rep.tail);
  out.tail = conj(rep.head);
  for (auto it = rep.middles.rbegin(); it != rep.middles.rend(); ++it) out.middles.push_back(conj_transposed(*it));
  return out;
}

HaagerupLikeRep adjoint_reversed(const HaagerupLikeRep& rep) {
  check_well_formed(rep);
  const bool first = rep.kind == HaagerupLikeKind::first;
  if (rep.arity() == 3 && first) {
    return HaagerupLikeRep::second_kind(conj_transposed(rep.mat(2)), conj(rep.vec(1)), conj(rep.vec(0)));
  }
  if (rep.arity() == 3) {
    return HaagerupLikeRep::first_kind(conj(rep.vec(2)), conj(rep.vec(1)), conj_transposed(rep.mat(0)));
  }
  if (first) {
    return HaagerupLikeRep::second_kind(conj_transposed(rep.mat(3)), conj_transposed(rep.mat(2)),
                                        conj(rep.vec(1)), conj(rep.vec(0)));
  }
  return HaagerupLikeRep::first_kind(conj(rep.vec(3)), conj(rep.vec(2)), conj_transposed(rep.mat(1)),
                                     conj_transposed(rep.mat(0)));
}

}  // namespace moi
