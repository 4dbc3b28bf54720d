#include "moi/moi_eval.hpp"

#include <cstdint>
#include <string>

#include "moi/error.hpp"

namespace moi {

namespace {

using Family = std::vector<ComplexMatrix>;            // A_j
using BlockFamily = std::vector<std::vector<ComplexMatrix>>;  // B_jk

Family integrate_vector(const VectorTable& t, const FiniteSpectralMeasure& e) {
  Family out;
  out.reserve(static_cast<std::size_t>(t.width()));
  for (Eigen::Index j = 0; j < t.width(); ++j) out.push_back(integrate_scalar(t.component(j), e));
  return out;
}

BlockFamily integrate_matrix(const MatrixTable& t, const FiniteSpectralMeasure& e) {
  BlockFamily out(static_cast<std::size_t>(t.rows));
  for (Eigen::Index j = 0; j < t.rows; ++j) {
    out[j].reserve(static_cast<std::size_t>(t.cols));
    for (Eigen::Index k = 0; k < t.cols; ++k) out[j].push_back(integrate_scalar(t.entry(j, k), e));
  }
  return out;
}

ComplexMatrix zero(Eigen::Index n) { return ComplexMatrix::Zero(n, n); }

template <class Rep>
const Rep& require_rep(const MoiInstance& inst, const char* op) {
  const auto* rep = std::get_if<Rep>(&inst.integrand);
  if (!rep) {
    throw InvalidInput(std::string(op) + ": instance carries a " + std::string(class_name(inst.integrand)) +
                       " integrand");
  }
  return *rep;
}

// sum over all chain indices of A_j T_1 B_jk T_2 ... Delta_l, associated left to right.
ComplexMatrix chain_sum(const HaagerupChainRep& rep, const std::vector<const FiniteSpectralMeasure*>& measures,
                        const std::vector<const ComplexMatrix*>& ops) {
  const Eigen::Index n = measures.front()->dim;
  Family partial;  // partial[k] = sum over earlier indices ending in link index k
  const Family heads = integrate_vector(rep.head, *measures.front());
  partial.reserve(heads.size());
  for (const auto& a : heads) partial.push_back(a * *ops[0]);

  for (std::size_t i = 0; i < rep.middles.size(); ++i) {
    const MatrixTable& mid = rep.middles[i];
    Family next(static_cast<std::size_t>(mid.cols), zero(n));
    for (Eigen::Index j = 0; j < mid.rows; ++j) {
      for (Eigen::Index k = 0; k < mid.cols; ++k) {
        const ScalarTable entry = mid.entry(j, k);
        // structurally zero links are common (diagonal middles); skip them
        if (entry.sup_norm() == 0.0) continue;
        next[k] += partial[j] * integrate_scalar(entry, *measures[i + 1]);
      }
    }
    for (auto& m : next) m = m * *ops[i + 1];
    partial = std::move(next);
  }

  const Family tails = integrate_vector(rep.tail, *measures.back());
  ComplexMatrix out = zero(n);
  for (std::size_t l = 0; l < tails.size(); ++l) out += partial[l] * tails[l];
  return out;
}

std::vector<const FiniteSpectralMeasure*> measure_ptrs(const MoiInstance& inst) {
  std::vector<const FiniteSpectralMeasure*> out;
  for (const auto& e : inst.measures) out.push_back(&e);
  return out;
}

std::vector<const ComplexMatrix*> op_ptrs(const MoiInstance& inst) {
  std::vector<const ComplexMatrix*> out;
  for (const auto& t : inst.operators) out.push_back(&t);
  return out;
}

}  // namespace

std::vector<std::size_t> MoiInstance::atom_counts() const {
  std::vector<std::size_t> out;
  out.reserve(measures.size());
  for (const auto& e : measures) out.push_back(e.atom_count());
  return out;
}

void check_instance(const MoiInstance& inst, bool check_measures) {
  const std::size_t m = inst.arity();
  if (m < 2) throw InvalidInput("instance needs at least two spectral measures");
  if (arity(inst.integrand) != m) {
    throw InvalidInput("integrand arity " + std::to_string(arity(inst.integrand)) + " does not match " +
                       std::to_string(m) + " measures");
  }
  if (inst.operators.size() != m - 1) {
    throw InvalidInput("instance with " + std::to_string(m) + " measures needs " + std::to_string(m - 1) +
                       " operators, got " + std::to_string(inst.operators.size()));
  }
  const Eigen::Index n = inst.dim();
  if (n < 1) throw InvalidInput("spectral measure dimension must be positive");
  for (const auto& e : inst.measures) {
    if (e.dim != n) throw InvalidInput("spectral measures do not share the ambient dimension");
    if (e.atoms.empty()) throw InvalidInput("spectral measure without atoms");
    if (check_measures) require_valid(e);
  }
  for (const auto& t : inst.operators) {
    if (t.rows() != n || t.cols() != n) throw InvalidInput("operator shape does not match the ambient dimension");
    require_finite(t, "operator");
  }
  const auto counts = inst.atom_counts();
  check_well_formed(inst.integrand, counts);
}

double instance_scale(const MoiInstance& inst) {
  double s = rep_norm_bound(inst.integrand);
  for (const auto& t : inst.operators) s *= operator_norm(t);
  return std::max(s, 1e-12);
}

ComplexMatrix eval_oracle(const MoiInstance& inst, std::size_t tuple_cap) {
  check_instance(inst);
  const std::size_t m = inst.arity();
  std::size_t tuples = 1;
  for (const auto& e : inst.measures) {
    if (__builtin_mul_overflow(tuples, e.atom_count(), &tuples)) {
      throw CapExceeded("eval_oracle: atom-tuple count overflows", SIZE_MAX, tuple_cap);
    }
  }
  if (tuples > tuple_cap) throw CapExceeded("eval_oracle: atom-tuple count exceeds the cap", tuples, tuple_cap);

  const Eigen::Index n = inst.dim();
  ComplexMatrix out = zero(n);
  std::vector<std::size_t> idx(m, 0);
  // prefix[k] = P_{i_1} T_1 ... P_{i_{k+1}}
  std::vector<ComplexMatrix> prefix(m);

  // depth-first walk over atom tuples; prefixes are reused across siblings
  std::size_t level = 0;
  while (true) {
    const auto& p = inst.measures[level].projection(idx[level]);
    prefix[level] = level == 0 ? p : ComplexMatrix(prefix[level - 1] * inst.operators[level - 1] * p);
    if (level + 1 < m) {
      ++level;
      idx[level] = 0;
      continue;
    }
    const Complex psi = eval_pointwise(inst.integrand, idx);
    if (psi != Complex{}) out += psi * prefix[level];
    // advance to the next tuple
    while (true) {
      if (++idx[level] < inst.measures[level].atom_count()) break;
      if (level == 0) return out;
      --level;
    }
  }
}

ComplexMatrix eval_projective(const MoiInstance& inst) {
  check_instance(inst);
  const auto& rep = require_rep<ProjectiveRep>(inst, "eval_projective");
  const Eigen::Index n = inst.dim();
  ComplexMatrix out = zero(n);
  for (const auto& term : rep.terms) {
    ComplexMatrix prod = integrate_scalar(term[0], inst.measures[0]);
    for (std::size_t i = 1; i < term.size(); ++i) {
      prod = prod * inst.operators[i - 1] * integrate_scalar(term[i], inst.measures[i]);
    }
    out += prod;
  }
  return out;
}

ComplexMatrix eval_haagerup(const MoiInstance& inst) {
  check_instance(inst);
  const auto& rep = require_rep<HaagerupChainRep>(inst, "eval_haagerup");
  return chain_sum(rep, measure_ptrs(inst), op_ptrs(inst));
}

ComplexMatrix eval_haagerup_block(const MoiInstance& inst, Eigen::Index block_cap) {
  check_instance(inst);
  const auto& rep = require_rep<HaagerupChainRep>(inst, "eval_haagerup_block");
  const std::size_t m = rep.arity();
  if (m != 3 && m != 4) throw InvalidInput("eval_haagerup_block supports arity 3 and 4");
  const Eigen::Index n = inst.dim();

  Eigen::Index widest = rep.head.width();
  for (const auto& mid : rep.middles) widest = std::max({widest, mid.rows, mid.cols});
  if (widest * n > block_cap) {
    throw CapExceeded("eval_haagerup_block: block dimension exceeds the cap", static_cast<std::size_t>(widest * n),
                      static_cast<std::size_t>(block_cap));
  }

  const Family heads = integrate_vector(rep.head, inst.measures.front());
  ComplexMatrix row = row_block(heads, inst.operators.front());

  auto block_matrix = [&](const MatrixTable& t, const FiniteSpectralMeasure& e) {
    const BlockFamily b = integrate_matrix(t, e);
    ComplexMatrix out = ComplexMatrix::Zero(t.rows * n, t.cols * n);
    for (Eigen::Index j = 0; j < t.rows; ++j) {
      for (Eigen::Index k = 0; k < t.cols; ++k) out.block(j * n, k * n, n, n) = b[j][k];
    }
    return out;
  };
  auto block_diagonal = [&](const ComplexMatrix& t, Eigen::Index copies) {
    ComplexMatrix out = ComplexMatrix::Zero(copies * n, copies * n);
    for (Eigen::Index j = 0; j < copies; ++j) out.block(j * n, j * n, n, n) = t;
    return out;
  };

  // column block (T_{m-1} D_0; T_{m-1} D_1; ...)
  const Family tails = integrate_vector(rep.tail, inst.measures.back());
  ComplexMatrix column = ComplexMatrix::Zero(static_cast<Eigen::Index>(tails.size()) * n, n);
  for (std::size_t l = 0; l < tails.size(); ++l) {
    column.block(static_cast<Eigen::Index>(l) * n, 0, n, n) = inst.operators.back() * tails[l];
  }

  ComplexMatrix prod = row * block_matrix(rep.middles[0], inst.measures[1]);
  if (m == 4) {
    prod = prod * block_diagonal(inst.operators[1], rep.middles[0].cols) *
           block_matrix(rep.middles[1], inst.measures[2]);
  }
  if (prod.cols() == 0) return zero(n);
  return prod * column;
}

ComplexMatrix row_block(const std::vector<ComplexMatrix>& a_blocks, const ComplexMatrix& t) {
  const Eigen::Index rows = a_blocks.empty() ? t.rows() : a_blocks.front().rows();
  for (const auto& a : a_blocks) {
    if (a.rows() != rows || a.cols() != t.rows()) throw InvalidInput("row_block: block shapes do not match");
  }
  ComplexMatrix row = ComplexMatrix::Zero(rows, static_cast<Eigen::Index>(a_blocks.size()) * t.cols());
  for (std::size_t j = 0; j < a_blocks.size(); ++j) {
    row.block(0, static_cast<Eigen::Index>(j) * t.cols(), rows, t.cols()) = a_blocks[j] * t;
  }
  return row;
}

ComplexMatrix eval_double_schur(const ComplexMatrix& psi, const FiniteSpectralMeasure& e1,
                                const FiniteSpectralMeasure& e2, const ComplexMatrix& t) {
  if (psi.rows() != static_cast<Eigen::Index>(e1.atom_count()) ||
      psi.cols() != static_cast<Eigen::Index>(e2.atom_count())) {
    throw InvalidInput("eval_double_schur: table shape does not match the atom counts");
  }
  if (e1.dim != e2.dim || t.rows() != e1.dim || t.cols() != e1.dim) {
    throw InvalidInput("eval_double_schur: operator shape does not match the measures");
  }
  ComplexMatrix out = zero(e1.dim);
  for (std::size_t i = 0; i < e1.atom_count(); ++i) {
    const ComplexMatrix left = e1.projection(i) * t;
    for (std::size_t j = 0; j < e2.atom_count(); ++j) {
      const Complex v = psi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (v != Complex{}) out += v * left * e2.projection(j);
    }
  }
  return out;
}

ComplexMatrix eval_haagerup_like(const MoiInstance& inst) {
  check_instance(inst);
  const auto& rep = require_rep<HaagerupLikeRep>(inst, "eval_haagerup_like");
  const Eigen::Index n = inst.dim();
  const auto& E = inst.measures;
  const auto& T = inst.operators;
  ComplexMatrix w = zero(n);
  const bool first = rep.kind == HaagerupLikeKind::first;

  if (rep.arity() == 3 && first) {
    // sum_jk A_j T B_k R G_jk
    const Family a = integrate_vector(rep.vec(0), E[0]);
    const Family b = integrate_vector(rep.vec(1), E[1]);
    const BlockFamily g = integrate_matrix(rep.mat(2), E[2]);
    for (std::size_t j = 0; j < a.size(); ++j) {
      ComplexMatrix inner = zero(n);
      for (std::size_t k = 0; k < b.size(); ++k) inner += b[k] * T[1] * g[j][k];
      w += a[j] * T[0] * inner;
    }
  } else if (rep.arity() == 3) {
    // sum_jk A_jk T B_j R G_k
    const BlockFamily a = integrate_matrix(rep.mat(0), E[0]);
    const Family b = integrate_vector(rep.vec(1), E[1]);
    const Family g = integrate_vector(rep.vec(2), E[2]);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const ComplexMatrix right = T[0] * b[j] * T[1];
      for (std::size_t k = 0; k < g.size(); ++k) w += a[j][k] * right * g[k];
    }
  } else if (first) {
    // sum_jkl A_l T1 B_j T2 G_jk T3 D_kl
    const Family a = integrate_vector(rep.vec(0), E[0]);
    const Family b = integrate_vector(rep.vec(1), E[1]);
    const BlockFamily g = integrate_matrix(rep.mat(2), E[2]);
    const BlockFamily d = integrate_matrix(rep.mat(3), E[3]);
    for (std::size_t l = 0; l < a.size(); ++l) {
      ComplexMatrix mid = zero(n);
      for (std::size_t j = 0; j < b.size(); ++j) {
        ComplexMatrix inner = zero(n);
        for (std::size_t k = 0; k < d.size(); ++k) inner += g[j][k] * T[2] * d[k][l];
        mid += b[j] * T[1] * inner;
      }
      w += a[l] * T[0] * mid;
    }
  } else {
    // sum_jkl A_jk T1 B_kl T2 G_l T3 D_j
    const BlockFamily a = integrate_matrix(rep.mat(0), E[0]);
    const BlockFamily b = integrate_matrix(rep.mat(1), E[1]);
    const Family g = integrate_vector(rep.vec(2), E[2]);
    const Family d = integrate_vector(rep.vec(3), E[3]);
    const std::size_t width_k = b.size();
    for (std::size_t j = 0; j < d.size(); ++j) {
      ComplexMatrix right = zero(n);
      for (std::size_t k = 0; k < width_k; ++k) {
        ComplexMatrix inner = zero(n);
        for (std::size_t l = 0; l < g.size(); ++l) inner += b[k][l] * T[1] * g[l];
        right += a[j][k] * T[0] * inner;
      }
      w += right * T[2] * d[j];
    }
  }
  return w;
}

Complex duality_functional(const MoiInstance& inst, const ComplexMatrix& q) {
  check_instance(inst);
  const auto& rep = require_rep<HaagerupLikeRep>(inst, "duality_functional");
  const Eigen::Index n = inst.dim();
  if (q.rows() != n || q.cols() != n) throw InvalidInput("duality_functional: Q has the wrong shape");

  const CycledChain cyc = cycled_chain(rep);
  std::vector<const FiniteSpectralMeasure*> measures;
  for (std::size_t i : cyc.measure_order) measures.push_back(&inst.measures[i]);

  const auto& T = inst.operators;
  const bool first = rep.kind == HaagerupLikeKind::first;
  if (rep.arity() == 3 && first) {
    // Q -> trace((iii Psi dE2 R dE3 Q dE1) T)
    return (chain_sum(cyc.chain, measures, {&T[1], &q}) * T[0]).trace();
  }
  if (rep.arity() == 3) {
    // Q -> trace((iii Psi dE3 Q dE1 T dE2) R)
    return (chain_sum(cyc.chain, measures, {&q, &T[0]}) * T[1]).trace();
  }
  if (first) {
    // Q -> trace((iiii Psi dE2 T2 dE3 T3 dE4 Q dE1) T1)
    return (chain_sum(cyc.chain, measures, {&T[1], &T[2], &q}) * T[0]).trace();
  }
  // Q -> trace(T3 (iiii Psi dE4 Q dE1 T1 dE2 T2 dE3))
  return (T[2] * chain_sum(cyc.chain, measures, {&q, &T[0], &T[1]})).trace();
}

ComplexMatrix evaluate(const MoiInstance& inst) {
  switch (inst.integrand.index()) {
    case 0:
      return eval_projective(inst);
    case 1:
      return eval_haagerup(inst);
    default:
      return eval_haagerup_like(inst);
  }
}

MoiInstance adjoint_instance(const MoiInstance& inst) {
  MoiInstance out;
  out.measures.assign(inst.measures.rbegin(), inst.measures.rend());
  for (auto it = inst.operators.rbegin(); it != inst.operators.rend(); ++it) out.operators.push_back(it->adjoint());
  if (const auto* chain = std::get_if<HaagerupChainRep>(&inst.integrand)) {
    out.integrand = adjoint_reversed(*chain);
  } else if (const auto* like = std::get_if<HaagerupLikeRep>(&inst.integrand)) {
    out.integrand = adjoint_reversed(*like);
  } else {
    throw InvalidInput("adjoint_instance: projective integrands are not supported");
  }
  return out;
}

}  // namespace moi
