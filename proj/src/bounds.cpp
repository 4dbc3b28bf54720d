#include "moi/bounds.hpp"

#include <sstream>

#include "moi/error.hpp"

namespace moi {

namespace {

bool at_least_two(SchattenExponent p) { return p.is_infinite() || p.value() >= 2.0; }

// Row normalization is re-checked with this relative slack for rounding.
constexpr double kRowNormalizationSlack = 1e-12;

}  // namespace

std::string_view to_string(BoundTag tag) noexcept {
  switch (tag) {
    case BoundTag::proj_op_norm:
      return "proj-op-norm";
    case BoundTag::proj_sp:
      return "proj-sp";
    case BoundTag::proj_pq:
      return "proj-pq";
    case BoundTag::haagerup_main:
      return "haagerup-main";
    case BoundTag::lemma_row:
      return "lemma-row";
    case BoundTag::hlike_first:
      return "hlike-first";
    case BoundTag::hlike_second:
      return "hlike-second";
    case BoundTag::hlike_quad_1:
      return "hlike-quad-1";
    case BoundTag::hlike_quad_2:
      return "hlike-quad-2";
  }
  return "unknown";
}

BoundReport finish_report(BoundReport rep) {
  if (rep.rhs == 0.0) {
    rep.ratio = rep.lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    rep.ratio = rep.lhs / rep.rhs;
  }
  rep.holds = rep.ratio <= 1.0 + rep.tol;
  return rep;
}

BoundReport check_projective(const MoiInstance& inst, const std::vector<SchattenExponent>& exponents,
                             double tol) {
  check_instance(inst);
  if (!std::holds_alternative<ProjectiveRep>(inst.integrand)) {
    throw InvalidInput("check_projective: instance does not carry a projective integrand");
  }
  if (exponents.size() != inst.operators.size()) {
    throw InvalidInput("check_projective: need one exponent per operator");
  }
  double inv_r = 0.0;
  std::size_t finite = 0;
  for (const auto& e : exponents) {
    inv_r += e.reciprocal();
    if (!e.is_infinite()) ++finite;
  }
  if (inv_r > 1.0) {
    std::ostringstream os;
    os << "check_projective: hypothesis 1/p_1 + ... + 1/p_{m-1} <= 1 violated (sum = " << inv_r << ")";
    throw RangeError(os.str());
  }

  BoundReport rep;
  rep.tag = finite == 0 ? BoundTag::proj_op_norm : finite == 1 ? BoundTag::proj_sp : BoundTag::proj_pq;
  rep.exponents = exponents;
  rep.r = SchattenExponent::harmonic_sum(exponents);
  rep.tol = tol;
  rep.lhs = schatten_norm(eval_projective(inst), rep.r);
  rep.rhs = rep_norm_bound(inst.integrand);
  for (std::size_t i = 0; i < exponents.size(); ++i) rep.rhs *= schatten_norm(inst.operators[i], exponents[i]);
  return finish_report(rep);
}

BoundReport check_projective(const MoiInstance& inst, SchattenExponent p, SchattenExponent q, double tol) {
  const std::size_t ops = inst.operators.size();
  std::vector<SchattenExponent> exps;
  for (std::size_t i = 0; i < ops; ++i) {
    exps.push_back(i == 0 ? p : i + 1 == ops ? q : SchattenExponent::infinity());
  }
  return check_projective(inst, exps, tol);
}

BoundReport check_haagerup_main(const MoiInstance& inst, SchattenExponent p, SchattenExponent q, double tol) {
  if (!at_least_two(p) || !at_least_two(q)) {
    throw RangeError("check_haagerup_main: hypothesis p, q in [2, inf] violated (p = " + p.to_string() +
                     ", q = " + q.to_string() + ")");
  }
  check_instance(inst);
  if (!std::holds_alternative<HaagerupChainRep>(inst.integrand)) {
    throw InvalidInput("check_haagerup_main: instance does not carry a Haagerup chain integrand");
  }
  if (inst.arity() < 3) throw InvalidInput("check_haagerup_main: needs arity m >= 3");

  BoundReport rep;
  rep.tag = BoundTag::haagerup_main;
  rep.exponents = {p, q};
  rep.r = SchattenExponent::harmonic_sum({p, q});
  rep.tol = tol;
  rep.lhs = schatten_norm(eval_haagerup(inst), rep.r);
  rep.rhs = rep_norm_bound(inst.integrand) * schatten_norm(inst.operators.front(), p) *
            schatten_norm(inst.operators.back(), q);
  for (std::size_t i = 1; i + 1 < inst.operators.size(); ++i) rep.rhs *= operator_norm(inst.operators[i]);
  return finish_report(rep);
}

BoundReport check_lemma_row(const std::vector<ComplexMatrix>& a_blocks, const ComplexMatrix& t,
                            SchattenExponent p, double tol) {
  if (!at_least_two(p)) throw RangeError("check_lemma_row: hypothesis p in [2, inf] violated (p = " + p.to_string() + ")");
  require_finite(t, "T");
  if (a_blocks.empty()) throw InvalidInput("check_lemma_row: no blocks");
  ComplexMatrix gram = ComplexMatrix::Zero(t.rows(), t.rows());
  for (const auto& a : a_blocks) {
    if (a.cols() != t.rows()) throw InvalidInput("check_lemma_row: block shape does not match T");
    require_finite(a, "A_j");
    gram += a.adjoint() * a;
  }
  const double g = operator_norm(gram);
  if (g > 1.0 + kRowNormalizationSlack) {
    std::ostringstream os;
    os << "check_lemma_row: normalization ||sum A_j* A_j|| <= 1 violated (measured " << g << ")";
    throw PreconditionError(os.str());
  }
  BoundReport rep;
  rep.tag = BoundTag::lemma_row;
  rep.exponents = {p};
  rep.r = p;
  rep.tol = tol;
  rep.lhs = schatten_norm(row_block(a_blocks, t), p);
  rep.rhs = schatten_norm(t, p);
  return finish_report(rep);
}

HaagerupLikeExponentSlots haagerup_like_slots(HaagerupLikeKind kind, std::size_t arity) {
  const bool first = kind == HaagerupLikeKind::first;
  if (arity == 3) return {0, 1, !first};
  if (arity == 4) return first ? HaagerupLikeExponentSlots{0, 1, false} : HaagerupLikeExponentSlots{1, 2, true};
  throw InvalidInput("Haagerup-like bounds exist for arity 3 and 4 only");
}

BoundReport check_haagerup_like(const MoiInstance& inst, SchattenExponent p, SchattenExponent q, double tol) {
  check_instance(inst);
  const auto* rep_like = std::get_if<HaagerupLikeRep>(&inst.integrand);
  if (!rep_like) throw InvalidInput("check_haagerup_like: instance does not carry a Haagerup-like integrand");
  const bool first = rep_like->kind == HaagerupLikeKind::first;
  const auto slots = haagerup_like_slots(rep_like->kind, rep_like->arity());

  const SchattenExponent& needs_two = slots.p_needs_two ? p : q;
  const double inv_r = p.reciprocal() + q.reciprocal();
  const bool two_ok = at_least_two(needs_two);
  const bool range_ok = inv_r >= 0.5 && inv_r <= 1.0;
  if (!two_ok || !range_ok) {
    std::ostringstream os;
    os << "check_haagerup_like: ";
    if (!two_ok) os << "hypothesis " << (slots.p_needs_two ? "p" : "q") << " >= 2 violated";
    if (!two_ok && !range_ok) os << "; ";
    if (!range_ok) os << "hypothesis 1/p + 1/q in [1/2, 1] violated (sum = " << inv_r << ")";
    throw RangeError(os.str());
  }

  BoundReport rep;
  if (rep_like->arity() == 3) {
    rep.tag = first ? BoundTag::hlike_first : BoundTag::hlike_second;
  } else {
    rep.tag = first ? BoundTag::hlike_quad_1 : BoundTag::hlike_quad_2;
  }
  rep.exponents = {p, q};
  rep.r = SchattenExponent::harmonic_sum({p, q});
  rep.tol = tol;
  rep.lhs = schatten_norm(eval_haagerup_like(inst), rep.r);
  rep.rhs = rep_norm_bound(inst.integrand);
  for (std::size_t i = 0; i < inst.operators.size(); ++i) {
    if (i == slots.p_operator) {
      rep.rhs *= schatten_norm(inst.operators[i], p);
    } else if (i == slots.q_operator) {
      rep.rhs *= schatten_norm(inst.operators[i], q);
    } else {
      rep.rhs *= operator_norm(inst.operators[i]);
    }
  }
  return finish_report(rep);
}

}  // namespace moi
