#include "moi/campaign.hpp"

#include <algorithm>
#include <cmath>

#include "moi/bounds.hpp"
#include "moi/error.hpp"
#include "moi/random_instance.hpp"

namespace moi {

namespace {

struct Outcome {
  double value = 0.0;
  bool ok = true;
  Json repro;
};

constexpr RepClass kAllClasses[] = {RepClass::projective, RepClass::haagerup, RepClass::haagerup_like_first,
                                    RepClass::haagerup_like_second};

template <class Trial>
SuiteResult run_suite(const char* name, const CampaignConfig& cfg, Trial trial) {
  SuiteResult res;
  res.name = name;
  res.trials = cfg.trials;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    Rng rng = trial_rng(cfg.seed, name, i);
    Outcome out = trial(i, rng);
    res.worst = std::max(res.worst, out.value);
    if (!out.ok && res.pass) {
      res.pass = false;
      res.failing_trial = i;
      out.repro["suite"] = name;
      out.repro["seed"] = cfg.seed;
      out.repro["trial"] = i;
      res.repro = std::move(out.repro);
    }
  }
  return res;
}

Json instance_json(const MoiInstance& inst, std::optional<SchattenExponent> p = {},
                   std::optional<SchattenExponent> q = {}) {
  return to_json(InstanceFile{inst, p, q});
}

template <class T>
const T& pick(const std::vector<T>& v, Rng& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::vector<std::size_t> chain_arities(const CampaignConfig& cfg) {
  std::vector<std::size_t> out;
  for (std::size_t m : cfg.arities) {
    if (m >= 3) out.push_back(m);
  }
  return out;
}

std::vector<std::size_t> like_arities(const CampaignConfig& cfg) {
  std::vector<std::size_t> out;
  for (std::size_t m : cfg.arities) {
    if (m == 3 || m == 4) out.push_back(m);
  }
  return out;
}

double relative(const ComplexMatrix& a, const ComplexMatrix& b, double scale) {
  return operator_norm(a - b) / scale;
}

}  // namespace

void validate(const CampaignConfig& cfg) {
  if (cfg.trials == 0) throw InvalidInput("campaign: trials must be at least 1");
  if (cfg.max_dim < 1) throw InvalidInput("campaign: max dim must be at least 1");
  if (cfg.max_width < 1) throw InvalidInput("campaign: max width must be at least 1");
  if (cfg.duality_queries == 0) throw InvalidInput("campaign: duality queries must be at least 1");
  if (!std::isfinite(cfg.tol) || cfg.tol < 0.0) throw InvalidInput("campaign: tolerance must be finite and >= 0");
  if (cfg.arities.empty()) throw InvalidInput("campaign: arity list is empty");
  for (std::size_t m : cfg.arities) {
    if (m < 2 || m > 6) throw InvalidInput("campaign: arities must lie in [2, 6]");
  }
  if (like_arities(cfg).empty()) throw InvalidInput("campaign: arity list needs 3 or 4 for the Haagerup-like suites");
  if (cfg.exponents.empty()) throw InvalidInput("campaign: exponent list is empty");
  for (const auto& p : cfg.exponents) {
    if (!p.is_infinite() && p.value() < 2.0) {
      throw RangeError("campaign: exponent " + p.to_string() +
                       " violates the haagerup-main and lemma-row hypothesis p in [2, inf]");
    }
  }
}

std::vector<std::pair<SchattenExponent, SchattenExponent>> haagerup_like_exponent_pairs(HaagerupLikeKind kind) {
  const std::vector<SchattenExponent> grid = {SchattenExponent(1.0), SchattenExponent(1.5), SchattenExponent(2.0),
                                              SchattenExponent(3.0), SchattenExponent(4.0), SchattenExponent(6.0),
                                              SchattenExponent::infinity()};
  std::vector<std::pair<SchattenExponent, SchattenExponent>> out;
  for (const auto& p : grid) {
    for (const auto& q : grid) {
      const SchattenExponent& constrained = kind == HaagerupLikeKind::first ? q : p;
      const double s = p.reciprocal() + q.reciprocal();
      if ((constrained.is_infinite() || constrained.value() >= 2.0) && s >= 0.5 && s <= 1.0) out.emplace_back(p, q);
    }
  }
  return out;
}

SuiteResult run_oracle_suite(const CampaignConfig& cfg) {
  return run_suite("oracle-equivalence", cfg, [&](std::size_t i, Rng& rng) {
    const RepClass cls = kAllClasses[i % 4];
    const bool like = cls == RepClass::haagerup_like_first || cls == RepClass::haagerup_like_second;
    const MoiInstance inst =
        random_instance(random_shape(cls, like ? like_arities(cfg) : cfg.arities, cfg.max_dim, cfg.max_width, rng), rng);
    const ComplexMatrix oracle = eval_oracle(inst);
    const double scale = instance_scale(inst);
    const std::size_t m = inst.arity();

    std::vector<ComplexMatrix> paths;
    if (cls == RepClass::projective) {
      paths.push_back(eval_projective(inst));
      MoiInstance chained = inst;
      chained.integrand = embed_projective_in_haagerup(std::get<ProjectiveRep>(inst.integrand), inst.atom_counts());
      paths.push_back(eval_haagerup(chained));
      if (m == 3 || m == 4) paths.push_back(eval_haagerup_block(chained));
    } else if (cls == RepClass::haagerup) {
      paths.push_back(eval_haagerup(inst));
      if (m == 3 || m == 4) paths.push_back(eval_haagerup_block(inst));
    } else {
      paths.push_back(eval_haagerup_like(inst));
    }

    Outcome out;
    for (const auto& w : paths) out.value = std::max(out.value, relative(w, oracle, scale));
    out.ok = out.value <= cfg.tol;
    if (!out.ok) out.repro = instance_json(inst);
    return out;
  });
}

SuiteResult run_duality_suite(const CampaignConfig& cfg) {
  return run_suite("duality", cfg, [&](std::size_t i, Rng& rng) {
    const RepClass cls = i % 2 == 0 ? RepClass::haagerup_like_first : RepClass::haagerup_like_second;
    const MoiInstance inst = random_instance(random_shape(cls, like_arities(cfg), cfg.max_dim, cfg.max_width, rng), rng);
    const ComplexMatrix w = eval_haagerup_like(inst);
    const double scale = instance_scale(inst);
    Outcome out;
    for (std::size_t k = 0; k < cfg.duality_queries; ++k) {
      const ComplexMatrix q = random_gaussian(inst.dim(), inst.dim(), rng);
      const Complex direct = (w * q).trace();
      const Complex dual = duality_functional(inst, q);
      const double err = std::abs(direct - dual) / (scale * schatten_norm(q, SchattenExponent(1.0)));
      out.value = std::max(out.value, err);
    }
    out.ok = out.value <= cfg.tol;
    if (!out.ok) out.repro = instance_json(inst);
    return out;
  });
}

SuiteResult run_projective_suite(const CampaignConfig& cfg) {
  return run_suite("bound-projective", cfg, [&](std::size_t, Rng& rng) {
    const MoiInstance inst =
        random_instance(random_shape(RepClass::projective, cfg.arities, cfg.max_dim, cfg.max_width, rng), rng);
    const SchattenExponent p = pick(cfg.exponents, rng);
    const SchattenExponent q = pick(cfg.exponents, rng);
    const BoundReport rep = check_projective(inst, p, q, cfg.tol);
    Outcome out{rep.ratio, rep.holds, {}};
    if (!out.ok) out.repro = instance_json(inst, p, q);
    return out;
  });
}

SuiteResult run_haagerup_main_suite(const CampaignConfig& cfg) {
  std::vector<std::size_t> arities = chain_arities(cfg);
  if (arities.empty()) arities = {3, 4};
  return run_suite("bound-haagerup-main", cfg, [&](std::size_t, Rng& rng) {
    const MoiInstance inst =
        random_instance(random_shape(RepClass::haagerup, arities, cfg.max_dim, cfg.max_width, rng), rng);
    const SchattenExponent p = pick(cfg.exponents, rng);
    const SchattenExponent q = pick(cfg.exponents, rng);
    const BoundReport rep = check_haagerup_main(inst, p, q, cfg.tol);
    Outcome out{rep.ratio, rep.holds, {}};
    if (!out.ok) out.repro = instance_json(inst, p, q);
    return out;
  });
}

SuiteResult run_haagerup_like_suite(const CampaignConfig& cfg) {
  return run_suite("bound-haagerup-like", cfg, [&](std::size_t i, Rng& rng) {
    const RepClass cls = i % 2 == 0 ? RepClass::haagerup_like_first : RepClass::haagerup_like_second;
    const MoiInstance inst = random_instance(random_shape(cls, like_arities(cfg), cfg.max_dim, cfg.max_width, rng), rng);
    const auto pairs = haagerup_like_exponent_pairs(std::get<HaagerupLikeRep>(inst.integrand).kind);
    const auto [p, q] = pick(pairs, rng);
    const BoundReport rep = check_haagerup_like(inst, p, q, cfg.tol);
    Outcome out{rep.ratio, rep.holds, {}};
    if (!out.ok) out.repro = instance_json(inst, p, q);
    return out;
  });
}

SuiteResult run_lemma_row_suite(const CampaignConfig& cfg) {
  return run_suite("lemma-row", cfg, [&](std::size_t, Rng& rng) {
    auto dim = [&] { return std::uniform_int_distribution<Eigen::Index>(1, cfg.max_dim)(rng); };
    const auto count = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    const Eigen::Index n = dim();
    const auto blocks = random_row_blocks(count, n, rng);
    const ComplexMatrix t = random_operator(n, rng);
    const SchattenExponent p = pick(cfg.exponents, rng);
    const BoundReport rep = check_lemma_row(blocks, t, p, cfg.tol);

    Outcome out{rep.ratio, rep.holds, {}};
    if (!p.is_infinite() && p.value() == 2.0) {
      // Hilbert-Schmidt identity ||A(T)||_2^2 = trace(T* (sum A_j* A_j) T)
      ComplexMatrix gram = ComplexMatrix::Zero(n, n);
      for (const auto& a : blocks) gram += a.adjoint() * a;
      const double identity_side = (t.adjoint() * gram * t).trace().real();
      const double gap = std::abs(rep.lhs * rep.lhs - identity_side);
      out.ok = out.ok && gap <= 1e-10 * std::max(1.0, identity_side);
    }
    if (!out.ok) {
      // carry the data inside an instance cmd_eval accepts: single-atom measures, W = T
      MoiInstance carrier;
      carrier.measures.assign(2, FiniteSpectralMeasure{n, {{AtomLabel::from_real(0.0), identity(n)}}});
      carrier.operators = {t};
      carrier.integrand = ProjectiveRep{2, {{ScalarTable::constant(1, 1.0), ScalarTable::constant(1, 1.0)}}};
      out.repro = instance_json(carrier, p);
      Json bj = Json::array();
      for (const auto& a : blocks) bj.push_back(to_json(a));
      out.repro["lemma_row"] = {{"blocks", bj}, {"t", to_json(t)}, {"p", to_json(p)}};
    }
    return out;
  });
}

SuiteResult run_representation_suite(const CampaignConfig& cfg) {
  return run_suite("representation-independence", cfg, [&](std::size_t i, Rng& rng) {
    const RepClass cls = kAllClasses[i % 4];
    const bool like = cls == RepClass::haagerup_like_first || cls == RepClass::haagerup_like_second;
    const MoiInstance inst =
        random_instance(random_shape(cls, like ? like_arities(cfg) : cfg.arities, cfg.max_dim, cfg.max_width, rng), rng);
    MoiInstance other = inst;
    other.integrand = equivalent_representation(inst.integrand, rng);
    const double scale = std::max(instance_scale(inst), instance_scale(other));
    Outcome out;
    out.value = relative(evaluate(inst), evaluate(other), scale);
    out.ok = out.value <= cfg.tol;
    if (!out.ok) out.repro = instance_json(inst);
    return out;
  });
}

std::vector<SuiteResult> run_campaign(const CampaignConfig& cfg) {
  validate(cfg);
  return {run_oracle_suite(cfg),          run_duality_suite(cfg),       run_projective_suite(cfg),
          run_haagerup_main_suite(cfg),   run_haagerup_like_suite(cfg), run_lemma_row_suite(cfg),
          run_representation_suite(cfg)};
}

}  // namespace moi
