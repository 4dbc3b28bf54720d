#include <functional>

#include "moi/error.hpp"
#include "moi/integrand.hpp"
#include "test_support.hpp"

namespace moi {
namespace {

// Calls f on every atom tuple of the given counts.
void for_each_tuple(const std::vector<std::size_t>& counts, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(counts.size(), 0);
  while (true) {
    f(idx);
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == counts[i]) idx[i++] = 0;
    if (i == idx.size()) return;
  }
}

std::vector<std::size_t> random_counts(std::size_t m, Rng& rng) {
  std::vector<std::size_t> c(m);
  for (auto& x : c) x = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
  return c;
}

TEST(RepNorm, ProjectiveSingleTermIsProductOfSupNorms) {
  ProjectiveRep rep{3, {{ScalarTable{{2.0, 1.0}}, ScalarTable{{-3.0}}, ScalarTable{{Complex(0, 5), 1.0}}}}};
  EXPECT_DOUBLE_EQ(rep_norm_bound(rep), 30.0);
}

TEST(RepNorm, EmptyProjectiveIsZero) {
  ProjectiveRep rep{3, {}};
  EXPECT_EQ(rep_norm_bound(rep), 0.0);
  EXPECT_EQ(eval_pointwise(rep, std::vector<std::size_t>{0, 0, 0}), Complex{});
}

TEST(RepNorm, DeltaSystemChainHasNormOne) {
  const std::size_t n = 5;
  const CyclicModel cm = cyclic_model(n);
  HaagerupChainRep rep;
  rep.head = VectorTable(identity(5));
  rep.tail = VectorTable(identity(5));
  MatrixTable mid{5, 5, std::vector<ComplexMatrix>(n, ComplexMatrix::Zero(5, 5))};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < n; ++m) mid.values[m](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = cm.characters[j].values[m];
  }
  rep.middles.push_back(mid);
  EXPECT_NEAR(rep_norm_bound(rep), 1.0, 1e-14);
}

TEST(RepNorm, AbsolutelyHomogeneous) {
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto counts = random_counts(3, rng);
    for (RepClass cls : {RepClass::projective, RepClass::haagerup, RepClass::haagerup_like_first,
                         RepClass::haagerup_like_second}) {
      Integrand psi = random_integrand(cls, counts, 3, rng);
      const double before = rep_norm_bound(psi);
      const double t = 2.5;
      if (auto* p = std::get_if<ProjectiveRep>(&psi)) {
        // scaling one factor of every term scales the bound
        for (auto& term : p->terms) {
          for (auto& v : term[1].values) v *= t;
        }
      } else if (auto* h = std::get_if<HaagerupChainRep>(&psi)) {
        h->tail.values *= t;
      } else {
        auto& like = std::get<HaagerupLikeRep>(psi);
        if (auto* v = std::get_if<VectorTable>(&like.factors[1])) {
          v->values *= t;
        } else {
          for (auto& x : std::get<MatrixTable>(like.factors[1]).values) x *= t;
        }
      }
      EXPECT_NEAR(rep_norm_bound(psi), t * before, 1e-12 * t * before);
    }
  }
}

TEST(Pointwise, ConstantOne) {
  const ProjectiveRep one = test::constant_one({2, 3, 2});
  for_each_tuple({2, 3, 2}, [&](const auto& a) { EXPECT_EQ(eval_pointwise(one, a), Complex(1.0)); });
}

TEST(Pointwise, WidthOneChainIsProduct) {
  HaagerupChainRep rep;
  ComplexMatrix a(2, 1), c(2, 1);
  a << Complex(1, 1), 2;
  c << 3, Complex(0, -1);
  rep.head = VectorTable(a);
  rep.middles.push_back(MatrixTable{1, 1, {ComplexMatrix::Constant(1, 1, 5.0), ComplexMatrix::Constant(1, 1, -1.0)}});
  rep.tail = VectorTable(c);
  for_each_tuple({2, 2, 2}, [&](const auto& x) {
    const Complex expect = a(x[0], 0) * rep.middles[0].values[x[1]](0, 0) * c(x[2], 0);
    EXPECT_NEAR(std::abs(eval_pointwise(rep, x) - expect), 0.0, 1e-14);
  });
}

TEST(Pointwise, ChainMatchesReversedResummation) {
  for (int seed = 0; seed < 30; ++seed) {
    Rng rng(100 + seed);
    const std::size_t m = 2 + static_cast<std::size_t>(seed % 3);
    const auto counts = random_counts(m, rng);
    const auto rep = std::get<HaagerupChainRep>(random_integrand(RepClass::haagerup, counts, 3, rng));
    for_each_tuple(counts, [&](const auto& x) {
      ComplexVector right = rep.tail.values.row(static_cast<Eigen::Index>(x.back())).transpose();
      for (std::size_t i = rep.middles.size(); i-- > 0;) right = rep.middles[i].values[x[i + 1]] * right;
      const Complex reversed = (rep.head.values.row(static_cast<Eigen::Index>(x[0])) * right)(0, 0);
      EXPECT_NEAR(std::abs(eval_pointwise(rep, x) - reversed), 0.0, 1e-12);
    });
  }
}

TEST(Pointwise, ChainBoundedByRepNorm) {
  for (int seed = 0; seed < 30; ++seed) {
    Rng rng(200 + seed);
    const std::size_t m = 2 + static_cast<std::size_t>(seed % 3);
    const auto counts = random_counts(m, rng);
    const Integrand psi = random_integrand(RepClass::haagerup, counts, 3, rng);
    const double bound = rep_norm_bound(psi);
    for_each_tuple(counts, [&](const auto& x) { EXPECT_LE(std::abs(eval_pointwise(psi, x)), bound + 1e-10); });
  }
}

TEST(Pointwise, ChainMultilinearInComponents) {
  Rng rng(9);
  const std::vector<std::size_t> counts = {2, 3, 2};
  auto a = std::get<HaagerupChainRep>(random_integrand(RepClass::haagerup, counts, 2, rng));
  auto b = a;
  b.middles[0] = std::get<HaagerupChainRep>(random_integrand(RepClass::haagerup, counts, 2, rng)).middles[0];
  b.middles[0].rows = a.middles[0].rows;
  b.middles[0].cols = a.middles[0].cols;
  for (auto& v : b.middles[0].values) v = random_gaussian(a.middles[0].rows, a.middles[0].cols, rng);
  auto sum = a;
  const Complex s(0.5, 2.0);
  for (std::size_t i = 0; i < sum.middles[0].values.size(); ++i) {
    sum.middles[0].values[i] = a.middles[0].values[i] + s * b.middles[0].values[i];
  }
  for_each_tuple(counts, [&](const auto& x) {
    const Complex expect = eval_pointwise(a, x) + s * eval_pointwise(b, x);
    EXPECT_NEAR(std::abs(eval_pointwise(sum, x) - expect), 0.0, 1e-12);
  });
}

TEST(Pointwise, HaagerupLikeMatchesDefiningSums) {
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(300 + seed);
    for (std::size_t m : {3u, 4u}) {
      const auto counts = random_counts(m, rng);
      for (RepClass cls : {RepClass::haagerup_like_first, RepClass::haagerup_like_second}) {
        const auto rep = std::get<HaagerupLikeRep>(random_integrand(cls, counts, 3, rng));
        const bool first = cls == RepClass::haagerup_like_first;
        for_each_tuple(counts, [&](const auto& x) {
          Complex sum{};
          auto v = [&](std::size_t i, Eigen::Index j) { return rep.vec(i).values(static_cast<Eigen::Index>(x[i]), j); };
          auto mt = [&](std::size_t i, Eigen::Index j, Eigen::Index k) { return rep.mat(i).values[x[i]](j, k); };
          if (m == 3 && first) {
            for (Eigen::Index j = 0; j < rep.vec(0).width(); ++j)
              for (Eigen::Index k = 0; k < rep.vec(1).width(); ++k) sum += v(0, j) * v(1, k) * mt(2, j, k);
          } else if (m == 3) {
            for (Eigen::Index j = 0; j < rep.vec(1).width(); ++j)
              for (Eigen::Index k = 0; k < rep.vec(2).width(); ++k) sum += mt(0, j, k) * v(1, j) * v(2, k);
          } else if (first) {
            for (Eigen::Index j = 0; j < rep.vec(1).width(); ++j)
              for (Eigen::Index k = 0; k < rep.mat(2).cols; ++k)
                for (Eigen::Index l = 0; l < rep.vec(0).width(); ++l)
                  sum += v(0, l) * v(1, j) * mt(2, j, k) * mt(3, k, l);
          } else {
            for (Eigen::Index j = 0; j < rep.vec(3).width(); ++j)
              for (Eigen::Index k = 0; k < rep.mat(0).cols; ++k)
                for (Eigen::Index l = 0; l < rep.vec(2).width(); ++l)
                  sum += mt(0, j, k) * mt(1, k, l) * v(2, l) * v(3, j);
          }
          EXPECT_NEAR(std::abs(eval_pointwise(rep, x) - sum), 0.0, 1e-12);
        });
      }
    }
  }
}

TEST(Pointwise, RejectsOutOfRangeAtoms) {
  const ProjectiveRep one = test::constant_one({2, 2});
  EXPECT_THROW(eval_pointwise(one, std::vector<std::size_t>{0, 2}), InvalidInput);
  EXPECT_THROW(eval_pointwise(one, std::vector<std::size_t>{0}), InvalidInput);
}

TEST(WellFormed, ChainWidthMismatch) {
  HaagerupChainRep rep = test::constant_chain({2, 2, 2});
  rep.tail = VectorTable(ComplexMatrix::Ones(2, 2));
  EXPECT_THROW(check_well_formed(rep), InvalidInput);
  EXPECT_THROW(rep_norm_bound(rep), InvalidInput);
}

TEST(WellFormed, AtomCountMismatch) {
  const HaagerupChainRep rep = test::constant_chain({2, 3, 2});
  const std::vector<std::size_t> wrong = {2, 2, 2};
  EXPECT_THROW(check_well_formed(rep, wrong), InvalidInput);
  const std::vector<std::size_t> right = {2, 3, 2};
  EXPECT_NO_THROW(check_well_formed(rep, right));
}

TEST(WellFormed, HaagerupLikeWidths) {
  Rng rng(3);
  auto rep = std::get<HaagerupLikeRep>(random_integrand(RepClass::haagerup_like_first, {2, 2, 2}, 3, rng));
  auto& g = std::get<MatrixTable>(rep.factors[2]);
  for (auto& x : g.values) x = ComplexMatrix::Ones(g.rows + 1, g.cols);
  g.rows += 1;
  EXPECT_THROW(check_well_formed(rep), InvalidInput);
}

TEST(Embedding, SingleTermIsWidthOneChain) {
  ProjectiveRep rep{3, {{ScalarTable{{2.0, 1.0}}, ScalarTable{{-3.0, Complex(0, 1)}}, ScalarTable{{4.0}}}}};
  const HaagerupChainRep chain = embed_projective_in_haagerup(rep);
  EXPECT_EQ(chain.head.width(), 1);
  EXPECT_EQ(chain.middles.size(), 1u);
  for_each_tuple({2, 2, 1}, [&](const auto& x) {
    EXPECT_NEAR(std::abs(eval_pointwise(chain, x) - eval_pointwise(rep, x)), 0.0, 1e-12);
  });
}

TEST(Embedding, ExhaustivePointwiseAndNormContract) {
  for (int seed = 0; seed < 40; ++seed) {
    Rng rng(400 + seed);
    const std::size_t m = 2 + static_cast<std::size_t>(seed % 3);
    std::vector<std::size_t> counts(m);
    for (auto& c : counts) c = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const auto rep = std::get<ProjectiveRep>(random_integrand(RepClass::projective, counts, 3, rng));
    const HaagerupChainRep chain = embed_projective_in_haagerup(rep, counts);
    EXPECT_EQ(chain.head.width(), static_cast<Eigen::Index>(rep.terms.size()));
    EXPECT_LE(rep_norm_bound(chain), rep_norm_bound(rep) * (1 + 1e-12));
    for_each_tuple(counts, [&](const auto& x) {
      EXPECT_NEAR(std::abs(eval_pointwise(chain, x) - eval_pointwise(rep, x)), 0.0, 1e-12);
    });
  }
}

TEST(Embedding, ZeroTermsGiveWidthZeroChain) {
  const std::vector<std::size_t> counts = {2, 3, 2};
  const HaagerupChainRep chain = embed_projective_in_haagerup(ProjectiveRep{3, {}}, counts);
  EXPECT_EQ(chain.head.width(), 0);
  EXPECT_EQ(rep_norm_bound(chain), 0.0);
  for_each_tuple(counts, [&](const auto& x) { EXPECT_EQ(eval_pointwise(chain, x), Complex{}); });
}

TEST(Rearrangements, CycledChainPermutesVariables) {
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(500 + seed);
    for (std::size_t m : {3u, 4u}) {
      const auto counts = random_counts(m, rng);
      for (RepClass cls : {RepClass::haagerup_like_first, RepClass::haagerup_like_second}) {
        const auto rep = std::get<HaagerupLikeRep>(random_integrand(cls, counts, 3, rng));
        const CycledChain cyc = cycled_chain(rep);
        for_each_tuple(counts, [&](const auto& x) {
          std::vector<std::size_t> permuted(m);
          for (std::size_t i = 0; i < m; ++i) permuted[i] = x[cyc.measure_order[i]];
          EXPECT_NEAR(std::abs(eval_pointwise(cyc.chain, permuted) - eval_pointwise(rep, x)), 0.0, 1e-12);
        });
      }
    }
  }
}

TEST(Rearrangements, AdjointReversedConjugatesAndSwapsKind) {
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(600 + seed);
    for (std::size_t m : {3u, 4u}) {
      const auto counts = random_counts(m, rng);
      std::vector<std::size_t> reversed_counts(counts.rbegin(), counts.rend());
      for (RepClass cls : {RepClass::haagerup_like_first, RepClass::haagerup_like_second}) {
        const auto rep = std::get<HaagerupLikeRep>(random_integrand(cls, counts, 3, rng));
        const HaagerupLikeRep adj = adjoint_reversed(rep);
        EXPECT_NE(adj.kind, rep.kind);
        EXPECT_NO_THROW(check_well_formed(adj, reversed_counts));
        EXPECT_NEAR(rep_norm_bound(adj), rep_norm_bound(rep), 1e-12 * rep_norm_bound(rep));
        for_each_tuple(counts, [&](const auto& x) {
          std::vector<std::size_t> rx(x.rbegin(), x.rend());
          EXPECT_NEAR(std::abs(eval_pointwise(adj, rx) - std::conj(eval_pointwise(rep, x))), 0.0, 1e-12);
        });
      }
      const auto chain = std::get<HaagerupChainRep>(random_integrand(RepClass::haagerup, counts, 3, rng));
      const HaagerupChainRep adj = adjoint_reversed(chain);
      for_each_tuple(counts, [&](const auto& x) {
        std::vector<std::size_t> rx(x.rbegin(), x.rend());
        EXPECT_NEAR(std::abs(eval_pointwise(adj, rx) - std::conj(eval_pointwise(chain, x))), 0.0, 1e-12);
      });
    }
  }
}

TEST(Integrand, ClassNamesAndArity) {
  const Integrand p = test::constant_one({1, 1, 1});
  const Integrand h = test::constant_chain({1, 1, 1, 1});
  EXPECT_EQ(arity(p), 3u);
  EXPECT_EQ(arity(h), 4u);
  EXPECT_NE(class_name(p), class_name(h));
}

}  // namespace
}  // namespace moi
