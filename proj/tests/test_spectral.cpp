#include "moi/error.hpp"
#include "test_support.hpp"

namespace moi {
namespace {

using test::diag;
using test::matrices_near;

TEST(ValidateMeasure, TrivialMeasurePasses) {
  const MeasureValidation v = validate_spectral_measure(test::trivial_measure(3));
  EXPECT_TRUE(v.pass);
  EXPECT_LE(v.completeness_residual, 1e-14);
}

TEST(ValidateMeasure, FourierProjectionsPass) {
  for (std::size_t n : {1u, 2u, 5u, 8u}) {
    const CyclicModel cm = cyclic_model(n);
    EXPECT_TRUE(validate_spectral_measure(cm.fourier).pass);
    EXPECT_TRUE(validate_spectral_measure(cm.position).pass);
  }
}

TEST(ValidateMeasure, RepeatedProjectionFailsOrthogonality) {
  FiniteSpectralMeasure e;
  e.dim = 2;
  const ComplexMatrix p = diag({1, 0});
  e.atoms = {{AtomLabel::from_real(0), p}, {AtomLabel::from_real(1), p}};
  const MeasureValidation v = validate_spectral_measure(e);
  EXPECT_FALSE(v.pass);
  EXPECT_GT(v.orthogonality_residual, 0.5);
  EXPECT_THROW(require_valid(e), InvalidInput);
}

TEST(ValidateMeasure, DuplicatePointsAndBadShapesFail) {
  FiniteSpectralMeasure e;
  e.dim = 2;
  e.atoms = {{AtomLabel::from_real(0), diag({1, 0})}, {AtomLabel::from_real(0), diag({0, 1})}};
  EXPECT_FALSE(validate_spectral_measure(e).points_distinct);
  e.atoms[1] = {AtomLabel::from_real(1), identity(3)};
  EXPECT_FALSE(validate_spectral_measure(e).shapes_ok);
}

TEST(ValidateMeasure, IncompleteAndNonIdempotentFail) {
  FiniteSpectralMeasure e;
  e.dim = 2;
  e.atoms = {{AtomLabel::from_real(0), diag({1, 0})}};
  EXPECT_FALSE(validate_spectral_measure(e).pass);
  e.atoms = {{AtomLabel::from_real(0), diag({2, 0})}, {AtomLabel::from_real(1), diag({0, 1})}};
  const MeasureValidation v = validate_spectral_measure(e);
  EXPECT_FALSE(v.pass);
  EXPECT_GT(v.idempotency_residual, 1.0);
}

TEST(IntegrateScalar, Examples) {
  const FiniteSpectralMeasure e = test::standard_measure(3);
  EXPECT_TRUE(matrices_near(integrate_scalar(test::ones(3), e), identity(3), 1e-15));
  ScalarTable ind{{0.0, 1.0, 0.0}};
  EXPECT_TRUE(matrices_near(integrate_scalar(ind, e), e.projection(1), 1e-15));

  const FiniteSpectralMeasure d = from_hermitian(diag({1, 2, 3}));
  ScalarTable sq;
  for (const auto& a : d.atoms) sq.values.push_back(a.point.value() * a.point.value());
  EXPECT_TRUE(matrices_near(integrate_scalar(sq, d), diag({1, 4, 9}), 1e-12));
}

TEST(IntegrateScalar, AtomCountMismatch) {
  EXPECT_THROW(integrate_scalar(test::ones(2), test::standard_measure(3)), InvalidInput);
}

TEST(IntegrateScalar, LinearMultiplicativeAndCommuting) {
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const FiniteSpectralMeasure e = random_measure(5, 3, rng);
    const ComplexMatrix f = random_gaussian(3, 1, rng);
    const ComplexMatrix g = random_gaussian(3, 1, rng);
    ScalarTable phi, psi, prod, lin;
    const Complex a(0.3, -1.2);
    for (int i = 0; i < 3; ++i) {
      phi.values.push_back(f(i, 0));
      psi.values.push_back(g(i, 0));
      prod.values.push_back(f(i, 0) * g(i, 0));
      lin.values.push_back(a * f(i, 0) + g(i, 0));
    }
    const ComplexMatrix x = integrate_scalar(phi, e);
    const ComplexMatrix y = integrate_scalar(psi, e);
    EXPECT_TRUE(matrices_near(integrate_scalar(prod, e), x * y, 1e-10));
    EXPECT_TRUE(matrices_near(integrate_scalar(lin, e), a * x + y, 1e-10));
    for (const auto& atom : e.atoms) EXPECT_TRUE(matrices_near(x * atom.projection, atom.projection * x, 1e-10));
    EXPECT_TRUE(matrices_near(x * x.adjoint(), x.adjoint() * x, 1e-10));
  }
}

TEST(FromHermitian, MergesRepeatedEigenvalues) {
  const FiniteSpectralMeasure e = from_hermitian(diag({1, 1, 2}), 1e-8);
  ASSERT_EQ(e.atom_count(), 2u);
  EXPECT_NEAR(e.projection(0).trace().real(), 2.0, 1e-12);
  EXPECT_NEAR(e.projection(1).trace().real(), 1.0, 1e-12);

  const FiniteSpectralMeasure f = from_hermitian(diag({1, 1 + 1e-12}), 1e-8);
  ASSERT_EQ(f.atom_count(), 1u);
  EXPECT_NEAR(f.projection(0).trace().real(), 2.0, 1e-12);
}

TEST(FromHermitian, RandomReconstruction) {
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(50 + seed);
    const ComplexMatrix g = random_gaussian(6, 6, rng);
    const ComplexMatrix m = g + g.adjoint();
    const FiniteSpectralMeasure e = from_hermitian(m, 1e-8);
    EXPECT_TRUE(validate_spectral_measure(e).pass);
    EXPECT_LE(operator_norm(reconstruct_operator(e) - m), 1e-9 * operator_norm(m));
  }
}

TEST(FromHermitian, RoundTripOnValidatedMeasures) {
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(80 + seed);
    const FiniteSpectralMeasure e = random_measure(5, 3, rng);
    const FiniteSpectralMeasure back = from_hermitian(reconstruct_operator(e), 1e-8);
    ASSERT_EQ(back.atom_count(), e.atom_count());
    // atoms come back sorted by point; random_measure points are ascending too
    for (std::size_t i = 0; i < e.atom_count(); ++i) {
      EXPECT_TRUE(matrices_near(back.projection(i), e.projection(i), 1e-9));
      EXPECT_NEAR(back.atoms[i].point.real, e.atoms[i].point.real, 1e-9);
    }
  }
}

TEST(FromHermitian, RejectsNonHermitian) {
  ComplexMatrix m = diag({1, 2});
  m(1, 0) = 1.0;
  EXPECT_THROW(from_hermitian(m), InvalidInput);
}

TEST(CyclicModel, TrivialOrderOne) {
  const CyclicModel cm = cyclic_model(1);
  EXPECT_EQ(cm.fourier.atom_count(), 1u);
  EXPECT_EQ(cm.position.atom_count(), 1u);
  EXPECT_NEAR(std::abs(cm.characters[0].values[0] - 1.0), 0.0, 1e-15);
  EXPECT_TRUE(matrices_near(integrate_scalar(cm.characters[0], cm.position), identity(1), 1e-15));
  EXPECT_THROW(cyclic_model(0), InvalidInput);
}

TEST(CyclicModel, CharacterOneShiftsE0ToE1) {
  const CyclicModel cm = cyclic_model(4);
  const ComplexMatrix b1 = integrate_scalar(cm.characters[1], cm.position);
  EXPECT_TRUE(matrices_near(b1 * basis_vector(4, 0), basis_vector(4, 1), 1e-12));
}

TEST(CyclicModel, GroupLawAndUnitarity) {
  for (std::size_t n : {3u, 5u, 8u}) {
    const CyclicModel cm = cyclic_model(n);
    const auto N = static_cast<std::int64_t>(n);
    for (std::int64_t j = 0; j < N; ++j) {
      const ComplexMatrix bj = integrate_scalar(cm.characters[static_cast<std::size_t>(j)], cm.position);
      EXPECT_NEAR(operator_norm(bj), 1.0, 1e-12);
      EXPECT_TRUE(matrices_near(bj.adjoint() * bj, identity(N), 1e-12));
      for (std::int64_t k = 0; k < N; ++k) {
        EXPECT_TRUE(matrices_near(bj * basis_vector(N, k), basis_vector(N, (j + k) % N), 1e-12));
        const ComplexMatrix bk = integrate_scalar(cm.characters[static_cast<std::size_t>(k)], cm.position);
        const ComplexMatrix bjk = integrate_scalar(character_table(n, j + k), cm.position);
        EXPECT_TRUE(matrices_near(bj * bk, bjk, 1e-12));
      }
    }
    // negative characters invert
    const ComplexMatrix bm1 = integrate_scalar(character_table(n, -1), cm.position);
    EXPECT_TRUE(matrices_near(bm1 * basis_vector(N, 1), basis_vector(N, 0), 1e-12));
  }
}

TEST(CyclicModel, UnimodularDiagonalTableHasUnitSupNorm) {
  const std::size_t n = 6;
  const CyclicModel cm = cyclic_model(n);
  MatrixTable t;
  t.rows = t.cols = static_cast<Eigen::Index>(n);
  t.values.assign(n, ComplexMatrix::Zero(t.rows, t.cols));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < n; ++m) t.values[m](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = cm.characters[j].values[m];
  }
  EXPECT_NEAR(t.sup_norm(), 1.0, 1e-14);
}

TEST(Tables, SupNorms) {
  ScalarTable s{{Complex(3, 4), 1.0}};
  EXPECT_DOUBLE_EQ(s.sup_norm(), 5.0);
  ComplexMatrix v(2, 2);
  v << 3, 4, 1, 0;
  EXPECT_DOUBLE_EQ(VectorTable(v).sup_norm(), 5.0);
  MatrixTable m{2, 2, {diag({1, 2}), diag({3, -1})}};
  EXPECT_DOUBLE_EQ(m.sup_norm(), 3.0);
  EXPECT_EQ(m.entry(0, 0).values[1], Complex(3.0));
  MatrixTable bad{2, 2, {diag({1, 2, 3})}};
  EXPECT_THROW(bad.check_shapes(), InvalidInput);
}

}  // namespace
}  // namespace moi
