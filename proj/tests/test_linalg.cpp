#include <gtest/gtest.h>

#include <random>

#include "pcsq/linalg.hpp"
#include "pcsq/pair_coherent.hpp"
#include "pcsq/symplectic.hpp"
#include "test_util.hpp"

using namespace pcsq;

TEST(MatMul, IdentityTimesIdentity) {
  EXPECT_EQ(mat_mul(Mat4::identity(), Mat4::identity()), Mat4::identity());
}

TEST(MatMul, BetaSquaredIsMinusIdentity) {
  const Mat4 b = beta_form();
  EXPECT_EQ(mat_mul(b, b), -Mat4::identity());
}

TEST(MatMul, MatchesExplicitSumOnSeededCase) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double ra[4][4], rb[4][4];
  Mat4 a, b;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      a(i, j) = ra[i][j] = u(rng);
      b(i, j) = rb[i][j] = u(rng);
    }
  const Mat4 c = mat_mul(a, b);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double expect =
          ra[i][0] * rb[0][j] + ra[i][1] * rb[1][j] + ra[i][2] * rb[2][j] + ra[i][3] * rb[3][j];
      EXPECT_NEAR(c(i, j), expect, 1e-14);
    }
}

TEST(Determinant, KnownValues) {
  EXPECT_DOUBLE_EQ(determinant(Mat4::diagonal({1, 2, 3, 4})), 24.0);
  EXPECT_NEAR(determinant(beta_form()), 1.0, 1e-15);
  Mat4 swap{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  EXPECT_NEAR(determinant(swap), -1.0, 1e-15);
}

TEST(SymEigen, AlreadyDiagonal) {
  const auto s = sym_eigen(Mat4::diagonal({1, 2, 3, 4}));
  EXPECT_EQ(s.eigenvalues, (std::array<double, 4>{1, 2, 3, 4}));
  EXPECT_EQ(s.sweeps, 0);
}

TEST(SymEigen, FockStateVarianceSortedAscending) {
  const auto s = sym_eigen(Mat4::diagonal({2.5, 0.5, 2.5, 0.5}));
  EXPECT_EQ(s.eigenvalues, (std::array<double, 4>{0.5, 0.5, 2.5, 2.5}));
  // ties keep original index order: columns e2, e4, e1, e3
  EXPECT_EQ(s.eigenvectors(1, 0), 1.0);
  EXPECT_EQ(s.eigenvectors(3, 1), 1.0);
  EXPECT_EQ(s.eigenvectors(0, 2), 1.0);
  EXPECT_EQ(s.eigenvectors(2, 3), 1.0);
}

TEST(SymEigen, PairCoherentQ1Zeta1) {
  // Frozen from the Bessel-ratio form N2 = |z| I_{q+1}(2|z|) / I_q(2|z|)
  // evaluated at 30 digits, independently of the series code.
  const double e_down = 0.315093437972416910;
  const double e_up = 2.551161415472206607;
  const auto v = variance_matrix({{1.0, 0.0}, 1});
  const auto s = sym_eigen(v.mat);
  EXPECT_NEAR(s.eigenvalues[0], e_down, 1e-12);
  EXPECT_NEAR(s.eigenvalues[1], e_down, 1e-12);
  EXPECT_NEAR(s.eigenvalues[2], e_up, 1e-12);
  EXPECT_NEAR(s.eigenvalues[3], e_up, 1e-12);
}

TEST(SymEigen, RejectsAsymmetric) {
  Mat4 a = Mat4::identity();
  a(0, 1) = 1e-6;
  EXPECT_THROW(sym_eigen(a), NotSymmetric);
  EXPECT_NO_THROW(sym_eigen(a, 1e-5));
}

TEST(SymEigen, SweepBudgetExhausted) {
  Mat4 a = Mat4::identity();
  a(0, 1) = a(1, 0) = 0.5;
  JacobiOptions opt;
  opt.max_sweeps = 0;
  EXPECT_THROW(sym_eigen(a, opt), NoConvergence);
}

TEST(SymEigen, Deterministic) {
  std::mt19937_64 rng(7);
  const Mat4 a = testutil::random_symmetric(rng);
  const auto s1 = sym_eigen(a);
  const auto s2 = sym_eigen(a);
  EXPECT_EQ(s1.eigenvalues, s2.eigenvalues);
  EXPECT_EQ(s1.eigenvectors, s2.eigenvectors);
}

TEST(SymEigenProperty, OrthonormalReconstructingAndTracePreserving) {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 300; ++trial) {
    const Mat4 a = testutil::random_symmetric(rng, trial % 3 == 0 ? 50.0 : 3.0);
    const auto s = sym_eigen(a);
    const Mat4& m = s.eigenvectors;
    EXPECT_LE(max_abs(m.transpose() * m - Mat4::identity()), 1e-12);
    EXPECT_LE(max_abs(m * Mat4::diagonal(s.eigenvalues) * m.transpose() - a), 1e-10 * std::max(1.0, max_abs(a)));
    double sum = 0.0;
    for (double e : s.eigenvalues) sum += e;
    EXPECT_NEAR(sum, a.trace(), 1e-10 * std::max(1.0, max_abs(a)));
    EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
  }
}

TEST(SymEigenProperty, SpectrumInvariantUnderRotations) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ang(-3.2, 3.2);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat4 a = testutil::random_symmetric(rng);
    const auto base = sym_eigen(a).eigenvalues;
    for (const Mat4& r : {rotation_r1(ang(rng)).mat, rotation_r2(ang(rng)).mat}) {
      const auto rotated = sym_eigen(r * a * r.transpose()).eigenvalues;
      for (int k = 0; k < 4; ++k) EXPECT_NEAR(rotated[k], base[k], 1e-9);
    }
  }
}

TEST(SymEigen, EightByEightEmbedding) {
  std::mt19937_64 rng(5);
  const Matrix<8> a = testutil::random_symmetric<8>(rng);
  const auto s = sym_eigen(a);
  EXPECT_LE(max_abs(s.eigenvectors * Matrix<8>::diagonal(s.eigenvalues) * s.eigenvectors.transpose() - a),
            1e-10);
}
