#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "stbc/numerics.hpp"

using namespace stbc;
using stbc::testing::random_hpd;
using stbc::testing::random_matrix;

namespace {
const Complex J{0.0, 1.0};
}

TEST(Matmul, IdentityIsNeutral) {
  const CMatrix a{{1.0, 2.0 + J}, {-3.0 * J, 4.0}};
  EXPECT_EQ(matmul(CMatrix::identity(2), a), a);
}

TEST(Matmul, DiagonalInvolution) {
  const CMatrix d{{1.0, 0.0}, {0.0, -1.0}};
  EXPECT_EQ(matmul(d, d), CMatrix::identity(2));
}

TEST(Matmul, CyclicShiftSquaresToDelta) {
  const Complex delta = std::polar(1.0, std::sqrt(5.0));
  const CMatrix p{{0.0, delta}, {1.0, 0.0}};
  const CMatrix expected{{delta, 0.0}, {0.0, delta}};
  EXPECT_EQ(matmul(p, p), expected);
}

TEST(Matmul, DimensionMismatchThrows) {
  EXPECT_THROW(matmul(CMatrix(2, 3), CMatrix(2, 3)), DimensionError);
}

TEST(Matmul, AssociativityProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t p = 1 + rng() % 6, q = 1 + rng() % 6, r = 1 + rng() % 6, s = 1 + rng() % 6;
    const CMatrix a = random_matrix(rng, p, q), b = random_matrix(rng, q, r),
                  c = random_matrix(rng, r, s);
    const CMatrix left = matmul(matmul(a, b), c);
    const CMatrix right = matmul(a, matmul(b, c));
    EXPECT_LE(frobenius_norm(left - right), 1e-10 * frobenius_norm(left));
  }
}

TEST(Hermitian, ConjugatesScalar) {
  const CMatrix a{{J}};
  EXPECT_EQ(hermitian(a)(0, 0), -J);
}

TEST(Hermitian, IsAnInvolution) {
  std::mt19937_64 rng(3);
  const CMatrix a = random_matrix(rng, 3, 5);
  EXPECT_EQ(hermitian(hermitian(a)), a);
  EXPECT_EQ(hermitian(a).rows(), 5u);
}

TEST(Hermitian, UnitaryGramIsIdentity) {
  const double s = 1.0 / std::sqrt(2.0);
  const CMatrix u{{s, s * J}, {s * J, s}};
  EXPECT_LE(frobenius_norm(matmul(hermitian(u), u) - CMatrix::identity(2)), 1e-12);
}

TEST(Trace, Basics) {
  EXPECT_EQ(trace(CMatrix::identity(4)), Complex(4.0));
  const CMatrix nil{{0.0, 1.0, 2.0}, {0.0, 0.0, 3.0}, {0.0, 0.0, 0.0}};
  EXPECT_EQ(trace(nil), Complex(0.0));
  EXPECT_THROW(trace(CMatrix(2, 3)), DimensionError);
}

TEST(Trace, CyclicProperty) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const CMatrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
    EXPECT_LE(std::abs(trace(matmul(a, b)) - trace(matmul(b, a))), 1e-10 * (1.0 + std::abs(trace(matmul(a, b)))));
  }
}

TEST(Trace, InnerMatchesExplicitProduct) {
  std::mt19937_64 rng(6);
  const CMatrix a = random_matrix(rng, 4, 4), b = random_matrix(rng, 4, 4);
  EXPECT_LE(std::abs(trace_inner(a, b) - trace(matmul(hermitian(a), b))), 1e-12);
}

TEST(Vec, StacksColumns) {
  const CMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const CMatrix v = vec(a);
  ASSERT_EQ(v.rows(), 4u);
  ASSERT_EQ(v.cols(), 1u);
  EXPECT_EQ(v(0, 0), Complex(1.0));
  EXPECT_EQ(v(1, 0), Complex(3.0));
  EXPECT_EQ(v(2, 0), Complex(2.0));
  EXPECT_EQ(v(3, 0), Complex(4.0));

  const CMatrix vi = vec(CMatrix::identity(2));
  EXPECT_EQ(vi, (CMatrix{{1.0}, {0.0}, {0.0}, {1.0}}));
}

TEST(Vec, IsometryAndLinearity) {
  std::mt19937_64 rng(8);
  const CMatrix a = random_matrix(rng, 3, 4), b = random_matrix(rng, 3, 4);
  EXPECT_NEAR(frobenius_norm(vec(a)), frobenius_norm(a), 1e-12);
  const Complex x{0.3, -1.2}, y{2.0, 0.5};
  EXPECT_LE(frobenius_norm(vec(x * a + y * b) - (x * vec(a) + y * vec(b))), 1e-12);
}

TEST(SolveHermitianPositive, TrivialSystems) {
  const CMatrix b{{1.0, J}, {2.0, -3.0}};
  EXPECT_EQ(solve_hermitian_positive(CMatrix::identity(2), b), b);
  const CMatrix half = solve_hermitian_positive(2.0 * CMatrix::identity(3), CMatrix::identity(3));
  EXPECT_LE(frobenius_norm(half - 0.5 * CMatrix::identity(3)), 1e-15);
}

TEST(SolveHermitianPositive, ResidualPropertyUpTo16) {
  std::mt19937_64 rng(17);
  for (std::size_t n = 1; n <= 16; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const CMatrix a = random_hpd(rng, n);
      const CMatrix b = random_matrix(rng, n, 1 + rng() % 4);
      const CMatrix x = solve_hermitian_positive(a, b);
      EXPECT_LE(frobenius_norm(matmul(a, x) - b), 1e-10 * frobenius_norm(b)) << "n=" << n;
      EXPECT_TRUE(x.all_finite());
    }
  }
}

TEST(SolveHermitianPositive, AgreesWithGaussJordan) {
  std::mt19937_64 rng(21);
  const CMatrix a = random_hpd(rng, 6);
  const CMatrix b = random_matrix(rng, 6, 3);
  EXPECT_LE(stbc::testing::max_abs_diff(solve_hermitian_positive(a, b),
                                        stbc::testing::gauss_jordan_solve(a, b)),
            1e-10);
}

TEST(SolveHermitianPositive, RejectsBadInput) {
  EXPECT_THROW(solve_hermitian_positive(CMatrix::zeros(2, 2), CMatrix::identity(2)),
               NotPositiveDefiniteError);
  const CMatrix indefinite{{1.0, 0.0}, {0.0, -1.0}};
  EXPECT_THROW(solve_hermitian_positive(indefinite, CMatrix::identity(2)), NotPositiveDefiniteError);
  const CMatrix non_hermitian{{2.0, 1.0}, {0.0, 2.0}};
  EXPECT_THROW(solve_hermitian_positive(non_hermitian, CMatrix::identity(2)),
               NotPositiveDefiniteError);
  EXPECT_THROW(solve_hermitian_positive(CMatrix::identity(2), CMatrix(3, 1)), DimensionError);
}

TEST(Determinant, MatchesLeibnizExpansion) {
  std::mt19937_64 rng(4);
  for (std::size_t n = 1; n <= 6; ++n) {
    const CMatrix a = random_matrix(rng, n, n);
    const Complex expected = stbc::testing::leibniz_determinant(a);
    EXPECT_LE(std::abs(determinant(a) - expected), 1e-10 * (1.0 + std::abs(expected)));
  }
}

TEST(ScaledUnitary, Identity) {
  const auto r = is_scaled_unitary(CMatrix::identity(3), 1.0, 1e-12);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.residual, 0.0);
}

TEST(ScaledUnitary, GoldenFirstWeightFails) {
  // (1/sqrt5) diag(alpha, alpha_bar) has squared moduli (0.2764, 0.7236).
  const double s5 = std::sqrt(5.0);
  const double theta = (1.0 + s5) / 2.0, theta_bar = (1.0 - s5) / 2.0;
  const CMatrix a0 = (1.0 / s5) * CMatrix{{Complex(1.0, 1.0 - theta), 0.0},
                                           {0.0, Complex(1.0, 1.0 - theta_bar)}};
  const auto r = is_scaled_unitary(a0, 0.5, 1e-9);
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.residual, std::sqrt(10.0) / 10.0, 1e-12);
}

TEST(ScaledUnitary, NonSquareNeverPasses) {
  EXPECT_FALSE(is_scaled_unitary(CMatrix(2, 3), 1.0, 1.0).passed);
}

TEST(CMatrix, ConstructionChecks) {
  EXPECT_THROW(CMatrix(2, 2, std::vector<Complex>(3)), DimensionError);
  EXPECT_THROW((CMatrix{{1.0, 2.0}, {3.0}}), DimensionError);
  EXPECT_THROW(CMatrix(2, 2) + CMatrix(2, 3), DimensionError);
  CMatrix nan(1, 1);
  nan(0, 0) = std::nan("");
  EXPECT_FALSE(nan.all_finite());
}
