#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "stbc/constructions.hpp"
#include "stbc/optimality.hpp"

using namespace stbc;
using stbc::testing::max_abs_diff;
using stbc::testing::power;

namespace {

const Complex J{0.0, 1.0};

Complex random_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.14159, 3.14159);
  return std::polar(1.0, u(rng));
}

}  // namespace

TEST(PrincipalRoot, Branch) {
  EXPECT_LE(std::abs(principal_root(std::polar(1.0, 1.0), 2) - std::polar(1.0, 0.5)), 1e-15);
  EXPECT_LE(std::abs(principal_root(Complex(-1.0, 0.0), 2) - J), 1e-15);
  EXPECT_LE(std::abs(principal_root(Complex(8.0, 0.0), 3) - 2.0), 1e-14);
}

TEST(CyclicSpec, OrderTwoExample) {
  const CyclicParams p = default_transcendentals(2);
  const AlgebraSpec spec = cyclic_spec(p);
  EXPECT_EQ(spec.group_table, SquareTable<std::size_t>(2, {0, 1, 1, 0}));
  EXPECT_EQ(spec.cocycle(1, 1), p.delta);
  EXPECT_EQ(spec.cocycle(0, 1), Complex(1.0));
  EXPECT_EQ(spec.basis_embeddings(0, 0), Complex(1.0));
  EXPECT_LE(std::abs(spec.basis_embeddings(0, 1) - std::polar(1.0, 0.5)), 1e-15);
  EXPECT_LE(std::abs(spec.basis_embeddings(1, 1) + std::polar(1.0, 0.5)), 1e-15);
  EXPECT_EQ(permutation_matrix(spec, 1), (CMatrix{{0.0, p.delta}, {1.0, 0.0}}));
}

TEST(CyclicSpec, DeltaOneSpecialCase) {
  CyclicParams p = default_transcendentals(2);
  p.delta = 1.0;
  const AlgebraSpec spec = cyclic_spec(p);
  EXPECT_TRUE(validate(spec).valid());
  EXPECT_EQ(permutation_matrix(spec, 1), (CMatrix{{0.0, 1.0}, {1.0, 0.0}}));
  EXPECT_TRUE(verify_optimality(build_stbc(spec), &spec).all_pass());
}

TEST(CyclicSpec, OrderThreeDiagonal) {
  const AlgebraSpec spec = cyclic_spec(default_transcendentals(3));
  const Complex w = primitive_root_of_unity(3);
  const Complex t3 = std::polar(1.0, 1.0 / 3.0);
  const CMatrix q = (1.0 / t3) * diagonal_matrix(spec, 1);
  EXPECT_LE(max_abs_diff(q, CMatrix{{1.0, 0.0, 0.0}, {0.0, w, 0.0}, {0.0, 0.0, w * w}}), 1e-15);
}

TEST(CyclicSpec, RejectsInvalidParams) {
  EXPECT_THROW(cyclic_spec({1, 1.0, 1.0}), InvalidParamsError);
  EXPECT_THROW(cyclic_spec({3, 2.0, 1.0}), InvalidParamsError);
  EXPECT_THROW(cyclic_spec({3, 1.0, 0.0}), InvalidParamsError);
  EXPECT_THROW(default_transcendentals(1), InvalidParamsError);
}

TEST(CyclicSpec, RandomUnitParamsValidateAndPowerToDelta) {
  std::mt19937_64 rng(44);
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const CyclicParams p{n, random_unit(rng), random_unit(rng)};
      const AlgebraSpec spec = cyclic_spec(p);
      const auto report = validate(spec, 1e-12);
      EXPECT_TRUE(report.valid()) << report.summary();
      EXPECT_LE(max_abs_diff(power(permutation_matrix(spec, 1), n), p.delta * CMatrix::identity(n)),
                1e-12);
    }
  }
}

TEST(BiquadraticSpec, CodewordMatchesDisplay) {
  const BiquadraticParams p = default_biquadratic_params();
  const AlgebraSpec spec = biquadratic_spec(p);
  const LinearSTBC code = build_stbc(spec);
  ASSERT_EQ(code.k(), 16u);
  EXPECT_NEAR(code.alpha(), 4.0, 1e-14);

  const Complex sx = std::polar(1.0, std::arg(p.x) / 2.0);
  const Complex sy = std::polar(1.0, std::arg(p.y) / 2.0);
  const Complex d1 = p.delta1, d2 = p.delta2;

  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  std::vector<Complex> f(16);
  for (auto& v : f) v = {nd(rng), nd(rng)};

  // k_{a,b} uses f[g * 4 + l] with g = 2a + b; sign flips for sigma_x / sigma_y.
  auto k = [&](int a, int b, bool flip_x, bool flip_y) {
    const std::size_t g = static_cast<std::size_t>(2 * a + b);
    const double fx = flip_x ? -1.0 : 1.0, fy = flip_y ? -1.0 : 1.0;
    return f[g * 4 + 0] + f[g * 4 + 1] * fx * sx + f[g * 4 + 2] * fy * sy +
           f[g * 4 + 3] * fx * fy * sx * sy;
  };
  const bool N = false, Y = true;
  const CMatrix expected = 0.5 * CMatrix{
      {k(0, 0, N, N), d2 * k(0, 1, N, Y), d1 * k(1, 0, Y, N), d1 * d2 * k(1, 1, Y, Y)},
      {k(0, 1, N, N), k(0, 0, N, Y), d1 * k(1, 1, Y, N), d1 * k(1, 0, Y, Y)},
      {k(1, 0, N, N), d2 * k(1, 1, N, Y), k(0, 0, Y, N), d2 * k(0, 1, Y, Y)},
      {k(1, 1, N, N), k(1, 0, N, Y), k(0, 1, Y, N), k(0, 0, Y, Y)},
  };
  EXPECT_LE(max_abs_diff(assemble(code, f), expected), 1e-12);
}

TEST(BiquadraticSpec, CocycleIdentityHolds) {
  const auto report = validate(biquadratic_spec(default_biquadratic_params()), 1e-12);
  EXPECT_TRUE(report.valid()) << report.summary();
  EXPECT_LE(report.cocycle_residual, 1e-12);
}

TEST(BiquadraticSpec, RandomUnitParamsAreOptimal) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const BiquadraticParams p{random_unit(rng), random_unit(rng), random_unit(rng), random_unit(rng)};
    const AlgebraSpec spec = biquadratic_spec(p);
    EXPECT_LE(validate(spec).cocycle_residual, 1e-12);
    EXPECT_TRUE(verify_optimality(build_stbc(spec), &spec).all_pass());
  }
}

TEST(BiquadraticSpec, RejectsOffCircleParams) {
  BiquadraticParams p = default_biquadratic_params();
  p.delta2 = 1.5;
  EXPECT_THROW(biquadratic_spec(p), InvalidParamsError);
}

TEST(GoldenCode, ClosedFormWeights) {
  const LinearSTBC g = golden_code();
  ASSERT_EQ(g.n(), 2u);
  ASSERT_EQ(g.k(), 4u);
  EXPECT_NEAR(g.weight(0)(0, 0).real(), 0.4472135954999579, 1e-15);
  EXPECT_NEAR(g.weight(0)(0, 0).imag(), -0.27639320225002106, 1e-15);
  EXPECT_EQ(g.weight(2)(0, 0), Complex(0.0));
  EXPECT_EQ(g.weight(1)(0, 1), Complex(0.0));
  EXPECT_FALSE(is_scaled_unitary(g.weight(0), 0.5, 1e-9).passed);
}

TEST(GoldenCode, TraceOrthogonalWithUnitNorms) {
  const LinearSTBC g = golden_code();
  for (std::size_t a = 0; a < 4; ++a) {
    EXPECT_NEAR(std::abs(trace_inner(g.weight(a), g.weight(a))), 1.0, 1e-12);
    for (std::size_t b = a + 1; b < 4; ++b)
      EXPECT_LE(std::abs(trace_inner(g.weight(a), g.weight(b))), 1e-12);
  }
}

TEST(DefaultTranscendentals, UnitModulus) {
  const CyclicParams p2 = default_transcendentals(2);
  EXPECT_LE(std::abs(p2.t - std::polar(1.0, 1.0)), 1e-15);
  EXPECT_LE(std::abs(p2.delta - std::polar(1.0, std::sqrt(5.0))), 1e-15);
  const CyclicParams p5 = default_transcendentals(5);
  EXPECT_EQ(p5.n, 5u);
  EXPECT_NEAR(std::abs(p5.t), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(p5.delta), 1.0, 1e-15);
}

TEST(DefaultTranscendentals, ValidateAndPassOptimalityUpTo8) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const AlgebraSpec spec = cyclic_spec(default_transcendentals(n));
    ASSERT_TRUE(validate(spec).valid());
    EXPECT_TRUE(verify_optimality(build_stbc(spec), &spec).all_pass()) << "n=" << n;
  }
}

TEST(Catalog, KnownIdsAndErrors) {
  EXPECT_EQ(known_code_ids().size(), 4u);
  CodeSpec req;
  req.id = "golden";
  EXPECT_FALSE(make_code(req).spec.has_value());
  req.id = "biquadratic";
  EXPECT_EQ(make_code(req).code.k(), 16u);
  req.id = "cyclic-delta1";
  req.n = 3;
  const auto d1 = make_code(req);
  EXPECT_EQ(d1.spec->cocycle(2, 2), Complex(1.0));
  req.id = "alamouti";
  try {
    make_code(req);
    FAIL() << "expected UnknownCodeError";
  } catch (const UnknownCodeError& e) {
    EXPECT_NE(std::string(e.what()).find("cyclic-delta1"), std::string::npos);
  }
}
