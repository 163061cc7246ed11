#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "laxlab/lax_config.hpp"
#include "support/oracles.hpp"

using namespace laxlab;

namespace {

std::mt19937 rng(1234);

Complex rand_unit() {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  const double th = u(rng);
  return {std::cos(th), std::sin(th)};
}

Complex rand_c(double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

const LaxConfig kRef = LaxConfig::make(1.0, 3.0, 1.0, 1.0);

}  // namespace

TEST_CASE("build_L0 coefficients for the reference instance") {
  const LaurentMatrixPoly L = build_L0(kRef);
  CHECK(L.dim() == 2);
  CHECK(L.neg_degree() == 1);
  Eigen::Matrix2cd c1, c0, cm1;
  c1 << 0, 1, 1, 0;
  c0 << 0, 3, -3, 0;
  cm1 << 1, 1, 1, -1;
  CHECK((L.coeff(1) - c1).norm() == 0.0);
  CHECK((L.coeff(0) - c0).norm() == 0.0);
  CHECK((L.coeff(-1) - cm1).norm() == 0.0);

  Eigen::Matrix2cd at1;
  at1 << 1, 5, -1, -1;
  CHECK((L.eval(1.0) - at1).norm() < 1e-15);
}

TEST_CASE("L0 is traceless on the circle and has even characteristic form") {
  const LaurentMatrixPoly L = build_L0(kRef);
  for (int i = 0; i < 10; ++i) {
    const Complex lam = rand_unit();
    const Eigen::Matrix2cd M = L.eval(lam);
    CHECK(std::abs(M.trace()) < 1e-14);
  }
}

TEST_CASE("a = 0 is rejected") {
  CHECK_THROWS_AS(LaxConfig::make(0.0, 3.0, 1.0, 1.0), ConfigError);
}

TEST_CASE("splitting") {
  const LaurentMatrixPoly L = build_L0(kRef);

  SUBCASE("plus part of the reference L0") {
    const LaurentMatrixPoly p = split_plus(L);
    // [[0, lam+3], [lam-3, 0]]
    const Complex lam = rand_unit();
    Eigen::Matrix2cd expect;
    expect << 0.0, lam + 3.0, lam - 3.0, 0.0;
    CHECK((p.eval(lam) - expect).norm() < 1e-15);
    CHECK(!p.has_coeff(-1));
  }

  SUBCASE("a pure k = -1 polynomial has zero plus part") {
    LaurentMatrixPoly L1(2, 1);
    L1.set_coeff(-1, Eigen::Matrix2cd::Random());
    CHECK(split_plus(L1).max_coeff_norm() == 0.0);
  }

  SUBCASE("plus + minus = identity partition at random points") {
    LaurentMatrixPoly L2(2, 3);
    for (int k = -3; k <= 1; ++k) L2.set_coeff(k, Eigen::Matrix2cd::Random());
    for (int i = 0; i < 8; ++i) {
      const Complex lam = rand_unit();
      CHECK((split_plus(L2).eval(lam) + split_minus(L2).eval(lam) - L2.eval(lam))
                .cwiseAbs()
                .maxCoeff() < 1e-14);
    }
  }

  SUBCASE("splitting is a projection") {
    LaurentMatrixPoly L2(2, 2);
    for (int k = -2; k <= 1; ++k) L2.set_coeff(k, Eigen::Matrix2cd::Random());
    const auto p = split_plus(L2);
    const auto pp = split_plus(p);
    const auto m = split_minus(L2);
    const auto mm = split_minus(m);
    const Complex lam = rand_unit();
    CHECK((pp.eval(lam) - p.eval(lam)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((mm.eval(lam) - m.eval(lam)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("exponent range is enforced") {
  LaurentMatrixPoly L(2, 1);
  CHECK_THROWS_AS(L.set_coeff(2, Eigen::Matrix2cd::Zero()), ConfigError);
  CHECK_THROWS_AS(L.set_coeff(-2, Eigen::Matrix2cd::Zero()), ConfigError);
}

TEST_CASE("apply_P0") {
  const LaurentMatrixPoly L = build_L0(kRef);

  SUBCASE("empty weights give the zero matrix") {
    CHECK(apply_P0(L, {}).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("all-ones weight at exponent 0 picks the constant coefficient") {
    P0Weights w{{0, Eigen::Matrix2cd::Ones()}};
    CHECK((apply_P0(L, w) - L.coeff(0)).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("linearity") {
    P0Weights w{{0, Eigen::Matrix2cd::Random()}, {-1, Eigen::Matrix2cd::Random()}};
    LaurentMatrixPoly M(2, 1);
    for (int k = -1; k <= 1; ++k) M.set_coeff(k, Eigen::Matrix2cd::Random());
    const Complex alpha = rand_c(), beta = rand_c();
    const Eigen::Matrix2cd lhs = apply_P0(alpha * L + beta * M, w);
    const Eigen::Matrix2cd rhs = alpha * apply_P0(L, w) + beta * apply_P0(M, w);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("rhs_ode") {
  const auto d = rhs_ode(3.0, 1.0, 1.0, 1.0);
  CHECK(d[0] == Complex(-2.0));
  CHECK(d[1] == Complex(-6.0));
  CHECK(d[2] == Complex(6.0));

  const auto dz0 = rhs_ode(rand_c(), rand_c(), 0.0, rand_c());
  CHECK(dz0[0] == Complex(0.0));
  CHECK(dz0[1] == Complex(0.0));

  // d/dt (x^2 - 2 a y) = 2 x dx - 2 a dy vanishes identically.
  for (int i = 0; i < 10; ++i) {
    const Complex x = rand_c(2), y = rand_c(2), z = rand_c(2), a = rand_c(2);
    const auto f = rhs_ode(x, y, z, a);
    CHECK(std::abs(2.0 * x * f[0] - 2.0 * a * f[1]) < 1e-13);
    CHECK(std::abs(2.0 * y * f[1] + 2.0 * z * f[2]) < 1e-13);
  }
}

TEST_CASE("invariants") {
  const auto [A, B] = invariants(3.0, 1.0, 1.0, 1.0);
  CHECK(A == Complex(7.0));
  CHECK(B == Complex(2.0));
  const auto [A0, B0] = invariants(0.0, 0.0, 0.0, rand_c());
  CHECK(A0 == Complex(0.0));
  CHECK(B0 == Complex(0.0));
}

TEST_CASE("invariants are conserved along an oracle trajectory") {
  // Independent check with the Taylor-recurrence integrator.
  const auto end = oracles::taylor_integrate(1.0, 3.0, 1.0, 1.0, Complex(1.0));
  const auto [A, B] = invariants(end[0], end[1], end[2], 1.0);
  CHECK(std::abs(A - 7.0) < 1e-8);
  CHECK(std::abs(B - 2.0) < 1e-8);
}

TEST_CASE("LaxConfig JSON round trip") {
  P0Weights w{{0, Eigen::Matrix2cd::Ones()}};
  const LaxConfig c = LaxConfig::make({1.0, 0.5}, 3.0, {1.0, -0.25}, 1.0, w, 1e-10);
  const LaxConfig back = LaxConfig::from_json(c.to_json());
  CHECK(back.a == c.a);
  CHECK(back.x0 == c.x0);
  CHECK(back.y0 == c.y0);
  CHECK(back.z0 == c.z0);
  CHECK(back.A == c.A);
  CHECK(back.B == c.B);
  CHECK(back.tol == c.tol);
  CHECK(back.p0_weights.size() == 1);
  CHECK((back.p0_weights.at(0) - Eigen::Matrix2cd::Ones()).norm() == 0.0);

  CHECK_THROWS_AS(LaxConfig::from_json(nlohmann::json{{"a", {1, 0}}}), ConfigError);
}
