#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "cfl/integrals.hpp"
#include "cfl/polar.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cfl;
using testutil::random_rational_form;

namespace {
Form<Rational> r2() {
  return make_form<Rational>(2, 2, {{{2, 0}, Rational(1)}, {{0, 2}, Rational(1)}});
}
}  // namespace

TEST_CASE("polar profile: rotation-invariant forms and frequency parity") {
  for (int d = 1; d <= 5; ++d) {
    const auto pp = polar_profile(pow(r2(), d));
    CHECK(pp.degree == 2 * d);
    CHECK(pp.f.cos_c[0] == Rational(1));
    for (int j = 1; j <= 2 * d; ++j) {
      CHECK(pp.f.cos_c[j] == Rational(0));
      CHECK(pp.f.sin_c[j] == Rational(0));
    }
  }

  std::mt19937_64 gen(29);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + trial % 7;
    const auto p = random_rational_form(gen, 2, k, 5);
    const auto pp = polar_profile(p);
    for (int j = 0; j <= k; ++j) {
      if ((k - j) % 2 != 0) {
        // only frequencies of the same parity as the degree can appear
        CHECK(pp.f.cos_c[j] == Rational(0));
        CHECK(pp.f.sin_c[j] == Rational(0));
      }
    }
  }
}

TEST_CASE("polar profile reconstructs the form on rays") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> radius(0.2, 1.8);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + trial % 7;
    const auto p = testutil::random_double_form(gen, 2, k, 6);
    const auto pp = polar_profile(p);
    for (int s = 0; s < 10; ++s) {
      const double t = angle(gen), r = radius(gen);
      const double direct = evaluate(p, Eigen::Vector2d(r * std::cos(t), r * std::sin(t)));
      const double via = std::pow(r, k) * evaluate(pp.f, t);
      CHECK(std::abs(direct - via) <= 1e-12 * (1 + std::abs(direct)));
    }
  }
}

TEST_CASE("profile of the Laplacian is k^2 f + f''") {
  std::mt19937_64 gen(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + trial % 7;
    const auto p = random_rational_form(gen, 2, k, 6);
    const auto f = polar_profile(p).f;
    const auto fpp = derivative(derivative(f));
    const auto g = polar_profile(laplacian(p)).f;
    for (int j = 0; j <= k - 2; ++j) {
      CHECK(g.cos_c[j] == Rational(k * k) * f.cos_c[j] + fpp.cos_c[j]);
      CHECK(g.sin_c[j] == Rational(k * k) * f.sin_c[j] + fpp.sin_c[j]);
    }
  }
}

TEST_CASE("polar hessian agrees with the cartesian hessian") {
  // radial power: f == 1, so the formula collapses to k(k-1) e_r e_r' + k e_t e_t'
  const auto pp = to_float_profile(polar_profile(pow(r2(), 3)));
  const int k = 6;
  const double r = 1.3, t = 0.7;
  const Eigen::Vector2d er(std::cos(t), std::sin(t)), et(-std::sin(t), std::cos(t));
  const Eigen::Matrix2d expect =
      std::pow(r, k - 2) *
      (k * (k - 1) * er * er.transpose() + k * et * et.transpose());
  CHECK((polar_hessian(pp, r, t) - expect).norm() <= 1e-10);

  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> radius(0.3, 1.6);
  for (int trial = 0; trial < 25; ++trial) {
    const int deg = 2 + trial % 7;
    const auto p = testutil::random_double_form(gen, 2, deg, 6);
    const auto prof = polar_profile(p);
    const double tt = angle(gen), rr = radius(gen);
    const Eigen::Vector2d x(rr * std::cos(tt), rr * std::sin(tt));
    const Eigen::MatrixXd H = hessian(p, x);
    const Eigen::Matrix2d Hp = polar_hessian(prof, rr, tt);
    CHECK((H - Hp).norm() <= 1e-10 * (1 + H.norm()));
  }
}

TEST_CASE("disk integrals: closed form, parity, quadrature oracle") {
  for (int d = 0; d <= 6; ++d) {
    Rational expect(1, d + 1);
    CHECK(disk_integral_pi_units(pow(r2(), d)) == expect);
  }
  CHECK(disk_average(to_float_form(pow(r2(), 2))) ==
        doctest::Approx(std::numbers::pi / 3).epsilon(1e-13));

  // any odd exponent kills the integral
  CHECK(disk_integral_pi_units(monomial(2, {3, 1}, Rational(1))) == Rational(0));
  CHECK(disk_integral_pi_units(monomial(2, {2, 1}, Rational(1))) == Rational(0));

  std::mt19937_64 gen(43);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + trial % 7;
    const auto p = testutil::random_double_form(gen, 2, k, 6);
    const double direct = disk_average(p);
    const double quad = testutil::quad_disk_integral(p);
    CHECK(std::abs(direct - quad) <= 1e-11 * (1 + std::abs(direct)));
  }
}

TEST_CASE("hermitian biform at (1, i) is the moment formula in pi units") {
  Eigen::Matrix<RationalComplex, Eigen::Dynamic, 1> z(2);
  z(0) = RationalComplex(Rational(1));
  z(1) = RationalComplex(Rational(0), Rational(1));

  // frozen d = 2 instance: both routes give 8/3
  CHECK(hermitian_biform(pow(r2(), 2), z) == Rational(8, 3));

  std::mt19937_64 gen(47);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + trial % 4;
    const auto p = random_rational_form(gen, 2, 2 * d, 6);
    Rational scale(d + 1);
    for (int i = 0; i < d; ++i) scale *= 4;
    scale /= Rational(binomial(2 * d, d));
    CHECK(hermitian_biform(p, z) == scale * disk_integral_pi_units(p));
  }
}

TEST_CASE("disk integral of the Laplacian scales by k(k+2)") {
  std::mt19937_64 gen(53);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + trial % 7;
    const auto p = random_rational_form(gen, 2, k, 6);
    CHECK(disk_integral_pi_units(laplacian(p)) ==
          Rational(k * (k + 2)) * disk_integral_pi_units(p));
  }
}
