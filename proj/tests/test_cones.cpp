// Cone membership: Gram/sos certificates, bivariate convexity via the
// sos-convexity spectrahedron, sphere scans, and the convex test generator.
//
// Oracles: hand-computed Gram spectrahedra for the tiny instances (the
// minimum-trace point is unique and known in closed form), an eigenvalue
// oracle for the x^2 y^2 Hessian at (1,1)/sqrt(2), and direct sampling.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>

#include "cfl/cones.hpp"
#include "cfl/errors.hpp"
#include "cfl/form.hpp"
#include "test_util.hpp"

using namespace cfl;

namespace {

Errc thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a cfl::Error");
  return Errc::BadInput;
}

Form<Rational> bivariate(const std::vector<std::pair<Exponents, long>>& terms, int degree) {
  std::vector<std::pair<Exponents, Rational>> t;
  for (const auto& [e, c] : terms) t.emplace_back(e, Rational(c));
  return Form<Rational>::from_terms(2, degree, t);
}

// The standard non-sos quartic in four variables used throughout the
// certificates suite: sum x_i^4 + 2 sum_{j<k, i not in {j,k}} x_i^2 x_j x_k
// + 4 x1 x2 x3 x4.
Form<Rational> nonsos_quartic() {
  Form<Rational> p(4, 4);
  for (int i = 0; i < 4; ++i) {
    Exponents e(4, 0);
    e[i] = 4;
    p.accumulate(e, Rational(1));
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) {
        if (j == i || k == i) continue;
        Exponents e(4, 0);
        e[i] += 2;
        e[j] += 1;
        e[k] += 1;
        p.accumulate(e, Rational(2));
      }
  Exponents all(4, 1);
  p.accumulate(all, Rational(4));
  return p;
}

void check_certificate(const MembershipResult& res, const Form<Rational>& p) {
  REQUIRE(res.member);
  const auto& cert = res.certificate;
  CHECK(cert.residual <= 1e-7);
  const double scale = 1.0 + cert.G.cwiseAbs().maxCoeff();
  CHECK(sdp::min_eigenvalue(cert.G) >= -1e-8 * scale);
  CHECK(static_cast<int>(cert.basis.size()) == cert.G.rows());
  // sos => nonnegative: spot-check on random sphere points.
  std::mt19937_64 gen(0x5eedp0 + p.degree());
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Form<double> pf = to_float_form(p);
  for (int s = 0; s < 500; ++s) {
    Eigen::VectorXd x(p.vars());
    for (int i = 0; i < p.vars(); ++i) x(i) = gauss(gen);
    if (x.norm() < 1e-8) continue;
    x.normalize();
    CHECK(evaluate(pf, x) >= -1e-8);
  }
}

}  // namespace

TEST_CASE("sos membership on explicit squares") {
  // (x^2 + y^2)^2: minimum-trace Gram point is the rank-one matrix of the
  // square itself, [[1,0,1],[0,0,0],[1,0,1]] over basis (x^2, xy, y^2).
  const auto p = bivariate({{{4, 0}, 1}, {{2, 2}, 2}, {{0, 4}, 1}}, 4);
  const auto res = is_sos(p);
  check_certificate(res, p);
  REQUIRE(res.certificate.basis.size() == 3);
  CHECK(res.certificate.basis[0] == Exponents{2, 0});
  CHECK(res.certificate.basis[2] == Exponents{0, 2});
  CHECK(res.certificate.G(0, 0) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(res.certificate.G(0, 2) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(std::abs(res.certificate.G(1, 1)) <= 1e-5);
}

TEST_CASE("x^2 y^2 is sos but not convex") {
  const auto p = bivariate({{{2, 2}, 1}}, 4);

  // Gram side: the spectrahedron is the single point diag(0, 1, 0) = (xy)^2.
  const auto sos = is_sos(p);
  check_certificate(sos, p);
  CHECK(sos.certificate.G(1, 1) == doctest::Approx(1.0).epsilon(1e-5));

  // Convexity side: Hessian [[2y^2, 4xy], [4xy, 2x^2]] has a negative
  // eigenvalue off the axes, so the spectrahedral test must refuse.
  const auto cvx = is_convex_bivariate(p);
  REQUIRE_FALSE(cvx.member);
  CHECK(cvx.solver_status == sdp::Status::Infeasible);
  CHECK(cvx.witness.equality_multipliers.size() > 0);
  CHECK(!cvx.witness.note.empty());

  // Scan side: eigen oracle at (1,1)/sqrt(2) gives [[1,2],[2,1]] with
  // minimum eigenvalue -1; the 10^3 grid lands within 4e-3 rad of it.
  const auto scan = convexity_scan(to_float_form(p), 1000);
  CHECK(scan.min_eig <= -0.999);
  CHECK(scan.min_eig >= -1.0 - 1e-9);
  CHECK(std::abs(std::abs(scan.argmin(0)) - std::abs(scan.argmin(1))) <= 0.01);
}

TEST_CASE("the four-variable quartic with a quadruple product is not sos") {
  const auto p = nonsos_quartic();
  const auto res = is_sos(p);
  REQUIRE_FALSE(res.member);
  CHECK(res.solver_status == sdp::Status::Infeasible);
  CHECK(res.witness.equality_multipliers.size() > 0);
  CHECK(res.witness.blocks.size() == 1);
  CHECK(res.witness.note.find("numerical") != std::string::npos);
}

TEST_CASE("sos membership rejects odd degree") {
  const auto p = bivariate({{{3, 0}, 1}}, 3);
  CHECK(thrown_code([&] { (void)is_sos(p); }) == Errc::OddDegree);
  CHECK(thrown_code([&] { (void)is_sos_convex(p); }) == Errc::OddDegree);
}

TEST_CASE("random sums of squares certify and stay nonnegative") {
  std::mt19937_64 gen(20240818);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 3;
    const int d = 1 + trial % 2;
    const int squares = 2 + trial % 3;
    Form<Rational> p(n, 2 * d);
    for (int s = 0; s < squares; ++s) {
      const auto q = testutil::random_rational_form(gen, n, d, 3);
      if (q.empty()) continue;
      p = p + q * q;
    }
    if (p.empty()) continue;
    const auto res = is_sos(p);
    check_certificate(res, p);
  }
}

TEST_CASE("bivariate convexity matches the closed-form basis") {
  // Basis for degree 2d is (u1 x^{d-1}, ..., u1 y^{d-1}, u2 x^{d-1}, ...),
  // exponents over (x, y, u1, u2); |basis| = 2d.
  const auto basis4 = sos_convexity_basis(2, 4);
  REQUIRE(basis4.size() == 4);
  CHECK(basis4[0] == Exponents{1, 0, 1, 0});
  CHECK(basis4[1] == Exponents{0, 1, 1, 0});
  CHECK(basis4[2] == Exponents{1, 0, 0, 1});
  CHECK(basis4[3] == Exponents{0, 1, 0, 1});
  const auto basis6 = sos_convexity_basis(2, 6);
  REQUIRE(basis6.size() == 6);
  CHECK(basis6[0] == Exponents{2, 0, 1, 0});
  CHECK(basis6[5] == Exponents{0, 2, 0, 1});

  const auto p = bivariate({{{4, 0}, 1}, {{0, 4}, 1}}, 4);
  const auto res = is_convex_bivariate(p);
  REQUIRE(res.member);
  CHECK(res.certificate.basis == basis4);
  CHECK(res.certificate.G.rows() == 4);
  CHECK(res.certificate.residual <= 1e-7);

  const auto p3 = Form<Rational>::from_terms(3, 2, {{{2, 0, 0}, Rational(1)}});
  CHECK(thrown_code([&] { (void)is_convex_bivariate(p3); }) == Errc::NotBivariate);
}

TEST_CASE("the boundary sextic 6x^6 + 30x^2y^4 + 4y^6 is convex") {
  const auto q3 = bivariate({{{6, 0}, 6}, {{2, 4}, 30}, {{0, 6}, 4}}, 6);
  const auto res = is_convex_bivariate(q3);
  REQUIRE(res.member);
  CHECK(res.certificate.residual <= 1e-7);
  const auto scan = convexity_scan(to_float_form(q3), 4096);
  CHECK(scan.min_eig >= -1e-7);
}

TEST_CASE("sphere scans are deterministic and job-count independent") {
  const auto p = bivariate({{{4, 0}, 1}, {{2, 2}, 2}, {{0, 4}, 1}}, 4);
  const auto pf = to_float_form(p);

  // Hessian of (x^2+y^2)^2 on the sphere is 4I + 8 x x^T: eigenvalues 4, 12.
  const auto a = convexity_scan(pf, 1000);
  CHECK(a.min_eig == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(a.argmin.norm() == doctest::Approx(1.0).epsilon(1e-12));

  const auto b = convexity_scan(pf, 1000);
  CHECK(a.min_eig == b.min_eig);
  CHECK(a.grid_index == b.grid_index);

  const auto c = convexity_scan(pf, 1000, 3);
  CHECK(a.min_eig == c.min_eig);
  CHECK(a.grid_index == c.grid_index);
}

TEST_CASE("scans in three and four variables") {
  // (x^2+y^2+z^2)^2: Hessian on the sphere is 4I + 8 x x^T, minimum 4.
  Form<Rational> r2(3, 2);
  for (int i = 0; i < 3; ++i) {
    Exponents e(3, 0);
    e[i] = 2;
    r2.accumulate(e, Rational(1));
  }
  const auto scan3 = convexity_scan(r2 * r2, 2000);
  CHECK(scan3.min_eig == doctest::Approx(4.0).epsilon(1e-6));

  // Same shape in four variables through the Halton grid.
  Form<Rational> s2(4, 2);
  for (int i = 0; i < 4; ++i) {
    Exponents e(4, 0);
    e[i] = 2;
    s2.accumulate(e, Rational(1));
  }
  const auto scan4 = convexity_scan(s2 * s2, 2000);
  CHECK(scan4.min_eig == doctest::Approx(4.0).epsilon(1e-4));

  CHECK(thrown_code([&] {
          (void)convexity_scan(Form<double>::from_terms(1, 2, {{{2}, 1.0}}), 100);
        }) == Errc::DimensionMismatch);
}

TEST_CASE("sos-convexity in more than two variables") {
  // (x^2+y^2+z^2)^2: u^T Hess u = 4|x|^2|u|^2 + 8(x.u)^2 is visibly sos.
  Form<Rational> r2(3, 2);
  for (int i = 0; i < 3; ++i) {
    Exponents e(3, 0);
    e[i] = 2;
    r2.accumulate(e, Rational(1));
  }
  const auto res = is_sos_convex(r2 * r2);
  REQUIRE(res.member);
  CHECK(res.certificate.residual <= 1e-7);
  CHECK(res.certificate.basis.size() == 9);  // 3 u's times 3 first-degree monomials
}

TEST_CASE("the convex generator is deterministic and convex") {
  // Single linear form in one variable collapses to c x^{2d}.
  const auto mono = random_convex_form(1, 3, 1, 7);
  REQUIRE(mono.terms().size() == 1);
  CHECK(mono.terms().begin()->first == Exponents{6});
  CHECK(mono.terms().begin()->second > 0);

  const auto f1 = random_convex_form(2, 2, 3, 42);
  const auto f2 = random_convex_form(2, 2, 3, 42);
  CHECK(f1 == f2);
  CHECK(f1 != random_convex_form(2, 2, 3, 43));

  for (int seed = 0; seed < 5; ++seed) {
    const auto f = random_convex_form(2, 2 + seed % 2, 1 + seed % 3, 100 + seed);
    const auto scan = convexity_scan(to_float_form(f), 2000);
    CHECK(scan.min_eig >= -1e-9);
    const auto res = is_convex_bivariate(f);
    CHECK(res.member);
  }

  // n = 3 outputs pass the scan as well.
  const auto g = random_convex_form(3, 2, 4, 11);
  CHECK(convexity_scan(to_float_form(g), 2000).min_eig >= -1e-9);
}

TEST_CASE("spectrahedral test and sphere scan agree on random bivariate forms") {
  std::mt19937_64 gen(0xc0feef);
  int checked = 0;
  for (int k = 0; k < 100; ++k) {
    const int d = 2 + k % 2;
    Form<Rational> f = random_convex_form(2, d, 1 + k % 3, 5000 + k);
    if (k >= 50) {
      // Contaminate half the battery so both verdicts occur; amplitudes are
      // spread so most instances land clearly on one side of the boundary.
      const long num = 1 + k % 7;
      const long den = (k % 3 == 0) ? 100 : (k % 3 == 1) ? 10 : 1;
      const auto noise = testutil::random_rational_form(gen, 2, 2 * d, 4);
      f = f + Rational(num, den) * noise;
    }
    if (f.empty()) continue;

    const auto scan = convexity_scan(to_float_form(f), 10000);
    const auto res = is_convex_bivariate(f);
    ++checked;
    // Agreement up to the tolerance band |min_eig| <= 1e-6.
    if (scan.min_eig < -1e-6) CHECK_FALSE(res.member);
    if (res.member) CHECK(scan.min_eig >= -1e-6);

    if (res.member) {
      CHECK(res.certificate.residual <= 1e-7);
      // Convex => nonnegative for even-degree forms: spot-check.
      const auto pf = to_float_form(f);
      std::mt19937_64 pgen(k);
      std::uniform_real_distribution<double> ang(0.0, 2.0 * 3.14159265358979);
      for (int s = 0; s < 50; ++s) {
        const double t = ang(pgen);
        Eigen::Vector2d x(std::cos(t), std::sin(t));
        CHECK(evaluate(pf, x) >= -1e-8);
      }
    }
  }
  CHECK(checked >= 95);
}
