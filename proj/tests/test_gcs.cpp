// Sharp Cauchy-Schwarz constants over convex bivariate forms: the SDP-computed
// values are pinned against independent oracles (Catalan closed form, the
// degree-three minimal polynomial of the d=4 constant, exact operator
// factorizations, and hand-expanded extremal forms).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>

#include "cfl/gcs.hpp"
#include "test_util.hpp"

using namespace cfl;
using namespace cfl::gcs;

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

void require_all(const CheckReport& report) {
  for (const auto& c : report.checks) {
    INFO(c.name, " residual=", c.residual);
    CHECK(c.pass);
  }
  CHECK(report.all_pass());
}

void require_all(const GcsReport& report) {
  for (const auto& c : report.cross_checks) {
    INFO("d=", report.d, " ", c.name, " residual=", c.residual);
    CHECK(c.pass);
  }
  CHECK(report.all_pass());
}

}  // namespace

TEST_CASE("catalan numbers match the closed form") {
  const long long expected[] = {1, 1, 2, 5, 14, 42, 132, 429};
  for (int d = 1; d <= 8; ++d) CHECK(catalan(d) == Rational(expected[d - 1]));
  CHECK(thrown_code([] { (void)catalan(0); }) == Errc::BadInput);
}

TEST_CASE("operator factorizations hold exactly and the control is caught") {
  const CheckReport report = verify_exact_decompositions();
  REQUIRE(report.checks.size() == 4);
  require_all(report);
  CHECK(report.checks[3].residual == doctest::Approx(1.0));
}

TEST_CASE("complex Cauchy-Schwarz decomposition at random points, d = 1..6") {
  for (int d = 1; d <= 6; ++d) require_all(verify_prop_complex_cs(d, 400, 7));
  CHECK(thrown_code([] { (void)verify_prop_complex_cs(0, 10); }) == Errc::BadInput);
  CHECK(thrown_code([] { (void)verify_prop_complex_cs(2, 0); }) == Errc::BadInput);
}

TEST_CASE("extremal forms q_d match their hand expansions") {
  CHECK(build_q_d(2) == make_form<Rational>(2, 4, {{{4, 0}, 4}, {{0, 4}, 4}}));
  CHECK(build_q_d(3) == make_form<Rational>(2, 6, {{{6, 0}, 6}, {{2, 4}, 30}, {{0, 6}, 4}}));
  CHECK(build_q_d(4) ==
        make_form<Rational>(2, 8, {{{8, 0}, 8}, {{4, 4}, 112}, {{0, 8}, 8}}));
  CHECK(thrown_code([] { (void)build_q_d(0); }) == Errc::BadInput);
}

TEST_CASE("q_d verification: convexity, special values, Catalan ratio, d = 1..6") {
  for (int d = 1; d <= 6; ++d) {
    INFO("d=", d);
    require_all(verify_q_d(d));
  }
}

TEST_CASE("A-constants: unity through d = 3, then the known bumps") {
  for (int d = 1; d <= 3; ++d) {
    const GcsReport r = compute_A_star(d, 1e-9);
    INFO("d=", d, " value=", r.value);
    CHECK(std::abs(r.value - 1.0) <= 1e-6);
    CHECK(r.sdp_gap <= 1e-8);
    require_all(r);
  }
  const double table[] = {1.011, 1.000, 1.061, 1.000, 1.048};  // d = 4..8
  for (int d = 4; d <= 8; ++d) {
    const GcsReport r = compute_A_star(d, 1e-9);
    INFO("d=", d, " value=", r.value);
    CHECK(std::abs(r.value - table[d - 4]) <= 1e-3);
    require_all(r);
  }
  CHECK(thrown_code([] { (void)compute_A_star(0); }) == Errc::BadInput);
  CHECK(thrown_code([] { (void)compute_A_star(11); }) == Errc::BadInput);
}

TEST_CASE("even-degree constants strictly exceed one") {
  for (int d : {4, 6, 8}) {
    const GcsReport r = compute_A_star(d, 1e-9);
    INFO("d=", d, " value=", r.value);
    CHECK(r.value > 1.0 + 1e-4);
  }
}

TEST_CASE("B-constants equal Catalan numbers, d = 1..6") {
  for (int d = 1; d <= 6; ++d) {
    const GcsReport r = compute_B_star(d, 1e-9);
    INFO("d=", d, " value=", r.value);
    CHECK(std::abs(r.value - scalar_cast<double>(catalan(d))) <= 1e-6);
    CHECK(r.sdp_gap <= 1e-8);
    require_all(r);
    REQUIRE(r.extremal_form.has_value());
  }
  CHECK(thrown_code([] { (void)compute_B_star(0); }) == Errc::BadInput);
  CHECK(thrown_code([] { (void)compute_B_star(9); }) == Errc::BadInput);
}

TEST_CASE("the d = 4 constant is the stated algebraic number") {
  const GcsReport r = compute_A_star(4, 1e-9);
  CHECK(std::abs(r.value - 1.0111811061765268) <= 1e-6);
  const A4Report a4 = verify_A4_minpoly(r.value);
  CHECK(a4.minpoly_residual <= 1e-6);
  CHECK(a4.omega_reconstruction <= 1e-8);
  CHECK(std::abs(a4.nearest_root - 1.0111811061765268) <= 1e-12);
  CHECK(a4.consistent);

  // Away from the root the residual is the hand-computed polynomial value.
  const A4Report off = verify_A4_minpoly(1.0);
  CHECK(off.minpoly_residual == doctest::Approx(0.011941690962099105).epsilon(1e-9));
  CHECK_FALSE(off.consistent);
}

TEST_CASE("witness family p_d: convex, unit endpoints, biform above one") {
  for (int d : {4, 6, 8}) {
    const PdWitness w = build_p_d_even(d, 4096);
    INFO("d=", d, " alpha=", w.alpha, " gcs=", w.gcs_value);
    require_all(w.checks);
    CHECK(w.alpha > 0.0);
    CHECK(w.gcs_value > 1.0 + 1e-4);
    CHECK(w.alpha_exact > Rational(0));
    // The witness value stays below the sharp constant for its degree.
    const GcsReport sharp = compute_A_star(d, 1e-9);
    CHECK(w.gcs_value < sharp.value + 1e-9);
  }
  CHECK(thrown_code([] { (void)build_p_d_even(5); }) == Errc::DOdd);
  CHECK(thrown_code([] { (void)build_p_d_even(2); }) == Errc::BadInput);
  CHECK(thrown_code([] { (void)build_p_d_even(4, 8); }) == Errc::BadInput);
}

TEST_CASE("sampled GCS inequalities hold at the sharp constants") {
  // The B-extremal forms, at their exact constants.
  for (int d = 2; d <= 4; ++d) {
    const Form<double> q = to_float_form(build_q_d(d));
    require_all(gcs_property_check(q, 500, d == 4 ? 1.011182 : 1.0,
                                   scalar_cast<double>(catalan(d)), 11 + d));
  }
  // Univariate equality case: p = x^4 at x = y = z = 1 with A = B = 1.
  const Form<double> x4 = monomial(1, Exponents{4}, 1.0);
  require_all(gcs_property_check(x4, 200, 1.0, 1.0, 3));
  // The A-witness for d = 4, against constants valid for its degree.
  const PdWitness w = build_p_d_even(4);
  require_all(gcs_property_check(to_float_form(w.p), 300, 1.011182, 5.0, 29));
  CHECK(thrown_code([&] { (void)gcs_property_check(x4, 0, 1.0, 1.0); }) == Errc::BadInput);
  const Form<double> odd = monomial(2, Exponents{2, 1}, 1.0);
  CHECK(thrown_code([&] { (void)gcs_property_check(odd, 5, 1.0, 1.0); }) == Errc::OddDegree);
}

TEST_CASE("dual certificate forms expand to the known squares") {
  const Form<Rational> x = monomial(2, {1, 0}, Rational(1));
  const Form<Rational> y = monomial(2, {0, 1}, Rational(1));

  const DualElement ell = make_ell_a(2, Rational(1));
  CHECK(ell.kind == 'A');
  CHECK(ell.expansion == pow(pow(x, 2) - pow(y, 2), 2));

  const DualElement ell3 = make_ell_a(3, Rational(1));
  CHECK(ell3.expansion == pow(pow(x, 3) - pow(y, 3), 2));

  const DualElement sb2 = make_s_b(2, catalan(2));
  CHECK(sb2.kind == 'B');
  CHECK(sb2.expansion == make_form<Rational>(2, 4, {{{2, 2}, 8}}));

  // At the Catalan constant the certificate is nonnegative on the circle.
  for (int d = 3; d <= 5; ++d) {
    const Form<double> s = to_float_form(make_s_b(d, catalan(d)).expansion);
    double worst = 0.0;
    for (int i = 0; i < 720; ++i) {
      Eigen::VectorXd pt(2);
      pt << std::cos(i * std::numbers::pi / 360.0), std::sin(i * std::numbers::pi / 360.0);
      worst = std::min(worst, evaluate(s, pt));
    }
    INFO("d=", d, " min on circle=", worst);
    CHECK(worst >= -1e-9);
  }
}
