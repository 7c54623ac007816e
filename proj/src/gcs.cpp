#include "cfl/gcs.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "cfl/combinatorics.hpp"

namespace cfl::gcs {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Index of the (i, j) entry, i <= j, in the packed upper triangle of a
// size x size symmetric matrix (row-major over rows i, same layout as the
// Gram assemblies in cones.cpp).
int upper_index(int size, int i, int j) { return i * size - i * (i - 1) / 2 + (j - i); }

Form<Rational> var_form(int which) {
  Exponents e(2, 0);
  e[which] = 1;
  return monomial(2, e, Rational(1));
}

// Re (x + i y)^{2d}, expanded exactly.
Form<Rational> real_part_z_pow(int d) {
  Form<Rational> out(2, 2 * d);
  for (int j = 0; 2 * j <= 2 * d; ++j) {
    const Rational c = Rational(binomial(2 * d, 2 * j)) * (j % 2 ? Rational(-1) : Rational(1));
    out.accumulate(Exponents{2 * d - 2 * j, 2 * j}, c);
  }
  return out;
}

// Exact evaluation at z = (1, i): only the power of the second variable
// matters, through the four-cycle of i^k.
RationalComplex value_at_unit_z(const Form<Rational>& p) {
  RationalComplex acc;
  for (const auto& [e, c] : p.terms()) {
    switch (e[1] % 4) {
      case 0: acc += RationalComplex(c, 0); break;
      case 1: acc += RationalComplex(0, c); break;
      case 2: acc += RationalComplex(-c, 0); break;
      default: acc += RationalComplex(0, -c); break;
    }
  }
  return acc;
}

Rational rational_pow(const Rational& base, int k) {
  Rational acc(1);
  for (int i = 0; i < k; ++i) acc *= base;
  return acc;
}

// The sos-convexity spectrahedron of a generic bivariate form of degree 2d,
// sliced by nothing yet: variables are the 2d + 1 coefficients of q followed
// by the packed upper triangle of the Gram matrix Q, and the equality rows
// couple u' Hess(q) u with z' Q z monomial by monomial.  The caller appends
// its own normalization row and objective.
struct SectionAssembly {
  sdp::Problem problem;
  std::vector<Exponents> basis;  // Gram basis over (x1, x2, u1, u2)
  int num_q = 0;                 // leading variables are the q coefficients
};

SectionAssembly assemble_sos_convex_section(int d) {
  const int deg = 2 * d;
  SectionAssembly out;
  out.basis = sos_convexity_basis(2, deg);
  const int B = static_cast<int>(out.basis.size());
  out.num_q = deg + 1;
  const int num_vars = out.num_q + B * (B + 1) / 2;

  // Hessian quadratic of each coefficient monomial x^(2d-k) y^k, exact.
  std::vector<Form<Rational>> hq;
  hq.reserve(out.num_q);
  for (int k = 0; k <= deg; ++k)
    hq.push_back(hessian_quadratic_form(monomial(2, Exponents{deg - k, k}, Rational(1))));

  // Deterministic row order: descending lex over every (x, u) monomial that
  // can appear on either side of the coupling.
  std::map<Exponents, int, std::greater<Exponents>> rows;
  for (const auto& f : hq)
    for (const auto& [e, c] : f.terms()) rows.emplace(e, 0);
  for (int i = 0; i < B; ++i)
    for (int j = i; j < B; ++j) {
      Exponents e = out.basis[i];
      for (size_t t = 0; t < e.size(); ++t) e[t] += out.basis[j][t];
      rows.emplace(e, 0);
    }
  int next = 0;
  for (auto& kv : rows) kv.second = next++;

  sdp::Problem& prob = out.problem;
  prob.c = Eigen::VectorXd::Zero(num_vars);
  prob.A = Eigen::MatrixXd::Zero(next, num_vars);
  prob.b = Eigen::VectorXd::Zero(next);
  for (int k = 0; k <= deg; ++k)
    for (const auto& [e, c] : hq[k].terms()) prob.A(rows.at(e), k) += scalar_cast<double>(c);
  for (int i = 0; i < B; ++i)
    for (int j = i; j < B; ++j) {
      Exponents e = out.basis[i];
      for (size_t t = 0; t < e.size(); ++t) e[t] += out.basis[j][t];
      prob.A(rows.at(e), out.num_q + upper_index(B, i, j)) -= (i == j ? 1.0 : 2.0);
    }

  // Unit-max row scaling keeps the solver's stopping rules meaningful across
  // degrees (binomial growth in the Hessian coefficients).
  for (int r = 0; r < next; ++r) {
    const double scale = prob.A.row(r).cwiseAbs().maxCoeff();
    if (scale > 0.0) prob.A.row(r) /= scale;
  }

  sdp::Block blk;
  blk.F0 = Eigen::MatrixXd::Zero(B, B);
  blk.F.assign(num_vars, Eigen::MatrixXd::Zero(B, B));
  for (int i = 0; i < B; ++i)
    for (int j = i; j < B; ++j) {
      blk.F[out.num_q + upper_index(B, i, j)](i, j) = 1.0;
      blk.F[out.num_q + upper_index(B, i, j)](j, i) = 1.0;
    }
  prob.blocks.push_back(std::move(blk));
  return out;
}

void append_row(sdp::Problem& prob, const Eigen::VectorXd& row, double rhs) {
  const double scale = std::max(row.cwiseAbs().maxCoeff(), std::abs(rhs));
  const int r = prob.num_eq();
  prob.A.conservativeResize(r + 1, Eigen::NoChange);
  prob.b.conservativeResize(r + 1);
  prob.A.row(r) = row / scale;
  prob.b(r) = rhs / scale;
}

Form<double> coefficients_to_form(const Eigen::VectorXd& y, int deg) {
  Form<double> q(2, deg);
  for (int k = 0; k <= deg; ++k) q.accumulate(Exponents{deg - k, k}, y(k));
  return q;
}

CrossCheck make_check(std::string name, double residual, double tol) {
  return CrossCheck{std::move(name), residual <= tol, residual};
}

// Largest coefficient magnitude of an exact form, as a double.
double max_abs_coeff(const Form<Rational>& p) {
  double best = 0.0;
  for (const auto& [e, c] : p.terms()) best = std::max(best, std::abs(scalar_cast<double>(c)));
  return best;
}

sdp::Solution solve_section(const sdp::Problem& prob, double tol, const char* what) {
  sdp::SolveOptions so;
  so.tol = tol;
  so.max_iterations = 300;
  const sdp::Solution sol = sdp::solve(prob, so);
  if (sol.status != sdp::Status::Optimal) {
    std::ostringstream os;
    os << what << ": interior-point solve ended " << sdp::status_name(sol.status) << " ("
       << sol.message << ")";
    throw Error(Errc::SolverFailure, os.str());
  }
  return sol;
}

}  // namespace

Rational catalan(int d) {
  if (d < 1) throw Error(Errc::BadInput, "catalan number needs d >= 1");
  return Rational(binomial(2 * (d - 1), d - 1)) / Rational(d);
}

GcsReport compute_A_star(int d, double sdp_tol) {
  if (d < 1 || d > 10) throw Error(Errc::BadInput, "A-constant computation supports 1 <= d <= 10");
  const int deg = 2 * d;
  SectionAssembly section = assemble_sos_convex_section(d);
  sdp::Problem& prob = section.problem;

  // q(e1) + q(e2) = 1.
  Eigen::VectorXd norm_row = Eigen::VectorXd::Zero(prob.num_vars());
  norm_row(0) = 1.0;
  norm_row(deg) = 1.0;
  append_row(prob, norm_row, 1.0);

  // maximize 2 Q_q(e1, e2) = 2 [x^d y^d] q / binom(2d, d).
  prob.c(d) = -2.0 / static_cast<double>(binomial(deg, d));

  const sdp::Solution sol = solve_section(prob, sdp_tol, "A-constant");
  GcsReport report;
  report.d = d;
  report.which = 'A';
  report.value = -sol.objective;
  report.sdp_gap = sol.gap;
  const Form<double> q = coefficients_to_form(sol.y, deg);
  report.extremal_form = q;

  Eigen::VectorXd e1(2), e2(2);
  e1 << 1.0, 0.0;
  e2 << 0.0, 1.0;
  report.cross_checks.push_back(
      make_check("value_ge_one", std::max(0.0, 1.0 - report.value), 1e-6));
  report.cross_checks.push_back(
      make_check("normalization", std::abs(evaluate(q, e1) + evaluate(q, e2) - 1.0), 1e-6));
  report.cross_checks.push_back(make_check(
      "biform_consistency", std::abs(2.0 * biform(q, e1, e2) - report.value),
      1e-6 * (1.0 + std::abs(report.value))));
  const ScanResult scan = convexity_scan(q, 2048);
  report.cross_checks.push_back(
      make_check("hessian_psd_scan", std::max(0.0, -scan.min_eig), 1e-5));
  return report;
}

GcsReport compute_B_star(int d, double sdp_tol) {
  if (d < 1 || d > 8) throw Error(Errc::BadInput, "B-constant computation supports 1 <= d <= 8");
  const int deg = 2 * d;
  SectionAssembly section = assemble_sos_convex_section(d);
  sdp::Problem& prob = section.problem;

  // Q_q(z, zbar) = 1 at z = (1, i): exact hermitian weights per coefficient
  // monomial, cast to double only when entering the row.
  Eigen::Matrix<RationalComplex, Eigen::Dynamic, 1> z(2);
  z(0) = RationalComplex(1, 0);
  z(1) = RationalComplex(0, 1);
  Eigen::VectorXd norm_row = Eigen::VectorXd::Zero(prob.num_vars());
  for (int k = 0; k <= deg; ++k) {
    const Rational w = hermitian_biform(monomial(2, Exponents{deg - k, k}, Rational(1)), z);
    norm_row(k) = scalar_cast<double>(w);
  }
  append_row(prob, norm_row, 1.0);

  // maximize Re q(1, i) = sum_k Re(i^k) q_k.
  static const double re_ik[4] = {1.0, 0.0, -1.0, 0.0};
  for (int k = 0; k <= deg; ++k) prob.c(k) = -re_ik[k % 4];

  const sdp::Solution sol = solve_section(prob, sdp_tol, "B-constant");
  GcsReport report;
  report.d = d;
  report.which = 'B';
  report.value = -sol.objective;
  report.sdp_gap = sol.gap;
  const Form<double> q = coefficients_to_form(sol.y, deg);
  report.extremal_form = q;

  const double cat = scalar_cast<double>(catalan(d));
  Eigen::VectorXcd zc(2);
  zc(0) = std::complex<double>(1.0, 0.0);
  zc(1) = std::complex<double>(0.0, 1.0);
  const double re_q = evaluate(q, zc).real();
  const double herm = hermitian_biform(q, zc);
  const double loose = d <= 6 ? 1e-6 : 1e-5;
  report.cross_checks.push_back(
      make_check("value_ge_one", std::max(0.0, 1.0 - report.value), 1e-6));
  report.cross_checks.push_back(make_check("catalan_agreement", std::abs(report.value - cat), loose));
  report.cross_checks.push_back(make_check("normalization", std::abs(herm - 1.0), 1e-6));
  report.cross_checks.push_back(make_check("saturation", std::abs(re_q - cat * herm), loose));
  return report;
}

CheckReport verify_exact_decompositions() {
  const Form<Rational> x = var_form(0);
  const Form<Rational> y = var_form(1);
  const Rational two(2);
  const Rational half(1, 2);
  CheckReport report;

  // x^2 + y^2 - 2xy = (x - y)^2
  {
    const Form<Rational> lhs = pow(x, 2) + pow(y, 2) - two * (x * y);
    const Form<Rational> rhs = pow(x - y, 2);
    report.checks.push_back({"degree_one_identity", lhs == rhs, max_abs_coeff(lhs - rhs)});
  }
  // x^4 + y^4 - 2x^2y^2 = (x - y)^2 (x + y)^2
  {
    const Form<Rational> lhs = pow(x, 4) + pow(y, 4) - two * pow(x * y, 2);
    const Form<Rational> rhs = pow(x - y, 2) * pow(x + y, 2);
    report.checks.push_back({"degree_two_identity", lhs == rhs, max_abs_coeff(lhs - rhs)});
  }
  // x^6 + y^6 - 2x^3y^3 = (x - y)^2 (x^4 + y^4 + (x + y)^4) / 2
  {
    const Form<Rational> lhs = pow(x, 6) + pow(y, 6) - two * pow(x * y, 3);
    const Form<Rational> rhs = half * (pow(x - y, 2) * (pow(x, 4) + pow(y, 4) + pow(x + y, 4)));
    report.checks.push_back({"degree_three_identity", lhs == rhs, max_abs_coeff(lhs - rhs)});
  }
  // Negative control: the corrupted factorization must be caught.
  {
    const Form<Rational> lhs = pow(x, 4) + pow(y, 4) - two * pow(x * y, 2);
    const Form<Rational> bad = pow(x - y, 2) * pow(x + y, 2) + monomial(2, {2, 2}, Rational(1));
    const double gap = max_abs_coeff(lhs - bad);
    report.checks.push_back({"negative_control_detected", lhs != bad && gap >= 0.5, gap});
  }
  return report;
}

CheckReport verify_prop_complex_cs(int d, int samples, uint64_t seed) {
  if (d < 1) throw Error(Errc::BadInput, "needs d >= 1");
  if (samples < 1) throw Error(Errc::BadInput, "needs at least one sample");
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<uint64_t>(d));
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);

  const double cat = scalar_cast<double>(catalan(d));
  const double four_d = std::pow(4.0, d);
  std::vector<double> ck(d), sk(d);
  for (int k = 0; k < d; ++k) {
    ck[k] = std::cos(k * kPi / d);
    sk[k] = std::sin(k * kPi / d);
  }

  // (a) the sum-of-squares decomposition of catalan(d)(x^2+y^2)^d - Re z^{2d}.
  double worst_plane = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double x = unit(rng);
    const double y = unit(rng);
    const double lhs =
        cat * std::pow(x * x + y * y, d) - std::pow(std::complex<double>(x, y), 2 * d).real();
    double sum = 0.0;
    for (int k = 0; k < d; ++k) {
      const double lin = -sk[k] * x + ck[k] * y;
      sum += lin * lin * std::pow(ck[k] * x + sk[k] * y, 2 * d - 2);
    }
    worst_plane = std::max(worst_plane, std::abs(lhs - four_d / (2.0 * d) * sum));
  }

  // (b) the same identity on the circle, as a trigonometric closed form.
  double worst_circle = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double t = angle(rng);
    double sum = 0.0;
    for (int k = 0; k < d; ++k) {
      const double si = std::sin(t - k * kPi / d);
      const double co = std::cos(t - k * kPi / d);
      sum += si * si * std::pow(co, 2 * d - 2);
    }
    worst_circle =
        std::max(worst_circle, std::abs(sum - 2.0 * d / four_d * (cat - std::cos(2 * d * t))));
  }

  // Spot value at theta = 0.
  double zero_sum = 0.0;
  for (int k = 0; k < d; ++k) {
    const double si = std::sin(-k * kPi / d);
    const double co = std::cos(-k * kPi / d);
    zero_sum += si * si * std::pow(co, 2 * d - 2);
  }
  const double zero_gap = std::abs(zero_sum - 2.0 * d / four_d * (cat - 1.0));

  CheckReport report;
  report.checks.push_back(make_check("pointwise_identity", worst_plane, 1e-10));
  report.checks.push_back(make_check("circle_closed_form", worst_circle, 1e-12));
  report.checks.push_back(make_check("theta_zero_value", zero_gap, 1e-12));
  return report;
}

Form<Rational> build_q_d(int d) {
  if (d < 1) throw Error(Errc::BadInput, "needs d >= 1");
  const Form<Rational> circle = pow(pow(var_form(0), 2) + pow(var_form(1), 2), d);
  return real_part_z_pow(d) + Rational(2 * d - 1) * circle;
}

CheckReport verify_q_d(int d) {
  const Form<Rational> q = build_q_d(d);
  const int deg = 2 * d;
  CheckReport report;

  const MembershipResult conv = is_convex_bivariate(q);
  report.checks.push_back({"convexity_certificate", conv.member,
                           conv.member ? conv.certificate.residual : 1.0});

  // q_d(1, i) = 2^{2d-1}, exactly: the (x^2+y^2)^d part vanishes at (1, i).
  const RationalComplex at_z = value_at_unit_z(q);
  const Rational expected = rational_pow(Rational(2), deg - 1);
  const bool value_ok = at_z == RationalComplex(expected, 0);
  report.checks.push_back({"value_at_z", value_ok, value_ok ? 0.0 : 1.0});

  // Delta^d q_d = (2d-1) 2^{2d} d!^2: the real part is harmonic.
  const Rational lap = laplacian_power(q, d);
  const Rational lap_expected =
      Rational(2 * d - 1) * rational_pow(Rational(2), deg) * factorial_q(d) * factorial_q(d);
  report.checks.push_back({"laplacian_power", lap == lap_expected, 0.0});

  // Hence Re q_d(z) = catalan(d) Q_{q_d}(z, zbar) at z = (1, i), exactly.
  Eigen::Matrix<RationalComplex, Eigen::Dynamic, 1> z(2);
  z(0) = RationalComplex(1, 0);
  z(1) = RationalComplex(0, 1);
  const Rational herm = hermitian_biform(q, z);
  const bool ratio_ok = catalan(d) * herm == expected;
  report.checks.push_back({"catalan_ratio", ratio_ok, ratio_ok ? 0.0 : 1.0});
  return report;
}

PdWitness build_p_d_even(int d, long grid) {
  if (d % 2 != 0) throw Error(Errc::DOdd, "witness family needs even d");
  if (d < 4) throw Error(Errc::BadInput, "witness family needs d >= 4");
  if (grid < 64) throw Error(Errc::BadInput, "grid too coarse");
  const int deg = 2 * d;

  const Form<Rational> x = var_form(0);
  const Form<Rational> y = var_form(1);
  const Form<Rational> s = Rational(1, 2) * (pow(x + y, deg) + pow(x - y, deg));
  Form<Rational> mix(2, deg);
  for (int k = 1; k <= d - 1; ++k) mix.accumulate(Exponents{2 * k, deg - 2 * k}, Rational(1));

  // Second-derivative forms once; everything below is 2x2 matrix work.
  const Form<double> sd = to_float_form(s);
  const Form<double> md = to_float_form(mix);
  const Form<double> sxx = derivative(derivative(sd, 0), 0);
  const Form<double> sxy = derivative(derivative(sd, 0), 1);
  const Form<double> syy = derivative(derivative(sd, 1), 1);
  const Form<double> mxx = derivative(derivative(md, 0), 0);
  const Form<double> mxy = derivative(derivative(md, 0), 1);
  const Form<double> myy = derivative(derivative(md, 1), 1);

  const auto hessians = [&](double t, Eigen::Matrix2d& hs, Eigen::Matrix2d& hm) {
    Eigen::VectorXd pt(2);
    pt << std::sqrt(2.0) * std::cos(t), std::sqrt(2.0) * std::sin(t);
    hs << evaluate(sxx, pt), evaluate(sxy, pt), evaluate(sxy, pt), evaluate(syy, pt);
    hm << evaluate(mxx, pt), evaluate(mxy, pt), evaluate(mxy, pt), evaluate(myy, pt);
  };
  const auto min_eig2 = [](const Eigen::Matrix2d& h) {
    const double mean = 0.5 * (h(0, 0) + h(1, 1));
    const double dev = std::hypot(0.5 * (h(0, 0) - h(1, 1)), h(0, 1));
    return mean - dev;
  };

  // Largest lambda with hs + lambda hm PSD; +inf when hm itself is PSD
  // (the arcs U around the diagonals, where no direction fights convexity).
  const double cap = 1048576.0;
  const auto margin = [&](double t) {
    Eigen::Matrix2d hs, hm;
    hessians(t, hs, hm);
    if (min_eig2(hm) > 1e-12) return std::numeric_limits<double>::infinity();
    double lo = 0.0, hi = cap;
    if (min_eig2(hs + hi * hm) >= 0.0) return std::numeric_limits<double>::infinity();
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (min_eig2(hs + mid * hm) >= 0.0 ? lo : hi) = mid;
    }
    return lo;
  };

  std::vector<double> rho(grid);
  for (long i = 0; i < grid; ++i) rho[i] = margin(2.0 * kPi * i / grid);

  // Golden-section refinement around every grid-local minimum.
  const double golden = 0.6180339887498948482;
  double best = std::numeric_limits<double>::infinity();
  for (long i = 0; i < grid; ++i) {
    const double prev = rho[(i + grid - 1) % grid];
    const double next = rho[(i + 1) % grid];
    if (!std::isfinite(rho[i]) || rho[i] > prev || rho[i] > next) continue;
    double a = 2.0 * kPi * (i - 1) / grid;
    double b = 2.0 * kPi * (i + 1) / grid;
    double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
    double f1 = margin(x1), f2 = margin(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        b = x2, x2 = x1, f2 = f1;
        x1 = b - golden * (b - a);
        f1 = margin(x1);
      } else {
        a = x1, x1 = x2, f1 = f2;
        x2 = a + golden * (b - a);
        f2 = margin(x2);
      }
    }
    best = std::min({best, f1, f2, rho[i]});
  }
  if (!std::isfinite(best)) best = cap;

  // Back away from the boundary, then land on a dyadic rational so the
  // witness carries exact coefficients.
  const long long ticks = static_cast<long long>(std::floor(0.99 * best * 1048576.0));
  if (ticks < 1) throw Error(Errc::GenerationFailed, "no positive convexity margin found");
  const Rational alpha(ticks, 1048576);
  const Form<Rational> p = s + alpha * mix;

  PdWitness witness;
  witness.p = p;
  witness.alpha_exact = alpha;
  witness.alpha = scalar_cast<double>(alpha);

  // Exact bookkeeping before the SDP gets a say.
  Eigen::Matrix<Rational, Eigen::Dynamic, 1> e1q(2), e2q(2), ones(2);
  e1q << Rational(1), Rational(0);
  e2q << Rational(0), Rational(1);
  ones << Rational(1), Rational(1);
  const bool ends_ok = evaluate(p, e1q) == Rational(1) && evaluate(p, e2q) == Rational(1);
  witness.checks.checks.push_back({"endpoint_values", ends_ok, ends_ok ? 0.0 : 1.0});

  const auto hq11 = hessian(mix, ones);
  const Rational lead = Rational(d * (d - 1)) / Rational(3);
  const bool hess_ok = hq11(0, 0) == lead * Rational(4 * d - 5) &&
                       hq11(1, 1) == lead * Rational(4 * d - 5) &&
                       hq11(0, 1) == lead * Rational(2 * d + 2) && hq11(0, 1) == hq11(1, 0);
  witness.checks.checks.push_back({"mixing_hessian_at_diagonal", hess_ok, hess_ok ? 0.0 : 1.0});

  Eigen::VectorXd e1(2), e2(2);
  e1 << 1.0, 0.0;
  e2 << 0.0, 1.0;
  const Rational expected_biform = Rational(1) + alpha / Rational(binomial(deg, d));
  const Rational exact_biform = biform(p, e1q, e2q);
  const bool biform_ok = exact_biform == expected_biform && expected_biform > Rational(1);
  witness.checks.checks.push_back({"biform_exceeds_one", biform_ok, biform_ok ? 0.0 : 1.0});
  witness.gcs_value = scalar_cast<double>(exact_biform);

  const MembershipResult conv = is_convex_bivariate(p);
  if (!conv.member)
    throw Error(Errc::ConvexityRefutation,
                "constructed witness failed its convexity certificate");
  witness.checks.checks.push_back({"convexity_certificate", true, conv.certificate.residual});

  const ScanResult scan = convexity_scan(to_float_form(p), std::max(grid, 4096L));
  witness.checks.checks.push_back(
      make_check("hessian_scan", std::max(0.0, -scan.min_eig), 1e-7 * max_abs_coeff(p)));
  return witness;
}

double a4_minpoly(double t) {
  return ((t - 33.0 / 35.0) * t - 17.0 / 245.0) * t + 13.0 / 42875.0;
}

A4Report verify_A4_minpoly(double value) {
  A4Report report;
  report.minpoly_residual = std::abs(a4_minpoly(value));

  // The real root near 1.011, by bisection on a fixed sign-changing bracket.
  double lo = 1.0, hi = 1.02;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (a4_minpoly(mid) < 0.0 ? lo : hi) = mid;
  }
  report.nearest_root = 0.5 * (lo + hi);

  // Radical reconstruction through the principal complex cube root.
  const std::complex<double> omega(14336.0, 14336.0 * std::sqrt(3.0) / 9.0);
  const std::complex<double> root3 = std::pow(omega, 1.0 / 3.0);
  const std::complex<double> closed = root3 / 70.0 + 128.0 / 15.0 / root3 + 11.0 / 35.0;
  report.omega_reconstruction = std::abs(closed.imag()) < 1e-10
                                    ? std::abs(closed.real() - report.nearest_root)
                                    : 1.0;
  report.consistent = report.minpoly_residual <= 1e-6 &&
                      report.omega_reconstruction <= 1e-8 &&
                      std::abs(value - report.nearest_root) <= 1e-6;
  return report;
}

CheckReport gcs_property_check(const Form<double>& p, int samples, double A, double B,
                               uint64_t seed) {
  if (samples < 1) throw Error(Errc::BadInput, "needs at least one sample");
  if (p.degree() % 2 != 0) throw Error(Errc::OddDegree, "needs an even-degree form");
  const int n = p.vars();
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0x51ED270BULL);
  std::normal_distribution<double> gauss(0.0, 1.0);

  double cs_real = 0.0, lin_real = 0.0, cs_complex = 0.0, lin_complex = 0.0;
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd xv(n), yv(n);
    for (int i = 0; i < n; ++i) {
      xv(i) = gauss(rng);
      yv(i) = gauss(rng);
    }
    if (xv.norm() < 1e-9 || yv.norm() < 1e-9) continue;
    xv.normalize();
    yv.normalize();

    const double px = evaluate(p, xv);
    const double py = evaluate(p, yv);
    const double q = biform(p, xv, yv);
    cs_real = std::max(cs_real, q - A * std::sqrt(std::max(px, 0.0) * std::max(py, 0.0)));
    lin_real = std::max(lin_real, 2.0 * q - A * (px + py));

    Eigen::VectorXcd zv(n);
    for (int i = 0; i < n; ++i) zv(i) = std::complex<double>(xv(i), yv(i));
    const std::complex<double> pz = evaluate(p, zv);
    const double herm = hermitian_biform(p, zv);
    cs_complex = std::max(cs_complex, std::abs(pz) - B * herm);
    lin_complex = std::max(lin_complex, pz.real() - B * herm);
  }

  CheckReport report;
  report.checks.push_back(make_check("cauchy_schwarz_real", std::max(0.0, cs_real), 1e-9));
  report.checks.push_back(make_check("linearized_real", std::max(0.0, lin_real), 1e-9));
  report.checks.push_back(make_check("cauchy_schwarz_complex", std::max(0.0, cs_complex), 1e-9));
  report.checks.push_back(make_check("linearized_complex", std::max(0.0, lin_complex), 1e-9));
  return report;
}

DualElement make_ell_a(int d, const Rational& A) {
  if (d < 1) throw Error(Errc::BadInput, "needs d >= 1");
  DualElement out;
  out.d = d;
  out.kind = 'A';
  out.constant = A;
  Form<Rational> e(2, 2 * d);
  e.accumulate(Exponents{2 * d, 0}, A);
  e.accumulate(Exponents{0, 2 * d}, A);
  e.accumulate(Exponents{d, d}, Rational(-2));
  out.expansion = e;
  return out;
}

DualElement make_s_b(int d, const Rational& B) {
  if (d < 1) throw Error(Errc::BadInput, "needs d >= 1");
  DualElement out;
  out.d = d;
  out.kind = 'B';
  out.constant = B;
  out.expansion =
      B * pow(pow(var_form(0), 2) + pow(var_form(1), 2), d) - real_part_z_pow(d);
  return out;
}

}  // namespace cfl::gcs
