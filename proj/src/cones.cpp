#include "cfl/cones.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <cstddef>
#include <future>
#include <map>
#include <numbers>
#include <random>
#include <utility>

#include "cfl/errors.hpp"

namespace cfl {
namespace {

using CoeffMap = std::map<Exponents, Rational, std::greater<Exponents>>;

// A Gram feasibility problem: find PSD G over `basis` with z^T G z = target.
// Variables are the upper-triangle entries of G; each monomial appearing in
// a pairwise basis product (or in the target) yields one equality row. The
// objective min tr(G) keeps the problem bounded and picks a compact point
// of the Gram spectrahedron.
struct GramAssembly {
  sdp::Problem problem;
  std::vector<Exponents> basis;
  double target_scale = 1.0;  // max |coefficient| of the original target
};

int upper_index(int B, int i, int j) { return i * B - i * (i - 1) / 2 + (j - i); }

Exponents pair_sum(const Exponents& a, const Exponents& b) {
  Exponents e = a;
  for (std::size_t t = 0; t < e.size(); ++t) e[t] += b[t];
  return e;
}

GramAssembly assemble_gram(const CoeffMap& target, std::vector<Exponents> basis,
                           double interior_shift) {
  const int B = static_cast<int>(basis.size());
  const int m = B * (B + 1) / 2;

  // Deterministic row order: descending lex over all monomials that occur.
  std::map<Exponents, int, std::greater<Exponents>> row_of;
  for (int i = 0; i < B; ++i)
    for (int j = i; j < B; ++j) row_of.try_emplace(pair_sum(basis[i], basis[j]), 0);
  for (const auto& [e, c] : target) row_of.try_emplace(e, 0);
  int next = 0;
  for (auto& [e, r] : row_of) r = next++;
  const int p = next;

  sdp::Problem prob;
  prob.c = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < B; ++i) prob.c(upper_index(B, i, i)) = 1.0;

  sdp::Block blk;
  blk.F0 = Eigen::MatrixXd::Zero(B, B);
  blk.F.assign(m, Eigen::MatrixXd::Zero(B, B));
  for (int i = 0; i < B; ++i)
    for (int j = i; j < B; ++j) {
      blk.F[upper_index(B, i, j)](i, j) = 1.0;
      blk.F[upper_index(B, i, j)](j, i) = 1.0;
    }
  prob.blocks.push_back(std::move(blk));

  // Solve at unit scale: the certificate tolerances are stated for
  // unit-scale inputs, and the interior-point accuracy is relative.
  double target_scale = 0.0;
  for (const auto& [e, c] : target)
    target_scale = std::max(target_scale, std::abs(scalar_cast<double>(c)));
  if (target_scale == 0.0) target_scale = 1.0;

  prob.A = Eigen::MatrixXd::Zero(p, m);
  prob.b = Eigen::VectorXd::Zero(p);
  for (const auto& [e, c] : target)
    prob.b(row_of.at(e)) = scalar_cast<double>(c) / target_scale;
  for (int i = 0; i < B; ++i)
    for (int j = i; j < B; ++j)
      prob.A(row_of.at(pair_sum(basis[i], basis[j])), upper_index(B, i, j)) += (i == j) ? 1.0 : 2.0;

  // Boundary targets (extremal forms, rank-deficient squares) have Gram
  // spectrahedra with empty interior, which starves the interior-point
  // method. Shift the target by delta * sum_i z_i^2: members gain the
  // Slater point G + delta*I while anything outside the cone by more than
  // delta stays outside. The shift is visible in the reported residual.
  if (interior_shift > 0)
    for (int i = 0; i < B; ++i)
      prob.b(row_of.at(pair_sum(basis[i], basis[i]))) += interior_shift;

  // Scale each equality row to unit max magnitude for solver conditioning.
  for (int r = 0; r < p; ++r) {
    const double s = std::max(prob.A.row(r).cwiseAbs().maxCoeff(), std::abs(prob.b(r)));
    if (s > 0) {
      prob.A.row(r) /= s;
      prob.b(r) /= s;
    }
  }
  return {std::move(prob), std::move(basis), target_scale};
}

GramCertificate extract_certificate(const GramAssembly& assembly, const sdp::Solution& sol,
                                    const CoeffMap& target) {
  const auto& basis = assembly.basis;
  const int B = static_cast<int>(basis.size());
  Eigen::MatrixXd G(B, B);
  for (int i = 0; i < B; ++i)
    for (int j = i; j < B; ++j) G(i, j) = G(j, i) = sol.y(upper_index(B, i, j));

  // Reconstruct z^T G z coefficient-wise at unit scale; the reported
  // residual is the mismatch after normalizing the target to unit max
  // coefficient, matching the solver's relative accuracy.
  std::map<Exponents, double, std::greater<Exponents>> recon;
  for (int i = 0; i < B; ++i)
    for (int j = i; j < B; ++j) recon[pair_sum(basis[i], basis[j])] += ((i == j) ? 1.0 : 2.0) * G(i, j);
  for (const auto& [e, c] : target)
    recon[e] -= scalar_cast<double>(c) / assembly.target_scale;
  double residual = 0.0;
  for (const auto& [e, r] : recon) residual = std::max(residual, std::abs(r));

  GramCertificate cert;
  cert.basis = basis;
  cert.G = assembly.target_scale * G;
  cert.residual = residual;
  return cert;
}

MembershipResult run_membership(const GramAssembly& assembly, const CoeffMap& target,
                                const MembershipOptions& options, const char* what,
                                const char* refusal_note) {
  sdp::SolveOptions sopt;
  sopt.tol = options.sdp_tol;
  sopt.max_iterations = options.max_iterations;
  const sdp::Solution sol = sdp::solve(assembly.problem, sopt);

  MembershipResult out;
  out.solver_status = sol.status;
  out.iterations = sol.iterations;
  switch (sol.status) {
    case sdp::Status::Optimal:
      out.member = true;
      out.certificate = extract_certificate(assembly, sol, target);
      break;
    case sdp::Status::Infeasible:
      out.member = false;
      out.witness.equality_multipliers = sol.eq_multipliers;
      out.witness.blocks = sol.dual_blocks;
      out.witness.note = refusal_note;
      break;
    default: {
      // Boundary targets make the dual optimum huge, so the solver can run
      // out of precision before certifying min-trace optimality; the primal
      // iterate it hands back is often feasible long before that. A Gram
      // certificate is self-validating, so accept it on its own evidence.
      if (sol.y.size() == assembly.problem.num_vars()) {
        GramCertificate cert = extract_certificate(assembly, sol, target);
        const double scale = 1.0 + cert.G.cwiseAbs().maxCoeff();
        if (std::getenv("CFL_CONES_TRACE")) {
          std::fprintf(stderr, "[cones] salvage residual=%.3e mineig=%.3e scale=%.3e\n",
                       cert.residual, sdp::min_eigenvalue(cert.G), scale);
        }
        if (cert.residual <= 1e-7 && sdp::min_eigenvalue(cert.G) >= -1e-8 * scale) {
          out.member = true;
          out.certificate = std::move(cert);
          return out;
        }
      }
      throw Error(Errc::SolverFailure, std::string(what) + ": " + sol.message);
    }
  }
  return out;
}

constexpr const char* kNumericalRefusal =
    "numerical infeasibility certificate; an exact refutation needs a point-evaluation argument";
constexpr const char* kConvexityRefusal =
    "numerical infeasibility certificate; for n = 2 infeasibility refutes convexity";

// --- deterministic sphere grids -------------------------------------------

double halton(long index, int base) {
  double f = 1.0, r = 0.0;
  for (long i = index; i > 0; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                           59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

Eigen::VectorXd sphere_point(int n, long i, long grid) {
  Eigen::VectorXd x(n);
  if (n == 2) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(grid);
    x << std::cos(theta), std::sin(theta);
    return x;
  }
  if (n == 3) {
    // Fibonacci lattice: evenly spread latitudes, golden-angle longitudes.
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double golden = 0.6180339887498948482;
    const double phi = 2.0 * std::numbers::pi * std::fmod(static_cast<double>(i) * golden, 1.0);
    x << r * std::cos(phi), r * std::sin(phi), z;
    return x;
  }
  // n >= 4: push a Halton point through the Box-Muller map to get a
  // low-discrepancy Gaussian vector, then project to the sphere.
  if (2 * ((n + 1) / 2) > static_cast<int>(std::size(kPrimes)))
    throw Error(Errc::BadInput, "sphere grid supports at most 31 variables");
  const int pairs = (n + 1) / 2;
  Eigen::VectorXd g(2 * pairs);
  for (int q = 0; q < pairs; ++q) {
    const double u1 = std::max(halton(i + 1, kPrimes[2 * q]), 1e-15);
    const double u2 = halton(i + 1, kPrimes[2 * q + 1]);
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    g(2 * q) = rad * std::cos(ang);
    g(2 * q + 1) = rad * std::sin(ang);
  }
  x = g.head(n);
  const double norm = x.norm();
  if (norm < 1e-12) {
    x.setZero();
    x(0) = 1.0;
    return x;
  }
  return x / norm;
}

}  // namespace

Form<Rational> hessian_quadratic_form(const Form<Rational>& p) {
  const int n = p.vars();
  if (p.degree() < 2) throw Error(Errc::BadInput, "needs degree >= 2");
  Form<Rational> target(2 * n, p.degree());
  for (int s = 0; s < n; ++s) {
    const Form<Rational> ds = derivative(p, s);
    for (int t = s; t < n; ++t) {
      const Form<Rational> dst = derivative(ds, t);
      const Rational mult(s == t ? 1 : 2);
      for (const auto& [e, c] : dst.terms()) {
        Exponents full = e;
        full.resize(2 * n, 0);
        full[n + s] += 1;
        full[n + t] += 1;
        target.accumulate(full, mult * c);
      }
    }
  }
  return target;
}

std::vector<Exponents> sos_convexity_basis(int n, int degree) {
  if (n < 1) throw Error(Errc::BadInput, "need n >= 1");
  if (degree < 2 || degree % 2 != 0)
    throw Error(Errc::OddDegree, "sos-convexity basis needs even degree >= 2");
  const int d = degree / 2;
  std::vector<Exponents> basis;
  for (int s = 0; s < n; ++s)
    for (const auto& J : monomials_of_degree(n, d - 1)) {
      Exponents e = J;
      e.resize(2 * n, 0);
      e[n + s] = 1;
      basis.push_back(std::move(e));
    }
  return basis;
}

MembershipResult is_sos(const Form<Rational>& p, const MembershipOptions& options) {
  if (p.degree() % 2 != 0) throw Error(Errc::OddDegree, "sos membership needs even degree");
  const CoeffMap target(p.terms().begin(), p.terms().end());
  const GramAssembly assembly = assemble_gram(
      target, monomials_of_degree(p.vars(), p.degree() / 2), options.interior_shift);
  return run_membership(assembly, target, options, "sos membership solve failed",
                        kNumericalRefusal);
}

MembershipResult is_sos(const Form<double>& p, const MembershipOptions& options) {
  return is_sos(to_exact_form(p), options);
}

MembershipResult is_sos_convex(const Form<Rational>& p, const MembershipOptions& options) {
  if (p.degree() % 2 != 0) throw Error(Errc::OddDegree, "sos-convexity needs even degree");
  if (p.degree() < 2) throw Error(Errc::BadInput, "sos-convexity needs degree >= 2");
  const Form<Rational> hq = hessian_quadratic_form(p);
  const CoeffMap target(hq.terms().begin(), hq.terms().end());
  const GramAssembly assembly =
      assemble_gram(target, sos_convexity_basis(p.vars(), p.degree()), options.interior_shift);
  return run_membership(assembly, target, options, "sos-convexity solve failed",
                        kNumericalRefusal);
}

MembershipResult is_sos_convex(const Form<double>& p, const MembershipOptions& options) {
  return is_sos_convex(to_exact_form(p), options);
}

MembershipResult is_convex_bivariate(const Form<Rational>& q, const MembershipOptions& options) {
  if (q.vars() != 2) throw Error(Errc::NotBivariate, "convexity test defined for n = 2");
  if (q.degree() % 2 != 0) throw Error(Errc::OddDegree, "convexity test needs even degree");
  if (q.degree() < 2) throw Error(Errc::BadInput, "convexity test needs degree >= 2");
  const Form<Rational> hq = hessian_quadratic_form(q);
  const CoeffMap target(hq.terms().begin(), hq.terms().end());
  const GramAssembly assembly =
      assemble_gram(target, sos_convexity_basis(2, q.degree()), options.interior_shift);
  return run_membership(assembly, target, options, "bivariate convexity solve failed",
                        kConvexityRefusal);
}

MembershipResult is_convex_bivariate(const Form<double>& q, const MembershipOptions& options) {
  return is_convex_bivariate(to_exact_form(q), options);
}

ScanResult convexity_scan(const Form<double>& p, long grid_size, int jobs) {
  const int n = p.vars();
  if (n < 2) throw Error(Errc::DimensionMismatch, "convexity scan needs n >= 2");
  if (grid_size < 1) throw Error(Errc::BadInput, "grid size must be positive");

  // Build the upper-triangle second derivatives once, then evaluate per point.
  std::vector<Form<double>> hess;
  hess.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int s = 0; s < n; ++s) {
    const Form<double> ds = derivative(p, s);
    for (int t = s; t < n; ++t) hess.push_back(derivative(ds, t));
  }

  auto scan_range = [&](long lo, long hi) {
    ScanResult best;
    best.min_eig = std::numeric_limits<double>::infinity();
    best.grid_index = -1;
    Eigen::MatrixXd H(n, n);
    for (long i = lo; i < hi; ++i) {
      const Eigen::VectorXd x = sphere_point(n, i, grid_size);
      int k = 0;
      for (int s = 0; s < n; ++s)
        for (int t = s; t < n; ++t) {
          H(s, t) = H(t, s) = evaluate(hess[k], x);
          ++k;
        }
      const double eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                             H, Eigen::EigenvaluesOnly)
                             .eigenvalues()(0);
      if (eig < best.min_eig) {
        best.min_eig = eig;
        best.argmin = x;
        best.grid_index = i;
      }
    }
    return best;
  };

  const int workers = std::clamp(jobs, 1, 64);
  ScanResult best;
  if (workers == 1 || grid_size < 2 * workers) {
    best = scan_range(0, grid_size);
  } else {
    std::vector<std::future<ScanResult>> parts;
    for (int w = 0; w < workers; ++w) {
      const long lo = grid_size * w / workers;
      const long hi = grid_size * (w + 1) / workers;
      parts.push_back(std::async(std::launch::async, scan_range, lo, hi));
    }
    best.min_eig = std::numeric_limits<double>::infinity();
    best.grid_index = -1;
    for (auto& part : parts) {
      ScanResult r = part.get();
      if (r.grid_index < 0) continue;
      // Same reduction as the serial scan: strict improvement, or an equal
      // value at an earlier grid index.
      if (r.min_eig < best.min_eig ||
          (r.min_eig == best.min_eig && r.grid_index < best.grid_index)) {
        best = std::move(r);
      }
    }
  }
  if (best.grid_index < 0) throw Error(Errc::BadInput, "empty scan");
  return best;
}

ScanResult convexity_scan(const Form<Rational>& p, long grid_size, int jobs) {
  return convexity_scan(to_float_form(p), grid_size, jobs);
}

Form<Rational> random_convex_form(int n, int d, int terms, std::uint64_t seed) {
  if (n < 1 || d < 1) throw Error(Errc::BadInput, "need n >= 1 and d >= 1");
  if (terms < 1) throw Error(Errc::BadInput, "need terms >= 1");

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> amp(0.5, 2.0);

  Form<Rational> acc(n, 2 * d);
  for (int j = 0; j < terms; ++j) {
    Eigen::VectorXd a(n);
    double norm = 0.0;
    do {
      for (int i = 0; i < n; ++i) a(i) = gauss(gen);
      norm = a.norm();
    } while (norm < 1e-6);
    a /= norm;

    // Quantize the unit direction to 1/1024ths so exact powering keeps the
    // coefficient denominators small.
    std::vector<std::pair<Exponents, Rational>> linear;
    for (int i = 0; i < n; ++i) {
      const long num = std::lround(a(i) * 1024.0);
      if (num == 0) continue;
      Exponents e(n, 0);
      e[i] = 1;
      linear.emplace_back(std::move(e), Rational(num, 1024));
    }
    if (linear.empty()) {
      Exponents e(n, 0);
      e[0] = 1;
      linear.emplace_back(std::move(e), Rational(1));
    }
    const Form<Rational> la = Form<Rational>::from_terms(n, 1, linear);
    Form<Rational> power = la;
    for (int t = 1; t < 2 * d; ++t) power = power * la;

    const Rational c(std::lround(amp(gen) * 64.0), 64);
    acc = acc + c * power;
  }
  return acc;
}

}  // namespace cfl
