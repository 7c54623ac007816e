#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include "cfl/form.hpp"
#include "cfl/sdp.hpp"

namespace cfl {

// PSD Gram factorization of a form over an explicit monomial basis:
// p(x) = z(x)^T G z(x) with z the column of basis monomials.
struct GramCertificate {
  std::vector<Exponents> basis;  // one multi-index per Gram row/column
  Eigen::MatrixXd G;             // symmetric, numerically PSD
  // Max coefficient mismatch of z^T G z against the target, measured with
  // the target normalized to unit max coefficient (the solve runs at that
  // scale, so the bound is meaningful for inputs of any magnitude).
  double residual = 0.0;
};

// Dual object reported when a membership SDP is infeasible. This is a
// separating functional on coefficient space and is numerical evidence
// only; exact refutations come from point-evaluation certificates.
struct DualWitness {
  Eigen::VectorXd equality_multipliers;
  std::vector<Eigen::MatrixXd> blocks;
  std::string note;
};

struct MembershipResult {
  bool member = false;
  GramCertificate certificate;  // populated iff member
  DualWitness witness;          // populated iff !member
  sdp::Status solver_status = sdp::Status::NumericalFailure;
  int iterations = 0;
};

struct MembershipOptions {
  double sdp_tol = 1e-8;
  int max_iterations = 200;
  // Interior regularization: membership is decided for target + shift * sum
  // of squared basis monomials, restoring a Slater point for boundary
  // targets. Kept well below the certificate residual tolerance.
  double interior_shift = 1e-8;
};

// Decides p in Sigma_{n,2d} by solving the Gram feasibility SDP over the
// full degree-d monomial basis. Throws OddDegree for odd-degree inputs and
// SolverFailure if the interior-point method ends without a clean verdict.
MembershipResult is_sos(const Form<Rational>& p, const MembershipOptions& options = {});
MembershipResult is_sos(const Form<double>& p, const MembershipOptions& options = {});

// Decides whether u^T Hess(p)(x) u is a sum of squares in (x, u), over the
// bilinear basis {u_s * x^J : |J| = d-1}. Sufficient for convexity in any
// dimension. Throws OddDegree; requires degree >= 2.
MembershipResult is_sos_convex(const Form<Rational>& p, const MembershipOptions& options = {});
MembershipResult is_sos_convex(const Form<double>& p, const MembershipOptions& options = {});

// Decides convexity of a bivariate form of degree 2d. For n = 2 convexity
// and sos-convexity coincide, so the spectrahedral test is exact: the
// certificate is a PSD Q of size 2d x 2d with u^T Hess(q) u = z^T Q z,
// z = (u1 x^{d-1}, u1 x^{d-2} y, ..., u1 y^{d-1}, u2 x^{d-1}, ..., u2 y^{d-1}).
// Throws NotBivariate for n != 2.
MembershipResult is_convex_bivariate(const Form<Rational>& q, const MembershipOptions& options = {});
MembershipResult is_convex_bivariate(const Form<double>& q, const MembershipOptions& options = {});

// The sos-convexity monomial basis above, as exponent vectors over the 2n
// variables (x_1..x_n, u_1..u_n), s-major with x^J in canonical order.
// Exposed so other assemblies can share the exact indexing convention.
std::vector<Exponents> sos_convexity_basis(int n, int degree);

// u^T Hess(p)(x) u as an exact form in the 2n variables (x_1..x_n, u_1..u_n):
// quadratic in u, degree deg(p) - 2 in x. The target polynomial of the
// sos-convexity test, shared with the constant-computation assemblies.
Form<Rational> hessian_quadratic_form(const Form<Rational>& p);

// Minimum Hessian eigenvalue over a deterministic grid on the unit sphere.
struct ScanResult {
  double min_eig = 0.0;
  Eigen::VectorXd argmin;  // grid point attaining min_eig
  long grid_index = 0;     // index of that point in the scan order
};

// Scans grid_size sphere points (uniform angles for n = 2, a Fibonacci
// lattice for n = 3, a Halton-driven Gaussian map for n >= 4). A negative
// result below -1e-6 refutes convexity; a nonnegative sweep is evidence
// only for n > 2. Work may be split across `jobs` threads; the result is
// identical to the serial scan (min-reduction, first index wins ties).
ScanResult convexity_scan(const Form<double>& p, long grid_size, int jobs = 1);
ScanResult convexity_scan(const Form<Rational>& p, long grid_size, int jobs = 1);

// Random convex form sum_j c_j (a_j . x)^{2d} with c_j > 0 and near-unit
// directions a_j, both quantized to small rationals so the result is exact.
// Convex by construction; deterministic for a fixed seed.
Form<Rational> random_convex_form(int n, int d, int terms, std::uint64_t seed);

}  // namespace cfl
