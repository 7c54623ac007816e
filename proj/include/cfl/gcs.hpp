#pragma once

// Sharp constants for the generalized Cauchy-Schwarz inequalities on convex
// bivariate forms, plus the exact certificates surrounding them.
//
// For a convex form p of degree 2d in two variables, write Q_p(x, y) for the
// symmetric biform obtained by polarizing p into two groups of d arguments
// (see biform() in form.hpp).  Two families of sharp inequalities hold:
//
//   real:     Q_p(x, y)  <=  A_d * sqrt(p(x) p(y))
//   complex:  |p(z)|     <=  B_d * Q_p(z, zbar)      (z in C^2)
//
// This header computes the optimal constants A_d and B_d by semidefinite
// programming over the sos-convex cone, verifies the closed forms that are
// known exactly (B_d equals the d-th Catalan number; A_4 is an algebraic
// number of degree three), and constructs the extremal forms that make the
// inequalities tight.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cfl/cones.hpp"
#include "cfl/form.hpp"
#include "cfl/scalars.hpp"
#include "cfl/sdp.hpp"

namespace cfl::gcs {

using cfl::Form;
using cfl::Rational;

// ---------------------------------------------------------------------------
// Reports

// One named consistency check with its numeric residual.
struct CrossCheck {
  std::string name;
  bool pass = false;
  double residual = 0.0;  // magnitude of the violated/verified quantity
};

struct CheckReport {
  std::vector<CrossCheck> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

// Result of one constant computation.
struct GcsReport {
  int d = 0;
  char which = '?';  // 'A' or 'B'
  double value = 0.0;
  double sdp_gap = 0.0;  // duality gap reported by the solver
  // The optimizing form q (coefficients of x^(2d-k) y^k, k = 0..2d), when the
  // solve produced one.
  std::optional<Form<double>> extremal_form;
  std::vector<CrossCheck> cross_checks;

  bool all_pass() const {
    for (const auto& c : cross_checks)
      if (!c.pass) return false;
    return true;
  }
};

// A convex form p_d of even degree 2d >= 8 witnessing Q_p(e1, e2) > 1 with
// p(e1) = p(e2) = 1, i.e. a strict violation of the naive constant A = 1.
struct PdWitness {
  Form<Rational> p;          // the witness, exact
  double alpha = 0.0;        // perturbation weight used
  Rational alpha_exact = 0;  // the same weight as stored in p
  double gcs_value = 0.0;    // Q_p(e1, e2) / sqrt(p(e1) p(e2)) > 1
  CheckReport checks;
};

// Verification record for the degree-three algebraic value of A_4.
struct A4Report {
  double minpoly_residual = 0.0;       // |m(value)|
  double omega_reconstruction = 0.0;   // |closed form - root| from the radical
  double nearest_root = 0.0;           // root of m nearest the tested value
  bool consistent = false;
};

// One element of the dual certificate pair: the forms
//   ell_A(x, y) = A (x^{2d} + y^{2d}) - 2 x^d y^d        (kind 'A')
//   s_B(x, y)   = B (x^2 + y^2)^d - Re (x + i y)^{2d}    (kind 'B')
// which are nonnegative exactly when the constants are valid.
struct DualElement {
  int d = 0;
  char kind = '?';
  Rational constant = 0;
  Form<Rational> expansion;
};

// ---------------------------------------------------------------------------
// Constants

// Catalan number C(2(d-1), d-1) / d; the exact value of B_d.
Rational catalan(int d);

// Maximize 2 Q_q(e1, e2) over sos-convex bivariate forms q of degree 2d with
// q(e1) + q(e2) = 1.  The optimum equals A_d.  Throws SolverFailure if the
// SDP does not reach optimality at the requested tolerance.
GcsReport compute_A_star(int d, double sdp_tol = 1e-8);

// Maximize Re q(1, i) over sos-convex bivariate forms q of degree 2d with
// Q_q(z, zbar) = 1 at z = (1, i).  The optimum equals B_d = catalan(d).
GcsReport compute_B_star(int d, double sdp_tol = 1e-8);

// ---------------------------------------------------------------------------
// Exact decompositions and identities

// Verifies, in exact rational arithmetic, the sum-of-squares factorizations
// of the operators x^{2d} + y^{2d} - 2 x^d y^d for d = 1, 2, 3:
//   d=1:  (x - y)^2
//   d=2:  (x - y)^2 (x + y)^2
//   d=3:  (x - y)^2 (x^4 + y^4 + (x + y)^4) / 2
// plus a deliberately corrupted variant as a negative control.
CheckReport verify_exact_decompositions();

// Samples the trigonometric sum-of-squares identity behind B_d: with
// c_k = cos(k pi / d), s_k = sin(k pi / d),
//   catalan(d) (x^2 + y^2)^d - Re (x + i y)^{2d}
//     = (4^d / 2d) sum_k (-s_k x + c_k y)^2 (c_k x + s_k y)^{2d - 2},
// and the equivalent circle average
//   sum_k sin^2(t - k pi/d) cos^{2d-2}(t - k pi/d)
//     = (2d / 4^d) (catalan(d) - cos 2dt).
CheckReport verify_prop_complex_cs(int d, int samples, uint64_t seed = 0);

// The extremal form for B_d:  q_d = Re (x + i y)^{2d} + (2d - 1) (x^2+y^2)^d.
Form<Rational> build_q_d(int d);

// Exact checks on q_d: convexity, the value q_d(1, i) = 2^{2d-1}, the
// Laplacian power Delta^d q_d = (2d - 1) 2^{2d} d!^2, and the hermitian
// biform ratio q_d(1, i) / Q_{q_d}(z, zbar) = catalan(d) at z = (1, i).
CheckReport verify_q_d(int d);

// The witness family for A_d > 1 at even d >= 4:
//   p_d = ((x+y)^{2d} + (x-y)^{2d}) / 2 + alpha sum_{k=1}^{d-1} x^{2k} y^{2d-2k}
// with alpha > 0 chosen (by a grid-plus-refinement search over the critical
// circle) small enough to preserve convexity.  Throws DOdd for odd d.
PdWitness build_p_d_even(int d, long grid = 4096);

// The minimal polynomial of A_4: t^3 - (33/35) t^2 - (17/245) t + 13/42875.
double a4_minpoly(double t);

// Checks `value` against the minimal polynomial and against the closed
// radical form  A_4 = omega^{1/3}/70 + (128/15) omega^{-1/3} + 11/35 with
// omega = 14336 + 14336 sqrt(3)/9 i.
A4Report verify_A4_minpoly(double value);

// Samples the four inequalities (real/complex Cauchy-Schwarz and their
// arithmetic-mean variants) on random points for a given convex form and
// candidate constants.  Returns the worst violation found per inequality.
CheckReport gcs_property_check(const Form<double>& p, int samples, double A,
                               double B, uint64_t seed = 0);

// The dual certificate forms described above, expanded exactly.
DualElement make_ell_a(int d, const Rational& A);
DualElement make_s_b(int d, const Rational& B);

}  // namespace cfl::gcs
