#pragma once

// Cayley-Bacharach certificates for sum-of-squares membership.
//
// Eight points cut out by three independent quadrics in P^3 (or nine points
// from two cubics in P^2) satisfy a unique linear relation among the outer
// powers of their coordinate vectors.  A nonnegative quartic (resp. sextic)
// is sos exactly when, for every such configuration, the value at the
// distinguished point is dominated by the values at the rest:
//
//   real kind:     v1 v1' = sum_i a_i v_i v_i'    =>  p(v1) <= (sum_i sqrt(p(v_i)))^2
//   complex pair:  z z' + conj(z) conj(z)' = ...  =>  2(|p(z)| + Re p(z)) <= (...)^2
//
// This header checks those relations and conditions, reproduces the classic
// quartic that fails them, verifies the Hoelder-type closed forms behind the
// right-hand side, and replays the chain of inequalities that derives the
// conditions from the generalized Cauchy-Schwarz inequalities.

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cfl/cones.hpp"
#include "cfl/form.hpp"
#include "cfl/gcs.hpp"

namespace cfl::cb {

// One point/sign configuration.  For the real kind the distinguished point
// v1 is real_points[0] and the signs line up with real_points[1..]; for the
// complex-pair kind the left side is z z' + conj(z) conj(z)' and the signs
// line up with all of real_points.
struct CayleyBacharachConfig {
  int n = 4;             // 4 with tensor_order 2 (quartics), 3 with 3 (sextics)
  int tensor_order = 2;  // 2: outer squares v v', 3: outer cubes
  bool complex_pair = false;
  std::vector<Eigen::VectorXd> real_points;
  Eigen::VectorXcd complex_point;  // only read when complex_pair is true
  std::vector<int> signs;          // entries +1 / -1
};

// Frobenius residual of the signed tensor relation.  Accepts any consistent
// shape (the full count invariants are the generator's and the fixtures'
// business); throws ShapeMismatch on inconsistent dimensions or sign counts.
double check_relation(const CayleyBacharachConfig& cfg);

// Enforces the theorem-grade point counts on top of shape consistency:
// 8 real / 1+6 for quartics, 9 real / 1+7 for sextics.
void require_certificate_counts(const CayleyBacharachConfig& cfg);

struct ConditionResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

// p(v1) vs (sum sqrt p(v_i))^2 for a real-kind configuration.  Throws
// NegativeEvaluation when p dips below the negativity floor at any point.
ConditionResult check_real_condition(const Form<double>& p, const CayleyBacharachConfig& cfg);

// 2(|p(z)| + Re p(z)) vs the same right-hand side, complex-pair kind.
ConditionResult check_complex_condition(const Form<double>& p, const CayleyBacharachConfig& cfg);

// The quaternary quartic sum x_i^4 + sum_{distinct i,j,k} x_i^2 x_j x_k
// + 4 x1 x2 x3 x4 together with the cube configuration V = {+-1}^3 x {1}
// that witnesses it is not sos: the relation holds exactly while the real
// condition fails 32 <= 0.
std::pair<Form<Rational>, CayleyBacharachConfig> example_nonsos_quartic();

// (sum sqrt x_i)^2 — the maximum of sum a_i x_i over positive a with
// sum 1/a_i = 1.  Throws NegativeInput on negative entries.
double holder_closed_form(const Eigen::VectorXd& xs);

// 2(|z| + Re z) — the maximum of a z + conj(a z) over complex a with
// 1/a + 1/conj(a) = 1.
double holder_complex(std::complex<double> z);

// Samples random feasible multipliers against both closed forms and checks
// the stated optimizers reach them.
gcs::CheckReport verify_holder(int samples, std::uint64_t seed = 0);

// The full membership argument for a quaternary quartic: sampled generalized
// Cauchy-Schwarz inequalities at A = B = 1, the certificate conditions
// replayed through each supplied configuration, and a Gram certificate.
struct PipelineReport {
  gcs::CheckReport gcs_checks;
  std::vector<gcs::CrossCheck> config_checks;
  MembershipResult sos;

  bool all_pass() const {
    if (!gcs_checks.all_pass() || !sos.member) return false;
    for (const auto& c : config_checks)
      if (!c.pass) return false;
    return true;
  }
};

PipelineReport main_theorem_pipeline(const Form<double>& p, int samples,
                                     const std::vector<CayleyBacharachConfig>& configs,
                                     std::uint64_t seed = 0);

// Desk-scale configuration search: random points and signs corrected by a
// Gauss-Newton loop until the signed sum of outer squares becomes a rank-one
// PSD matrix, whose factor becomes v1.  Deterministic per seed; throws
// GenerationFailed when the retry budget is exhausted.
CayleyBacharachConfig generate_cb_config(std::uint64_t seed);

}  // namespace cfl::cb
