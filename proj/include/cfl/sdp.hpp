#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "cfl/errors.hpp"

namespace cfl::sdp {

// One linear matrix inequality block: F0 + sum_i y_i F[i] must be PSD.
struct Block {
  Eigen::MatrixXd F0;
  std::vector<Eigen::MatrixXd> F;  // one coefficient matrix per variable

  int size() const { return static_cast<int>(F0.rows()); }
};

// minimize c'y  subject to  A y = b  and every block's LMI.
struct Problem {
  Eigen::VectorXd c;
  std::vector<Block> blocks;
  Eigen::MatrixXd A;  // zero rows allowed
  Eigen::VectorXd b;

  int num_vars() const { return static_cast<int>(c.size()); }
  int num_eq() const { return static_cast<int>(A.rows()); }
  void validate() const;  // throws ShapeMismatch / NotSymmetric
};

enum class Status { Optimal, Infeasible, MaxIterations, NumericalFailure };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Optimal: return "Optimal";
    case Status::Infeasible: return "Infeasible";
    case Status::MaxIterations: return "MaxIterations";
    case Status::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

struct Solution {
  Status status = Status::NumericalFailure;
  Eigen::VectorXd y;
  Eigen::VectorXd eq_multipliers;              // lambda for A y = b
  std::vector<Eigen::MatrixXd> slack_blocks;   // F0 + sum_i y_i F[i]
  std::vector<Eigen::MatrixXd> dual_blocks;    // PSD multipliers
  double objective = 0.0;
  double gap = 0.0;  // complementarity <S, Z> at the returned point
  int iterations = 0;
  std::string message;
};

struct SolveOptions {
  double tol = 1e-8;
  int max_iterations = 200;
  double step_fraction = 0.98;
};

// Homogeneous self-dual interior-point method with Nesterov-Todd scaling.
// Detects infeasibility through the embedding (tau -> 0 with a certified
// dual ray) instead of failing.
Solution solve(const Problem& prob, const SolveOptions& opts = {});

// Smallest eigenvalue of a symmetric matrix; throws NotSymmetric if the
// symmetry defect exceeds 1e-12 relative to the magnitude.
double min_eigenvalue(const Eigen::MatrixXd& M);

}  // namespace cfl::sdp
