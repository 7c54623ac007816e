#pragma once

// Numeric thresholds shared by the checkers, the tests, and the CLI, so a
// verdict printed by the tool means the same thing a test asserts.

namespace cfl::tol {

// Frobenius residual below which a point/sign relation counts as satisfied.
inline constexpr double kRelationResidual = 1e-8;

// Additive slack granted to every sampled or replayed inequality.
inline constexpr double kInequalitySlack = 1e-9;

// Evaluations above this floor still count as nonnegative.
inline constexpr double kNegativityThreshold = -1e-10;

// Max coefficient mismatch accepted for a Gram certificate (unit-scale input).
inline constexpr double kGramResidual = 1e-7;

// Interior-point stopping tolerance: everyday runs vs. table reproduction.
inline constexpr double kDefaultSdpTol = 1e-8;
inline constexpr double kTable1SdpTol = 1e-9;

}  // namespace cfl::tol
