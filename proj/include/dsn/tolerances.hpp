#pragma once

namespace dsn {

// Repository-wide numeric tolerances, defined once so every property suite
// and validation path compares against the same constants.

// Slack for inequality comparisons (monotonicity suites, simplex sums).
inline constexpr double kComparisonSlack = 1e-9;

// Tolerance for matching an implementation against an independent oracle.
inline constexpr double kOracleTolerance = 1e-10;

// Dual algebraic routes of the same quantity must agree this tightly.
inline constexpr double kDualRouteTolerance = 1e-12;

// Proportion and weight vectors must sum to one within this slack.
inline constexpr double kSimplexSumTolerance = 1e-9;

}  // namespace dsn
