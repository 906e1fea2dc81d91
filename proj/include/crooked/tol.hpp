#pragma once

namespace crooked {

/// Default absolute tolerance for classifiers and residual checks.
/// Quantities of order one are assumed; inputs are expected to be
/// pre-normalized, so a single band works everywhere.
inline constexpr double kTol = 1e-9;

}  // namespace crooked
