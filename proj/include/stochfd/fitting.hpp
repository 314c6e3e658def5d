#pragma once

#include <span>
#include <utility>

// Log-log least-squares order fitting shared by the study harness and
// the expansion diagnostics.

namespace stochfd {

struct OrderFit {
    double slope = 0.0;     // fitted convergence order
    double intercept = 0.0; // log of the error constant
    double residual = 0.0;  // RMS of log-space fit residuals
    double stderr_slope = 0.0;
    int points = 0;

    double ci_low(double width = 2.0) const { return slope - width * stderr_slope; }
    double ci_high(double width = 2.0) const { return slope + width * stderr_slope; }
};

// Least-squares slope of log(err) against log(h) over (h, err) pairs.
// Requires >= 2 points and err > 0; throws std::invalid_argument on a
// nonpositive error value (exact agreement is "below floor" and must be
// filtered by the caller).
OrderFit fit_order(std::span<const std::pair<double, double>> h_err);

} // namespace stochfd
