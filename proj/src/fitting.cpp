#include "stochfd/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace stochfd {

OrderFit fit_order(std::span<const std::pair<double, double>> h_err) {
    if (h_err.size() < 2) throw std::invalid_argument("fit_order: need >= 2 points");
    double sx = 0, sy = 0;
    for (const auto& [h, e] : h_err) {
        if (!(h > 0.0)) throw std::invalid_argument("fit_order: h must be > 0");
        if (!(e > 0.0))
            throw std::invalid_argument("fit_order: nonpositive error (below floor)");
        sx += std::log(h);
        sy += std::log(e);
    }
    const double n = static_cast<double>(h_err.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [h, e] : h_err) {
        const double dx = std::log(h) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(e) - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_order: all h equal");
    OrderFit fit;
    fit.points = static_cast<int>(h_err.size());
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (const auto& [h, e] : h_err) {
        const double r = std::log(e) - (fit.intercept + fit.slope * std::log(h));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    if (h_err.size() > 2) fit.stderr_slope = std::sqrt(ss / (n - 2.0) / sxx);
    return fit;
}

} // namespace stochfd
