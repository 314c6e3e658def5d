#include "stochfd/taylor.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "stochfd/fitting.hpp"

namespace stochfd {

ExpansionCoeffs expansion_coeffs(int n) {
    if (n < 0) throw std::invalid_argument("expansion_coeffs: n must be >= 0");
    if (n > 18) throw std::invalid_argument("expansion_coeffs: n too large for exact 64-bit factorials");
    ExpansionCoeffs c;
    auto factorial = [](int m) {
        std::int64_t f = 1;
        for (int i = 2; i <= m; ++i) f *= i;
        return f;
    };
    for (int i = 0; i <= n; ++i) {
        c.A.emplace_back(1, factorial(i + 1));
        c.B.emplace_back(i % 2 == 1 ? Rational(0) : Rational(2, factorial(i + 2)));
        c.S.emplace_back(1, factorial(i));
    }
    return c;
}

double TrigPoly::derivative(int order, std::span<const int> lam,
                            std::span<const double> x) const {
    double s = 0.0;
    const double w0 = 2.0 * std::numbers::pi / period;
    for (const auto& m : modes) {
        double kx = 0.0, klam = 0.0;
        for (std::size_t i = 0; i < m.k.size(); ++i) {
            kx += m.k[i] * x[i];
            if (order > 0) klam += m.k[i] * lam[i];
        }
        // d_lam^j cos(w + p) = (w0*k.lam)^j cos(w + p + j*pi/2)
        const double factor = order > 0 ? std::pow(w0 * klam, order) : 1.0;
        s += m.amplitude * factor *
             std::cos(w0 * kx + m.phase + 0.5 * std::numbers::pi * order);
    }
    return s;
}

ExpansionCheck verify_expansion(DiffOp op, const TrigPoly& phi, const StencilVector& lam,
                                int n, std::span<const int> grid_sizes) {
    if (grid_sizes.size() < 2)
        throw std::invalid_argument("verify_expansion: need >= 2 grid sizes");
    const int d = lam.dim();
    const ExpansionCoeffs coeffs = expansion_coeffs(n);

    ExpansionCheck check;
    check.op = op;
    check.order_n = n;

    for (int nn : grid_sizes) {
        const double h = phi.period / nn;
        TorusGrid g(d, nn, h);
        GridFunction u = GridFunction::sample(g, [&](std::span<const double> x) { return phi(x); });

        GridFunction approx;
        switch (op) {
            case DiffOp::delta:
                approx = delta(u, lam, h);
                break;
            case DiffOp::second_delta:
                approx = delta(delta(u, lam, h), lam, -h);
                break;
            case DiffOp::shift:
                approx = shift(u, lam);
                break;
        }

        // Subtract the first n+1 analytic expansion terms pointwise.
        std::vector<double> x(d);
        double sup = 0.0;
        for (std::size_t i = 0; i < approx.size(); ++i) {
            g.coords(i, x);
            double series = 0.0;
            double hp = 1.0;
            for (int j = 0; j <= n; ++j) {
                double cj;
                int der_order;
                switch (op) {
                    case DiffOp::delta:
                        cj = coeffs.A[j].to_double();
                        der_order = j + 1;
                        break;
                    case DiffOp::second_delta:
                        cj = coeffs.B[j].to_double();
                        der_order = j + 2;
                        break;
                    default:
                        cj = coeffs.S[j].to_double();
                        der_order = j;
                        break;
                }
                if (cj != 0.0) series += hp * cj * phi.derivative(der_order, lam.coords, x);
                hp *= h;
            }
            sup = std::max(sup, std::fabs(approx[i] - series));
        }
        check.meshes.push_back(h);
        check.residuals.push_back(sup);
    }

    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < check.meshes.size(); ++i) {
        if (check.residuals[i] > 1e-14) pts.emplace_back(check.meshes[i], check.residuals[i]);
    }
    if (pts.size() >= 2) {
        check.fitted_slope = fit_order(pts).slope;
        check.passed = check.fitted_slope >= n + 1 - 0.2;
    } else {
        // Residuals at rounding level everywhere (e.g. constants under a
        // pure difference operator) count as passing.
        check.fitted_slope = std::numeric_limits<double>::infinity();
        check.passed = true;
    }
    return check;
}

} // namespace stochfd
