#pragma once

#include <span>
#include <vector>

#include "stochfd/grid.hpp"
#include "stochfd/richardson.hpp"

// Expansion coefficients of the difference/shift operators in powers of
// the mesh size, and a measured-order check of the corresponding Taylor
// remainders on smooth periodic test data:
//
//   d_{h,lam} phi          = sum_i h^i A_i d_lam^{i+1} phi + O(h^{n+1}),  A_i = 1/(i+1)!
//   d_{-h,lam} d_{h,lam}   = sum_i h^i B_i d_lam^{i+2} phi + O(h^{n+1}),  B_i = 0 (odd),
//                                                                         2/(i+2)! (even)
//   T_{h,lam} phi          = sum_i (h^i/i!) d_lam^i phi    + O(h^{n+1}).

namespace stochfd {

struct ExpansionCoeffs {
    std::vector<Rational> A; // first differences
    std::vector<Rational> B; // symmetric second differences
    std::vector<Rational> S; // shifts, 1/i!
};

// The three sequences up to index n, exact. n <= 18 (factorials must fit
// in 64 bits).
ExpansionCoeffs expansion_coeffs(int n);

enum class DiffOp { delta, second_delta, shift };

// Smooth exactly-periodic test data: a sum of modes
// amp * cos(2*pi*(k.x)/L + phase), with every directional derivative
// available in closed form (the analytic side of the remainder check is
// independent of the grid operators).
struct TrigPoly {
    struct Mode {
        std::vector<int> k;
        double amplitude = 1.0;
        double phase = 0.0;
    };
    std::vector<Mode> modes;
    double period = 1.0;

    double operator()(std::span<const double> x) const { return derivative(0, {}, x); }
    // d_lam^order evaluated at x; lam ignored for order 0.
    double derivative(int order, std::span<const int> lam, std::span<const double> x) const;
    int dim() const { return modes.empty() ? 0 : static_cast<int>(modes.front().k.size()); }
};

struct ExpansionCheck {
    DiffOp op;
    int order_n;
    std::vector<double> meshes;
    std::vector<double> residuals; // sup over grid points per mesh
    double fitted_slope = 0.0;
    bool passed = false; // slope >= n + 1 - 0.2
};

// For each grid size, samples phi on the torus, applies the operator,
// subtracts the first n+1 expansion terms (analytic derivatives), and
// records the sup residual; then fits the slope of log residual against
// log h. Grid sizes must be powers suitable for the torus (any n >= 4).
ExpansionCheck verify_expansion(DiffOp op, const TrigPoly& phi, const StencilVector& lam,
                                int n, std::span<const int> grid_sizes);

} // namespace stochfd
