#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stochfd/grid.hpp"

// Richardson extrapolation: weights c_i annihilating the first k terms
// of the mesh-size error expansion, assembly of the accelerated field
// v^h = sum_i c_i u^{h/n_i} on the coarsest grid, and empirical recovery
// of the expansion coefficients from solutions on nested grids.

namespace stochfd {

// Exact fraction on int64 with overflow-checked arithmetic. The weight
// systems here are tiny (k <= 6, small integer ratios) so 64 bits with a
// gcd reduction is plenty; anything larger throws.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const;
};

struct ExtrapolationPlan {
    int k = 0;                      // levels = k + 1
    std::vector<int> ratios;        // n_0 = 1 < n_1 < ... < n_k
    std::vector<Rational> weights;  // c_0 ... c_k, exact
    std::vector<double> weights_d;  // same, as doubles

    std::string describe() const;   // weights as exact fractions
};

// Solves c V = e_1 with V^{ij} = n_{i-1}^{-(j-1)} in exact rational
// arithmetic (closed form: c_i = prod_{j != i} n_i / (n_i - n_j), the
// Lagrange cardinal values at mesh size 0). Default ratios are 2^i.
ExtrapolationPlan vandermonde_weights(int k, std::span<const int> ratios = {});

// v(x) = sum_i c_i * restrict(u_i)(x) on the coarsest grid. solutions[i]
// lives on the grid with mesh h/ratios[i]; all must share the period.
GridFunction extrapolate(const ExtrapolationPlan& plan,
                         std::span<const GridFunction> solutions);

// Estimates the coefficient of h^j (j = 1 or 2) in the expansion
// u^h = u + h w + h^2 z + O(h^3) from coupled solutions at h, h/2, h/4,
// returned on the coarsest grid. This is the raw h^j coefficient, i.e.
// u^{(j)}/j! in the factorial-normalized expansion.
GridFunction estimate_expansion_term(const GridFunction& u_h, const GridFunction& u_h2,
                                     const GridFunction& u_h4, int j);

} // namespace stochfd
