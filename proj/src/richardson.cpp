#include "stochfd/richardson.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "stochfd/kernels.hpp"

namespace stochfd {

namespace {

std::int64_t checked(__int128 v, const char* what) {
    if (v > __int128(INT64_MAX) || v < __int128(INT64_MIN))
        throw std::overflow_error(std::string("Rational overflow in ") + what);
    return static_cast<std::int64_t>(v);
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(checked(__int128(num) * o.den + __int128(o.num) * den, "+"),
                    checked(__int128(den) * o.den, "+"));
}
Rational Rational::operator-(const Rational& o) const {
    return Rational(checked(__int128(num) * o.den - __int128(o.num) * den, "-"),
                    checked(__int128(den) * o.den, "-"));
}
Rational Rational::operator*(const Rational& o) const {
    return Rational(checked(__int128(num) * o.num, "*"), checked(__int128(den) * o.den, "*"));
}
Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw std::invalid_argument("Rational: division by zero");
    return Rational(checked(__int128(num) * o.den, "/"), checked(__int128(den) * o.num, "/"));
}

std::string Rational::to_string() const {
    std::ostringstream os;
    os << num;
    if (den != 1) os << '/' << den;
    return os.str();
}

std::string ExtrapolationPlan::describe() const {
    std::ostringstream os;
    os << "k=" << k << " ratios=(";
    for (std::size_t i = 0; i < ratios.size(); ++i) os << (i ? "," : "") << ratios[i];
    os << ") weights=(";
    for (std::size_t i = 0; i < weights.size(); ++i)
        os << (i ? "," : "") << weights[i].to_string();
    os << ')';
    return os.str();
}

ExtrapolationPlan vandermonde_weights(int k, std::span<const int> ratios) {
    if (k < 0) throw std::invalid_argument("vandermonde_weights: k must be >= 0");
    ExtrapolationPlan plan;
    plan.k = k;
    if (ratios.empty()) {
        int r = 1;
        for (int i = 0; i <= k; ++i, r *= 2) plan.ratios.push_back(r);
    } else {
        if (static_cast<int>(ratios.size()) != k + 1)
            throw std::invalid_argument("vandermonde_weights: need k+1 ratios");
        plan.ratios.assign(ratios.begin(), ratios.end());
    }
    if (plan.ratios.front() != 1)
        throw std::invalid_argument("vandermonde_weights: ratios must start at 1");
    for (int i = 1; i <= k; ++i)
        if (plan.ratios[i] <= plan.ratios[i - 1])
            throw std::invalid_argument(
                "vandermonde_weights: ratios must be strictly increasing (singular system)");

    // Lagrange cardinal values at 0 for the nodes 1/n_i: solving the
    // Vandermonde system c V = e_1 in closed form.
    for (int i = 0; i <= k; ++i) {
        Rational c(1);
        for (int j = 0; j <= k; ++j) {
            if (j == i) continue;
            c = c * Rational(plan.ratios[i], plan.ratios[i] - plan.ratios[j]);
        }
        plan.weights.push_back(c);
        plan.weights_d.push_back(c.to_double());
    }
    return plan;
}

GridFunction extrapolate(const ExtrapolationPlan& plan,
                         std::span<const GridFunction> solutions) {
    if (solutions.size() != plan.weights.size())
        throw std::invalid_argument("extrapolate: need k+1 solutions");
    const TorusGrid& coarse = solutions.front().grid();
    GridFunction v(coarse);
    for (std::size_t i = 0; i < solutions.size(); ++i) {
        const TorusGrid& gi = solutions[i].grid();
        if (gi.dim != coarse.dim ||
            std::abs(gi.length() - coarse.length()) > 1e-12 * coarse.length() ||
            gi.n != coarse.n * plan.ratios[i])
            throw std::invalid_argument("extrapolate: solution " + std::to_string(i) +
                                        " is not on the h/" + std::to_string(plan.ratios[i]) +
                                        " refinement of the coarse grid");
        const GridFunction r = restrict_to_coarse(solutions[i], plan.ratios[i]);
        kernels::ops().axpy(v.data(), plan.weights_d[i], r.data(), v.size());
    }
    return v;
}

GridFunction estimate_expansion_term(const GridFunction& u_h, const GridFunction& u_h2,
                                     const GridFunction& u_h4, int j) {
    if (j != 1 && j != 2)
        throw std::invalid_argument("estimate_expansion_term: j must be 1 or 2");
    const TorusGrid& g = u_h.grid();
    if (u_h2.grid().n != 2 * g.n || u_h4.grid().n != 4 * g.n ||
        u_h2.grid().dim != g.dim || u_h4.grid().dim != g.dim)
        throw std::invalid_argument("estimate_expansion_term: grids must be nested h, h/2, h/4");

    // Quadratic through (mu, U(mu)) at mu = 1, 1/2, 1/4 where
    // u^{mu h} = u + (mu h) w + (mu h)^2 z; reading off the linear or
    // quadratic coefficient gives the unique 3-point stencils
    //   w: (-2 U_0 + 10 U_1 - 8 U_2) / h
    //   z: (8/3 U_0 - 8 U_1 + 16/3 U_2) / h^2.
    static const double w1[3] = {-2.0, 10.0, -8.0};
    static const double w2[3] = {8.0 / 3.0, -8.0, 16.0 / 3.0};
    const double* w = (j == 1) ? w1 : w2;
    const double scale = (j == 1) ? 1.0 / g.h : 1.0 / (g.h * g.h);

    GridFunction out(g);
    const GridFunction r2 = restrict_to_coarse(u_h2, 2);
    const GridFunction r4 = restrict_to_coarse(u_h4, 4);
    const auto& k = kernels::ops();
    k.axpy(out.data(), w[0] * scale, u_h.data(), out.size());
    k.axpy(out.data(), w[1] * scale, r2.data(), out.size());
    k.axpy(out.data(), w[2] * scale, r4.data(), out.size());
    return out;
}

} // namespace stochfd
