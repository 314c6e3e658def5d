#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "stochfd/stencil.hpp"

// Periodic lattice, grid functions, the shift/difference operators, the
// assembled operator L^h and the discrete norms.

namespace stochfd {

struct ReachError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// d-dimensional torus with n points per axis, spacing h, period L = n*h.
// Points are x = h*(k_1,...,k_d), 0 <= k_i < n, stored row-major with
// axis 0 slowest.
struct TorusGrid {
    int dim = 1;
    int n = 2;
    double h = 1.0;

    TorusGrid() = default;
    TorusGrid(int dim_, int n_, double h_);

    double length() const { return n * h; }
    std::size_t size() const;
    std::size_t stride(int axis) const; // n^(dim-1-axis)

    void coords(std::size_t flat, std::span<double> out) const;
    std::size_t index(std::span<const int> k) const;

    // Largest per-axis offset an operator may use without wrapping onto
    // itself: n >= 2*offset + 1.
    void check_reach(int max_abs_offset) const;

    bool operator==(const TorusGrid& o) const {
        return dim == o.dim && n == o.n && h == o.h;
    }
};

class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(const TorusGrid& g, double init = 0.0)
        : grid_(g), v_(g.size(), init) {}

    const TorusGrid& grid() const { return grid_; }
    std::span<double> values() { return v_; }
    std::span<const double> values() const { return v_; }
    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    std::size_t size() const { return v_.size(); }
    double operator[](std::size_t i) const { return v_[i]; }
    double& operator[](std::size_t i) { return v_[i]; }

    bool all_finite() const;

    // Samples f at the grid points.
    template <typename F>
    static GridFunction sample(const TorusGrid& g, F&& f) {
        GridFunction u(g);
        std::vector<double> x(g.dim);
        for (std::size_t i = 0; i < u.size(); ++i) {
            g.coords(i, x);
            u[i] = f(std::span<const double>(x));
        }
        return u;
    }

private:
    TorusGrid grid_;
    std::vector<double> v_;
};

// result(x) = u(x + h*lam), periodic wrap.
GridFunction shift(const GridFunction& u, const StencilVector& lam);
void shift_into(GridFunction& out, const GridFunction& u, const StencilVector& lam);

// d_{h,lam} u = (u(. + h*lam) - u)/h_signed with h_signed = +-grid.h;
// the sign selects the forward (d_{h,lam}) or backward (d_{-h,lam}) form.
GridFunction delta(const GridFunction& u, const StencilVector& lam, double h_signed);
void delta_into(GridFunction& out, GridFunction& scratch, const GridFunction& u,
                const StencilVector& lam, double h_signed);

// Precompiled application of L^h on one grid: coefficient fields of
// time-independent terms are evaluated once and cached.
class OperatorPlan {
public:
    OperatorPlan(const StencilSpec& spec, const TorusGrid& grid);

    const TorusGrid& grid() const { return grid_; }
    const StencilSpec& spec() const { return *spec_; }

    // out = L^h(t) u. out must live on the same grid; u is untouched.
    void apply(double t, const GridFunction& u, GridFunction& out);

    // Pointwise diagonal of L^h(t) (used by the Jacobi-preconditioned
    // implicit solver and the CFL bound).
    void diagonal(double t, GridFunction& out);

    // sup over grid points at time t of the standard explicit-step bound
    //   sum_lam 2 a^lam |lam|^2 / h^2 + sum_gam p^gam / h + |c|;
    // dt * cfl_bound <= 1 keeps the deterministic part monotone.
    double cfl_bound(double t);

private:
    struct Term {
        StencilVector offset;
        const Coeff* coeff;
        std::vector<double> cached; // filled when coeff->time_independent
        bool is_zero_offset = false;
    };

    void eval_coeff(Term& term, double t, std::vector<double>& dst);

    const StencilSpec* spec_;
    TorusGrid grid_;
    std::vector<Term> a_terms_, p_terms_, c_terms_;
    std::vector<double> coeff_buf_;
    GridFunction tmp1_, tmp2_;
};

// One-shot convenience wrapper around OperatorPlan.
GridFunction apply_Lh(const StencilSpec& spec, double t, const GridFunction& u);

// l_{p,h} norm: (sum_x |u(x)|^p h^d)^{1/p}, p >= 1.
double lp_norm(const GridFunction& u, double p);
// l_{p,h}(l2) norm of an R-component function (components on one grid).
double lp_norm(std::span<const GridFunction> components, double p);

double sup_norm(const GridFunction& u);

// Mass functional sum_x u(x) h^d (exact invariant of divergence-form,
// constant-p, c=0 explicit stepping).
double grid_sum(const GridFunction& u);

// Subsamples every ratio-th point per axis; the coarse grid keeps the
// period: n_coarse = n/ratio, h_coarse = h*ratio.
GridFunction restrict_to_coarse(const GridFunction& fine, int ratio);

} // namespace stochfd
