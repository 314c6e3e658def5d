#include "stochfd/grid.hpp"

#include <algorithm>
#include <cmath>

#include "stochfd/kernels.hpp"

namespace stochfd {

TorusGrid::TorusGrid(int dim_, int n_, double h_) : dim(dim_), n(n_), h(h_) {
    if (dim < 1) throw std::invalid_argument("TorusGrid: dim must be >= 1");
    if (n < 2) throw std::invalid_argument("TorusGrid: n must be >= 2");
    if (!(h > 0.0)) throw std::invalid_argument("TorusGrid: h must be > 0");
}

std::size_t TorusGrid::size() const {
    std::size_t s = 1;
    for (int i = 0; i < dim; ++i) s *= static_cast<std::size_t>(n);
    return s;
}

std::size_t TorusGrid::stride(int axis) const {
    std::size_t s = 1;
    for (int i = axis + 1; i < dim; ++i) s *= static_cast<std::size_t>(n);
    return s;
}

void TorusGrid::coords(std::size_t flat, std::span<double> out) const {
    for (int a = dim - 1; a >= 0; --a) {
        out[a] = h * static_cast<double>(flat % n);
        flat /= n;
    }
}

std::size_t TorusGrid::index(std::span<const int> k) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim; ++a) {
        int ka = k[a] % n;
        if (ka < 0) ka += n;
        flat = flat * n + static_cast<std::size_t>(ka);
    }
    return flat;
}

void TorusGrid::check_reach(int max_abs_offset) const {
    if (n < 2 * max_abs_offset + 1)
        throw ReachError("stencil offset " + std::to_string(max_abs_offset) +
                         " exceeds grid reach (n = " + std::to_string(n) + ")");
}

bool GridFunction::all_finite() const {
    return std::all_of(v_.begin(), v_.end(), [](double x) { return std::isfinite(x); });
}

void shift_into(GridFunction& out, const GridFunction& u, const StencilVector& lam) {
    const TorusGrid& g = u.grid();
    if (lam.dim() != g.dim) throw std::invalid_argument("shift: offset dimension mismatch");
    g.check_reach(lam.max_abs_coord());
    if (&out != &u) {
        out = u;
    }
    // result(k_a) = u(k_a + lam_a mod n), axis by axis: a left rotation of
    // each contiguous slab along that axis.
    const int n = g.n;
    for (int a = 0; a < g.dim; ++a) {
        int s = ((lam.coords[a] % n) + n) % n;
        if (s == 0) continue;
        const std::size_t stride = g.stride(a);
        const std::size_t slab = stride * static_cast<std::size_t>(n);
        double* base = out.data();
        for (std::size_t off = 0; off < g.size(); off += slab)
            std::rotate(base + off, base + off + s * stride, base + off + slab);
    }
}

GridFunction shift(const GridFunction& u, const StencilVector& lam) {
    GridFunction out;
    shift_into(out, u, lam);
    return out;
}

void delta_into(GridFunction& out, GridFunction& scratch, const GridFunction& u,
                const StencilVector& lam, double h_signed) {
    if (h_signed == 0.0) throw std::invalid_argument("delta: h_signed must be nonzero");
    const TorusGrid& g = u.grid();
    if (std::fabs(std::fabs(h_signed) - g.h) > 1e-12 * g.h)
        throw std::invalid_argument("delta: |h_signed| must equal the grid spacing");
    const StencilVector dir = h_signed > 0 ? lam : lam.negated();
    shift_into(scratch, u, dir);
    if (out.grid() == g && out.size() == u.size()) {
        // reuse storage
    } else {
        out = GridFunction(g);
    }
    kernels::ops().scaled_diff(out.data(), scratch.data(), u.data(), 1.0 / h_signed,
                               u.size());
}

GridFunction delta(const GridFunction& u, const StencilVector& lam, double h_signed) {
    GridFunction out, scratch;
    delta_into(out, scratch, u, lam, h_signed);
    return out;
}

OperatorPlan::OperatorPlan(const StencilSpec& spec, const TorusGrid& grid)
    : spec_(&spec), grid_(grid), tmp1_(grid), tmp2_(grid) {
    if (spec.dim != grid.dim)
        throw std::invalid_argument("OperatorPlan: stencil/grid dimension mismatch");
    grid.check_reach(spec.max_abs_offset());
    coeff_buf_.resize(grid.size());
    auto add_terms = [&](const std::vector<StencilVector>& offsets, const CoeffMap& coeffs,
                         std::vector<Term>& dst) {
        for (const auto& off : offsets) {
            auto it = coeffs.find(off);
            if (it == coeffs.end()) continue;
            if (it->second.constant_value && *it->second.constant_value == 0.0) continue;
            Term t;
            t.offset = off;
            t.coeff = &it->second;
            t.is_zero_offset = off.is_zero();
            dst.push_back(std::move(t));
        }
    };
    add_terms(spec.lambda0, spec.a, a_terms_);
    add_terms(spec.lambda1, spec.p, p_terms_);
    add_terms(spec.lambda1, spec.c, c_terms_);
    // d_{h,0} = 0: a p-term at the origin contributes nothing.
    std::erase_if(p_terms_, [](const Term& t) { return t.is_zero_offset; });
}

void OperatorPlan::eval_coeff(Term& term, double t, std::vector<double>& dst) {
    const Coeff& c = *term.coeff;
    if (c.constant_value) {
        kernels::ops().fill(dst.data(), *c.constant_value, dst.size());
        return;
    }
    if (c.time_independent && !term.cached.empty()) {
        kernels::ops().copy(dst.data(), term.cached.data(), dst.size());
        return;
    }
    std::vector<double> x(grid_.dim);
    for (std::size_t i = 0; i < dst.size(); ++i) {
        grid_.coords(i, x);
        dst[i] = c.fn(t, x, grid_.h);
    }
    if (c.time_independent) term.cached = dst;
}

void OperatorPlan::apply(double t, const GridFunction& u, GridFunction& out) {
    if (!(u.grid() == grid_)) throw std::invalid_argument("apply: grid mismatch");
    if (!(out.grid() == grid_)) out = GridFunction(grid_);
    const auto& k = kernels::ops();
    const std::size_t n = grid_.size();
    k.fill(out.data(), 0.0, n);
    const double h = grid_.h;

    for (auto& term : a_terms_) {
        // d_{-h,lam}( a^lam d_{h,lam} u ), assembled as two shifted
        // differences around the weighted flux.
        eval_coeff(term, t, coeff_buf_);
        shift_into(tmp1_, u, term.offset);
        k.scaled_diff(tmp1_.data(), tmp1_.data(), u.data(), 1.0 / h, n); // d_{h,lam} u
        k.mul(tmp1_.data(), coeff_buf_.data(), n);                       // a * flux
        shift_into(tmp2_, tmp1_, term.offset.negated());
        k.diff_axpy(out.data(), 1.0 / h, tmp1_.data(), tmp2_.data(), n); // d_{-h,lam}
    }
    for (auto& term : p_terms_) {
        eval_coeff(term, t, coeff_buf_);
        shift_into(tmp1_, u, term.offset);
        k.scaled_diff(tmp1_.data(), tmp1_.data(), u.data(), 1.0 / h, n);
        k.mul_axpy(out.data(), 1.0, coeff_buf_.data(), tmp1_.data(), n);
    }
    for (auto& term : c_terms_) {
        eval_coeff(term, t, coeff_buf_);
        if (term.is_zero_offset) {
            k.mul_axpy(out.data(), 1.0, coeff_buf_.data(), u.data(), n);
        } else {
            shift_into(tmp1_, u, term.offset);
            k.mul_axpy(out.data(), 1.0, coeff_buf_.data(), tmp1_.data(), n);
        }
    }
}

void OperatorPlan::diagonal(double t, GridFunction& out) {
    if (!(out.grid() == grid_)) out = GridFunction(grid_);
    const auto& k = kernels::ops();
    const std::size_t n = grid_.size();
    const double h = grid_.h;
    k.fill(out.data(), 0.0, n);
    // a-term at x: -(a(x) + a(x - h*lam)) / h^2 on the diagonal.
    for (auto& term : a_terms_) {
        eval_coeff(term, t, coeff_buf_);
        k.axpy(out.data(), -1.0 / (h * h), coeff_buf_.data(), n);
        k.copy(tmp1_.data(), coeff_buf_.data(), n);
        shift_into(tmp1_, tmp1_, term.offset.negated());
        k.axpy(out.data(), -1.0 / (h * h), tmp1_.data(), n);
    }
    for (auto& term : p_terms_) {
        eval_coeff(term, t, coeff_buf_);
        k.axpy(out.data(), -1.0 / h, coeff_buf_.data(), n);
    }
    for (auto& term : c_terms_) {
        if (!term.is_zero_offset) continue;
        eval_coeff(term, t, coeff_buf_);
        k.axpy(out.data(), 1.0, coeff_buf_.data(), n);
    }
}

double OperatorPlan::cfl_bound(double t) {
    const double h = grid_.h;
    double bound = 0.0;
    for (auto& term : a_terms_) {
        eval_coeff(term, t, coeff_buf_);
        const double sup = kernels::ops().max_abs(coeff_buf_.data(), coeff_buf_.size());
        bound += 2.0 * sup * term.offset.norm2_sq() / (h * h);
    }
    for (auto& term : p_terms_) {
        eval_coeff(term, t, coeff_buf_);
        bound += kernels::ops().max_abs(coeff_buf_.data(), coeff_buf_.size()) / h;
    }
    for (auto& term : c_terms_) {
        eval_coeff(term, t, coeff_buf_);
        bound += kernels::ops().max_abs(coeff_buf_.data(), coeff_buf_.size());
    }
    return bound;
}

GridFunction apply_Lh(const StencilSpec& spec, double t, const GridFunction& u) {
    OperatorPlan plan(spec, u.grid());
    GridFunction out(u.grid());
    plan.apply(t, u, out);
    return out;
}

double lp_norm(const GridFunction& u, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    const double cell = std::pow(u.grid().h, u.grid().dim);
    const auto& k = kernels::ops();
    double s;
    if (p == 2.0)
        s = k.sum_sq(u.data(), u.size());
    else if (p == 1.0)
        s = k.sum_abs(u.data(), u.size());
    else
        s = k.sum_abs_pow(u.data(), p, u.size());
    return std::pow(s * cell, 1.0 / p);
}

double lp_norm(std::span<const GridFunction> components, double p) {
    if (components.empty()) return 0.0;
    const TorusGrid& g = components.front().grid();
    GridFunction mag(g);
    for (const auto& c : components) {
        if (!(c.grid() == g)) throw std::invalid_argument("lp_norm: component grid mismatch");
        kernels::ops().mul_axpy(mag.data(), 1.0, c.data(), c.data(), mag.size());
    }
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::sqrt(mag[i]);
    return lp_norm(mag, p);
}

double sup_norm(const GridFunction& u) { return kernels::ops().max_abs(u.data(), u.size()); }

double grid_sum(const GridFunction& u) {
    return kernels::ops().sum(u.data(), u.size()) * std::pow(u.grid().h, u.grid().dim);
}

GridFunction restrict_to_coarse(const GridFunction& fine, int ratio) {
    if (ratio < 1) throw std::invalid_argument("restrict: ratio must be >= 1");
    const TorusGrid& gf = fine.grid();
    if (ratio == 1) return fine;
    if (gf.n % ratio != 0)
        throw std::invalid_argument("restrict: fine n not divisible by ratio");
    TorusGrid gc(gf.dim, gf.n / ratio, gf.h * ratio);
    GridFunction out(gc);
    std::vector<int> k(gc.dim, 0);
    std::vector<int> kf(gc.dim, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t rem = i;
        for (int a = gc.dim - 1; a >= 0; --a) {
            k[a] = static_cast<int>(rem % gc.n);
            rem /= gc.n;
        }
        for (int a = 0; a < gc.dim; ++a) kf[a] = k[a] * ratio;
        out[i] = fine[gf.index(kf)];
    }
    return out;
}

} // namespace stochfd
