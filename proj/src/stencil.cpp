#include "stochfd/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stochfd {

bool StencilVector::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
}

StencilVector StencilVector::negated() const {
    StencilVector r = *this;
    for (int& c : r.coords) c = -c;
    return r;
}

double StencilVector::norm2_sq() const {
    double s = 0.0;
    for (int c : coords) s += double(c) * double(c);
    return s;
}

int StencilVector::max_abs_coord() const {
    int m = 0;
    for (int c : coords) m = std::max(m, std::abs(c));
    return m;
}

std::string to_string(const StencilVector& v) {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < v.dim(); ++i) {
        if (i) os << ',';
        os << v.coords[i];
    }
    os << ')';
    return os.str();
}

Coeff Coeff::constant(double v) {
    Coeff c;
    c.fn = [v](double, std::span<const double>, double) { return v; };
    c.time_independent = true;
    c.constant_value = v;
    return c;
}

namespace {
double lookup(const CoeffMap& m, double t, std::span<const double> x, double h,
              const StencilVector& key) {
    auto it = m.find(key);
    return it == m.end() ? 0.0 : it->second(t, x, h);
}
} // namespace

double StencilSpec::a_coeff(double t, std::span<const double> x, double h,
                            const StencilVector& lam) const {
    return lookup(a, t, x, h, lam);
}
double StencilSpec::p_coeff(double t, std::span<const double> x, double h,
                            const StencilVector& gam) const {
    return lookup(p, t, x, h, gam);
}
double StencilSpec::c_coeff(double t, std::span<const double> x, double h,
                            const StencilVector& gam) const {
    return lookup(c, t, x, h, gam);
}
double StencilSpec::nu_coeff(double t, std::span<const double> x, int r) const {
    if (r < 0 || r >= num_noise) throw std::out_of_range("nu_coeff: r out of range");
    return nu ? nu(t, x, r) : 0.0;
}

std::vector<StencilVector> StencilSpec::full_set() const {
    std::set<StencilVector> s;
    for (const auto& l : lambda0) {
        s.insert(l);
        s.insert(l.negated());
    }
    for (const auto& g : lambda1) s.insert(g);
    return {s.begin(), s.end()};
}

int StencilSpec::max_abs_offset() const {
    int m = 0;
    for (const auto& v : full_set()) m = std::max(m, v.max_abs_coord());
    return m;
}

CoeffSamples default_samples(int dim, double extent, double t_max, double h_max,
                             int points_per_axis) {
    CoeffSamples s;
    s.times = {0.0, 0.25 * t_max, 0.5 * t_max, 0.75 * t_max, t_max};
    s.meshes = {0.0, h_max, 0.5 * h_max, 0.25 * h_max};
    // Low-discrepancy-ish lattice: enough to catch sign violations of the
    // smooth coefficient presets without an exhaustive grid.
    const int m = std::max(2, points_per_axis);
    std::vector<int> idx(dim, 0);
    for (;;) {
        std::vector<double> x(dim);
        for (int i = 0; i < dim; ++i) x[i] = extent * (idx[i] + 0.37) / m;
        s.points.push_back(std::move(x));
        int axis = 0;
        while (axis < dim && ++idx[axis] == m) idx[axis++] = 0;
        if (axis == dim) break;
    }
    return s;
}

namespace {

void for_each_sample(const CoeffSamples& samples,
                     const std::function<void(double, std::span<const double>, double)>& f) {
    for (double t : samples.times)
        for (const auto& x : samples.points)
            for (double h : samples.meshes) f(t, x, h);
}

bool contains(const std::vector<StencilVector>& set, const StencilVector& v) {
    return std::find(set.begin(), set.end(), v) != set.end();
}

} // namespace

ValidationReport validate_stencil(const StencilSpec& spec, const CoeffSamples& samples) {
    ValidationReport rep;
    if (spec.dim < 1) rep.violations.push_back("dimension must be >= 1");
    auto check_dim = [&](const std::vector<StencilVector>& set, const char* name) {
        for (const auto& v : set)
            if (v.dim() != spec.dim) {
                rep.violations.push_back(std::string(name) + " offset " + to_string(v) +
                                         " has wrong dimension");
            }
    };
    check_dim(spec.lambda0, "Lambda0");
    check_dim(spec.lambda1, "Lambda1");

    StencilVector zero(std::vector<int>(spec.dim, 0));
    for (const auto& g : spec.lambda1)
        if (!contains(spec.lambda1, g.negated())) {
            rep.violations.push_back("Lambda1 not symmetric: missing " +
                                     to_string(g.negated()));
        }
    if (!contains(spec.lambda1, zero)) rep.violations.push_back("0 not in Lambda1");
    if (contains(spec.lambda0, zero)) rep.violations.push_back("0 in Lambda0");

    {
        std::set<StencilVector> seen;
        for (const auto& v : spec.lambda0)
            if (!seen.insert(v).second)
                rep.violations.push_back("duplicate Lambda0 offset " + to_string(v));
        seen.clear();
        for (const auto& v : spec.lambda1)
            if (!seen.insert(v).second)
                rep.violations.push_back("duplicate Lambda1 offset " + to_string(v));
    }

    if (!samples.points.empty()) {
        bool p0_ok = true;
        for_each_sample(samples, [&](double t, std::span<const double> x, double h) {
            if (spec.p_coeff(t, x, h, zero) != 0.0) p0_ok = false;
        });
        if (!p0_ok) rep.violations.push_back("p^0 is not identically zero");
    }

    rep.notes.push_back(
        "rational linear dependence of offsets: satisfied by construction (integer coordinates)");
    return rep;
}

ValidationReport check_nonnegativity(const StencilSpec& spec, const CoeffSamples& samples) {
    ValidationReport rep;
    for_each_sample(samples, [&](double t, std::span<const double> x, double h) {
        for (const auto& lam : spec.lambda0) {
            const double v = spec.a_coeff(t, x, h, lam);
            if (v < 0.0) {
                rep.violations.push_back("a^" + to_string(lam) + " < 0 at sampled point (value " +
                                         std::to_string(v) + ")");
                return;
            }
        }
        for (const auto& gam : spec.lambda1) {
            const double v = spec.p_coeff(t, x, h, gam);
            if (v < 0.0) {
                rep.violations.push_back("p^" + to_string(gam) + " < 0 at sampled point (value " +
                                         std::to_string(v) + ")");
                return;
            }
        }
    });
    return rep;
}

ReconstructedPde reconstruct_pde(const StencilSpec& spec, double t,
                                 std::span<const double> x) {
    const int d = spec.dim;
    ReconstructedPde r;
    r.a.assign(d, std::vector<double>(d, 0.0));
    r.b.assign(d, 0.0);
    for (const auto& lam : spec.lambda0) {
        const double w = spec.a_coeff(t, x, 0.0, lam);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) r.a[i][j] += w * lam.coords[i] * lam.coords[j];
    }
    for (const auto& gam : spec.lambda1) {
        const double pw = spec.p_coeff(t, x, 0.0, gam);
        for (int i = 0; i < d; ++i) r.b[i] += pw * gam.coords[i];
        r.c += spec.c_coeff(t, x, 0.0, gam);
    }
    return r;
}

namespace {

StencilVector unit(int dim, int axis, int sign = 1) {
    std::vector<int> c(dim, 0);
    c[axis] = sign;
    return StencilVector(std::move(c));
}

} // namespace

StencilSpec build_diagonal_stencil(int dim, const VectorField& a_diag, const VectorField& b,
                                   const ScalarField& c, std::span<const double> theta,
                                   const CoeffSamples& samples) {
    if (static_cast<int>(theta.size()) != dim)
        throw std::invalid_argument("build_diagonal_stencil: theta must have d entries");
    for (double t : samples.times)
        for (const auto& x : samples.points)
            for (int i = 0; i < dim; ++i) {
                const double need = std::max(0.0, -b(t, x, i));
                if (theta[i] < need - 1e-14)
                    throw std::invalid_argument("build_diagonal_stencil: theta^" +
                                                std::to_string(i + 1) +
                                                " < max(0, -b) at a sampled point");
            }

    StencilSpec spec;
    spec.dim = dim;
    std::vector<double> th(theta.begin(), theta.end());
    StencilVector zero(std::vector<int>(dim, 0));
    spec.lambda1.push_back(zero);
    for (int i = 0; i < dim; ++i) {
        const auto ei = unit(dim, i);
        spec.lambda0.push_back(ei);
        spec.lambda1.push_back(ei);
        spec.lambda1.push_back(ei.negated());

        Coeff ai;
        ai.fn = [a_diag, i](double t, std::span<const double> x, double) {
            return a_diag(t, x, i);
        };
        spec.a.emplace(ei, std::move(ai));

        Coeff pf;
        pf.fn = [b, i, ti = th[i]](double t, std::span<const double> x, double) {
            return b(t, x, i) + ti;
        };
        spec.p.emplace(ei, std::move(pf));
        spec.p.emplace(ei.negated(), Coeff::constant(th[i]));
    }
    Coeff c0;
    c0.fn = [c](double t, std::span<const double> x, double) { return c(t, x); };
    spec.c.emplace(zero, std::move(c0));
    std::sort(spec.lambda1.begin(), spec.lambda1.end());
    return spec;
}

StencilSpec build_diagdom_stencil(int dim, const MatrixField& a, const VectorField& b,
                                  const ScalarField& c, double kappa,
                                  const CoeffSamples& samples,
                                  std::span<const double> theta_i, double theta_cross) {
    if (kappa < 0.0) throw std::invalid_argument("build_diagdom_stencil: kappa must be >= 0");

    // Dominance and symmetry are only checkable pointwise.
    for (double t : samples.times)
        for (const auto& x : samples.points)
            for (int i = 0; i < dim; ++i) {
                double off = 0.0;
                for (int j = 0; j < dim; ++j) {
                    if (std::fabs(a(t, x, i, j) - a(t, x, j, i)) > 1e-12)
                        throw std::invalid_argument("build_diagdom_stencil: a not symmetric");
                    off += std::fabs(a(t, x, i, j));
                }
                if (2.0 * a(t, x, i, i) < off - 1e-12)
                    throw std::invalid_argument(
                        "build_diagdom_stencil: a not diagonally dominant at a sampled point");
            }

    std::vector<double> th(dim);
    for (int i = 0; i < dim; ++i)
        th[i] = theta_i.empty() ? std::max(0.0, kappa) : theta_i[i];
    const double thc = theta_cross < 0.0 ? kappa : theta_cross;

    StencilSpec spec;
    spec.dim = dim;
    StencilVector zero(std::vector<int>(dim, 0));

    auto pos_part = [](double v) { return (std::fabs(v) + v) / 2.0; };
    auto neg_part = [](double v) { return (std::fabs(v) - v) / 2.0; };

    for (int i = 0; i < dim; ++i) {
        Coeff ai;
        ai.fn = [a, i, dim](double t, std::span<const double> x, double) {
            double v = a(t, x, i, i);
            for (int j = 0; j < dim; ++j)
                if (j != i) v -= std::fabs(a(t, x, i, j));
            return v;
        };
        spec.lambda0.push_back(unit(dim, i));
        spec.a.emplace(unit(dim, i), std::move(ai));
    }
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            std::vector<int> plus(dim, 0), minus(dim, 0), minus_rev(dim, 0);
            plus[i] = 1;
            plus[j] = 1;
            minus[i] = 1;
            minus[j] = -1;
            minus_rev[i] = -1;
            minus_rev[j] = 1;
            StencilVector vp(plus), vm(minus), vmr(minus_rev);

            Coeff ap;
            ap.fn = [a, i, j, pos_part](double t, std::span<const double> x, double) {
                return pos_part(a(t, x, i, j));
            };
            Coeff am;
            am.fn = [a, i, j, neg_part](double t, std::span<const double> x, double) {
                return neg_part(a(t, x, i, j)) / 2.0;
            };
            spec.lambda0.push_back(vp);
            spec.lambda0.push_back(vm);
            spec.lambda0.push_back(vmr);
            spec.a.emplace(vp, std::move(ap));
            spec.a.emplace(vm, am);
            spec.a.emplace(vmr, std::move(am));
        }

    // Lambda1 = {0} union Lambda0 union -Lambda0.
    std::set<StencilVector> l1;
    l1.insert(zero);
    for (const auto& v : spec.lambda0) {
        l1.insert(v);
        l1.insert(v.negated());
    }
    spec.lambda1.assign(l1.begin(), l1.end());

    for (int i = 0; i < dim; ++i) {
        Coeff pp;
        pp.fn = [b, i, ti = th[i]](double t, std::span<const double> x, double) {
            return 0.5 * b(t, x, i) + ti;
        };
        Coeff pm;
        pm.fn = [b, i, ti = th[i]](double t, std::span<const double> x, double) {
            return -0.5 * b(t, x, i) + ti;
        };
        spec.p.emplace(unit(dim, i), std::move(pp));
        spec.p.emplace(unit(dim, i, -1), std::move(pm));
    }
    for (const auto& gam : spec.lambda1) {
        if (gam.is_zero() || spec.p.count(gam)) continue;
        spec.p.emplace(gam, Coeff::constant(thc)); // cross offsets +-(e_i +- e_j)
    }
    Coeff c0;
    c0.fn = [c](double t, std::span<const double> x, double) { return c(t, x); };
    spec.c.emplace(zero, std::move(c0));

    // theta^i >= kappa - |b^i|/2 must hold at samples for the lower bound
    // p^{+-e_i} >= kappa to be meaningful; the p-coefficients themselves
    // must be nonnegative.
    for (double t : samples.times)
        for (const auto& x : samples.points)
            for (int i = 0; i < dim; ++i) {
                if (th[i] < kappa - 0.5 * std::fabs(b(t, x, i)) - 1e-14)
                    throw std::invalid_argument(
                        "build_diagdom_stencil: theta^i < kappa - |b^i|/2 at a sampled point");
                if (0.5 * b(t, x, i) + th[i] < -1e-14 || -0.5 * b(t, x, i) + th[i] < -1e-14)
                    throw std::invalid_argument(
                        "build_diagdom_stencil: theta^i too small, p^{+-e_i} negative at a "
                        "sampled point");
            }
    if (thc < kappa - 1e-14)
        throw std::invalid_argument("build_diagdom_stencil: theta^{ij} < kappa");
    return spec;
}

bool check_lower_bound_p(const StencilSpec& spec, double kappa, const CoeffSamples& samples) {
    bool ok = true;
    for_each_sample(samples, [&](double t, std::span<const double> x, double h) {
        for (const auto& gam : spec.lambda1) {
            if (gam.is_zero()) continue;
            if (spec.p_coeff(t, x, h, gam) < kappa - 1e-14) ok = false;
        }
    });
    return ok;
}

} // namespace stochfd
