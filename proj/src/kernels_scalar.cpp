#include "stochfd/kernels.hpp"

#include <cmath>
#include <cstring>

namespace stochfd::kernels {
namespace {

void fill_s(double* dst, double v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = v;
}

void copy_s(double* dst, const double* src, std::size_t n) {
    if (n) std::memcpy(dst, src, n * sizeof(double));
}

void scale_s(double* y, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= a;
}

void axpy_s(double* y, double a, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpby_s(double* y, double a, const double* x, double b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void scaled_diff_s(double* out, const double* s, const double* u, double factor,
                   std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (s[i] - u[i]) * factor;
}

void diff_axpy_s(double* out, double a, const double* x, const double* y,
                 std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] += a * (x[i] - y[i]);
}

void mul_s(double* y, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= x[i];
}

void mul_axpy_s(double* y, double a, const double* c, const double* x,
                std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * c[i] * x[i];
}

double dot_s(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

// Neumaier-compensated accumulation: the discrete norms and the mass
// identity are asserted to 1e-12 relative, so plain left-to-right sums
// are too sloppy on the bigger grids.
template <typename F>
double compensated_sum(const double* x, std::size_t n, F term) {
    double s = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = term(x[i]);
        const double t = s + v;
        if (std::fabs(s) >= std::fabs(v))
            comp += (s - t) + v;
        else
            comp += (v - t) + s;
        s = t;
    }
    return s + comp;
}

double sum_s(const double* x, std::size_t n) {
    return compensated_sum(x, n, [](double v) { return v; });
}

double sum_sq_s(const double* x, std::size_t n) {
    return compensated_sum(x, n, [](double v) { return v * v; });
}

double sum_abs_s(const double* x, std::size_t n) {
    return compensated_sum(x, n, [](double v) { return std::fabs(v); });
}

double sum_abs_pow_s(const double* x, double p, std::size_t n) {
    return compensated_sum(x, n, [p](double v) { return std::pow(std::fabs(v), p); });
}

double max_abs_s(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

} // namespace

const Ops& scalar_ops() {
    static const Ops table{fill_s,      copy_s,     scale_s,   axpy_s,
                           axpby_s,     scaled_diff_s, diff_axpy_s, mul_s,
                           mul_axpy_s,  dot_s,      sum_s,     sum_sq_s,
                           sum_abs_s,   sum_abs_pow_s, max_abs_s};
    return table;
}

} // namespace stochfd::kernels
