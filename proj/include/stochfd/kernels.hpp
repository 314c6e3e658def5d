#pragma once

#include <cstddef>

// Flat-array arithmetic kernels used by the grid operators, the time
// stepper and the discrete norms. Every kernel exists as a portable
// scalar reference implementation and, on x86 machines that support it,
// as an AVX2/FMA variant. The active table is selected once at startup
// (cpuid probe, overridable via the STOCHFD_SIMD environment variable or
// force_isa()) and the two variants are equivalence-tested against each
// other in the test suite.

namespace stochfd::kernels {

struct Ops {
    void (*fill)(double* dst, double v, std::size_t n);
    void (*copy)(double* dst, const double* src, std::size_t n);
    void (*scale)(double* y, double a, std::size_t n);
    // y += a*x
    void (*axpy)(double* y, double a, const double* x, std::size_t n);
    // y = a*x + b*y
    void (*axpby)(double* y, double a, const double* x, double b, std::size_t n);
    // out = (s - u) * factor
    void (*scaled_diff)(double* out, const double* s, const double* u, double factor,
                        std::size_t n);
    // out += a*(x - y)
    void (*diff_axpy)(double* out, double a, const double* x, const double* y,
                      std::size_t n);
    // y *= x (pointwise)
    void (*mul)(double* y, const double* x, std::size_t n);
    // y += a * c[i] * x[i]
    void (*mul_axpy)(double* y, double a, const double* c, const double* x,
                     std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    double (*sum_sq)(const double* x, std::size_t n);
    double (*sum_abs)(const double* x, std::size_t n);
    double (*sum_abs_pow)(const double* x, double p, std::size_t n);
    double (*max_abs)(const double* x, std::size_t n);
};

enum class Isa { scalar, avx2 };

const Ops& scalar_ops();

// Table for the given ISA; avx2 falls back to scalar entries for kernels
// with no vector variant (sum_abs_pow).
const Ops& ops_for(Isa isa);

// Active table. First call probes the CPU and STOCHFD_SIMD ("scalar"|"avx2").
const Ops& ops();
Isa active_isa();

// Overrides the active table, e.g. for equivalence tests. Throws if the
// requested ISA is unavailable on this machine.
void force_isa(Isa isa);

bool avx2_available();

const char* isa_name(Isa isa);

} // namespace stochfd::kernels
