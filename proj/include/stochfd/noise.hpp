#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Reproducible coupled Brownian driving paths. Increments come from a
// counter-based generator keyed by (seed, step, process), so generation
// is order-independent and a path can be regenerated bit-for-bit from
// its parameters alone. Every solver in a study consumes coarsenings of
// one master path, which makes all cross-resolution error comparisons
// pathwise.

namespace stochfd {

// Philox4x32-10 counter-based block cipher (the Random123 generator).
// philox4x32(counter, key) -> 4 x uint32.
struct Philox4x32 {
    static void round10(std::uint32_t ctr[4], const std::uint32_t key[2]);
};

// Standard normal keyed by (seed, index0, index1); Box-Muller over two
// 53-bit uniforms drawn from one Philox block.
double gaussian_at(std::uint64_t seed, std::uint64_t index0, std::uint64_t index1);

struct BrownianPath {
    double T = 0.0;
    int steps = 0; // N
    int procs = 0; // R
    std::uint64_t seed = 0;
    std::vector<double> increments; // N*R row-major: increments[n*R + r]

    double dt() const { return steps > 0 ? T / steps : 0.0; }
    double increment(int n, int r) const { return increments[static_cast<std::size_t>(n) * procs + r]; }
    // w_T^r, the total increment of process r.
    double total(int r) const;
};

// N*R independent Gaussian increments with variance dt = T/N, increment
// (n, r) fully determined by (seed, n, r).
BrownianPath sample_path(std::uint64_t seed, double T, int steps, int procs);

// Sums increments in consecutive blocks: the same realization on a
// coarser time grid. steps must be divisible by factor.
BrownianPath coarsen_path(const BrownianPath& path, int factor);

// Exact binary replay format (little-endian doubles + header).
void dump_path(const BrownianPath& path, const std::string& filename);
BrownianPath load_path(const std::string& filename);

} // namespace stochfd
