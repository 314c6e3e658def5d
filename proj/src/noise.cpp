#include "stochfd/noise.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace stochfd {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u; // golden ratio
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u; // sqrt(3) - 1

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0), hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1), hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t out0 = hi1 ^ ctr[1] ^ key[0];
    const std::uint32_t out1 = lo1;
    const std::uint32_t out2 = hi0 ^ ctr[3] ^ key[1];
    const std::uint32_t out3 = lo0;
    ctr[0] = out0;
    ctr[1] = out1;
    ctr[2] = out2;
    ctr[3] = out3;
}

} // namespace

void Philox4x32::round10(std::uint32_t ctr[4], const std::uint32_t key_in[2]) {
    std::uint32_t key[2] = {key_in[0], key_in[1]};
    for (int i = 0; i < 10; ++i) {
        philox_round(ctr, key);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
}

double gaussian_at(std::uint64_t seed, std::uint64_t index0, std::uint64_t index1) {
    std::uint32_t ctr[4] = {static_cast<std::uint32_t>(index0),
                            static_cast<std::uint32_t>(index0 >> 32),
                            static_cast<std::uint32_t>(index1),
                            static_cast<std::uint32_t>(index1 >> 32)};
    const std::uint32_t key[2] = {static_cast<std::uint32_t>(seed),
                                  static_cast<std::uint32_t>(seed >> 32)};
    Philox4x32::round10(ctr, key);
    const std::uint64_t b0 = (static_cast<std::uint64_t>(ctr[0]) << 32) | ctr[1];
    const std::uint64_t b1 = (static_cast<std::uint64_t>(ctr[2]) << 32) | ctr[3];
    // u1 in (0,1] so the log is finite; u2 in [0,1).
    const double u1 = 1.0 - static_cast<double>(b0 >> 11) * 0x1.0p-53;
    const double u2 = static_cast<double>(b1 >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

BrownianPath sample_path(std::uint64_t seed, double T, int steps, int procs) {
    if (steps < 1) throw std::invalid_argument("sample_path: steps must be >= 1");
    if (procs < 0) throw std::invalid_argument("sample_path: procs must be >= 0");
    if (!(T > 0.0)) throw std::invalid_argument("sample_path: T must be > 0");
    BrownianPath path;
    path.T = T;
    path.steps = steps;
    path.procs = procs;
    path.seed = seed;
    path.increments.resize(static_cast<std::size_t>(steps) * procs);
    const double sd = std::sqrt(T / steps);
    for (int n = 0; n < steps; ++n)
        for (int r = 0; r < procs; ++r)
            path.increments[static_cast<std::size_t>(n) * procs + r] =
                sd * gaussian_at(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r));
    return path;
}

double BrownianPath::total(int r) const {
    double s = 0.0;
    for (int n = 0; n < steps; ++n) s += increment(n, r);
    return s;
}

BrownianPath coarsen_path(const BrownianPath& path, int factor) {
    if (factor < 1) throw std::invalid_argument("coarsen_path: factor must be >= 1");
    if (path.steps % factor != 0)
        throw std::invalid_argument("coarsen_path: steps not divisible by factor");
    if (factor == 1) return path;
    BrownianPath out;
    out.T = path.T;
    out.steps = path.steps / factor;
    out.procs = path.procs;
    out.seed = path.seed;
    out.increments.assign(static_cast<std::size_t>(out.steps) * out.procs, 0.0);
    for (int n = 0; n < path.steps; ++n) {
        const int m = n / factor;
        for (int r = 0; r < path.procs; ++r)
            out.increments[static_cast<std::size_t>(m) * out.procs + r] +=
                path.increment(n, r);
    }
    return out;
}

namespace {
constexpr char kMagic[8] = {'S', 'F', 'D', 'P', 'A', 'T', 'H', '1'};
}

void dump_path(const BrownianPath& path, const std::string& filename) {
    std::ofstream f(filename, std::ios::binary);
    if (!f) throw std::runtime_error("dump_path: cannot open " + filename);
    f.write(kMagic, sizeof(kMagic));
    auto put = [&f](const void* p, std::size_t bytes) {
        f.write(static_cast<const char*>(p), static_cast<std::streamsize>(bytes));
    };
    const std::int64_t steps = path.steps, procs = path.procs;
    const std::uint64_t seed = path.seed;
    put(&path.T, sizeof(double));
    put(&steps, sizeof(steps));
    put(&procs, sizeof(procs));
    put(&seed, sizeof(seed));
    put(path.increments.data(), path.increments.size() * sizeof(double));
    if (!f) throw std::runtime_error("dump_path: write failed for " + filename);
}

BrownianPath load_path(const std::string& filename) {
    std::ifstream f(filename, std::ios::binary);
    if (!f) throw std::runtime_error("load_path: cannot open " + filename);
    char magic[8];
    f.read(magic, sizeof(magic));
    if (!f || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("load_path: bad header in " + filename);
    BrownianPath path;
    std::int64_t steps = 0, procs = 0;
    f.read(reinterpret_cast<char*>(&path.T), sizeof(double));
    f.read(reinterpret_cast<char*>(&steps), sizeof(steps));
    f.read(reinterpret_cast<char*>(&procs), sizeof(procs));
    f.read(reinterpret_cast<char*>(&path.seed), sizeof(path.seed));
    path.steps = static_cast<int>(steps);
    path.procs = static_cast<int>(procs);
    path.increments.resize(static_cast<std::size_t>(steps) * static_cast<std::size_t>(procs));
    f.read(reinterpret_cast<char*>(path.increments.data()),
           static_cast<std::streamsize>(path.increments.size() * sizeof(double)));
    if (!f) throw std::runtime_error("load_path: truncated file " + filename);
    return path;
}

} // namespace stochfd
