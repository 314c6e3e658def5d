#include "stochfd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace stochfd::kernels {

const Ops& avx2_ops_impl(); // defined in kernels_avx2.cpp

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

namespace {

Isa probe_isa() {
    if (const char* env = std::getenv("STOCHFD_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0) {
            if (!avx2_available())
                throw std::runtime_error("STOCHFD_SIMD=avx2 requested but this CPU lacks AVX2/FMA");
            return Isa::avx2;
        }
    }
    return avx2_available() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& active_slot() {
    static std::atomic<Isa> slot{probe_isa()};
    return slot;
}

} // namespace

const Ops& ops_for(Isa isa) {
    return isa == Isa::avx2 ? avx2_ops_impl() : scalar_ops();
}

const Ops& ops() { return ops_for(active_slot().load(std::memory_order_relaxed)); }

Isa active_isa() { return active_slot().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
    if (isa == Isa::avx2 && !avx2_available())
        throw std::runtime_error("AVX2/FMA not available on this machine");
    active_slot().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

} // namespace stochfd::kernels
