#include "spinsim/kernels.hpp"

#include <atomic>
#include <cstdint>

namespace spinsim::kernels {

namespace {

constexpr std::uint64_t kAutoParallelDim = 1ull << 14;

std::atomic<Mode> g_default_mode{Mode::Auto};

Mode resolve(Mode mode, std::uint64_t dim) {
    if (mode == Mode::Auto) mode = g_default_mode.load(std::memory_order_relaxed);
    if (mode == Mode::Auto) mode = dim >= kAutoParallelDim ? Mode::Parallel : Mode::Serial;
    return mode;
}

inline void update_pair(Complex* amps, std::uint64_t i0, std::uint64_t i1, const Complex* m) {
    const Complex a0 = amps[i0];
    const Complex a1 = amps[i1];
    amps[i0] = m[0] * a0 + m[1] * a1;
    amps[i1] = m[2] * a0 + m[3] * a1;
}

void apply_1q_serial(Complex* amps, int num_qubits, int bit, const Complex* m) {
    const std::uint64_t mask = 1ull << bit;
    const std::uint64_t lo = mask - 1;
    const std::uint64_t hi = ~lo;
    const std::uint64_t half = 1ull << (num_qubits - 1);
    for (std::uint64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = ((i & hi) << 1) | (i & lo);
        update_pair(amps, i0, i0 | mask, m);
    }
}

void apply_1q_parallel(Complex* amps, int num_qubits, int bit, const Complex* m) {
    const std::uint64_t mask = 1ull << bit;
    const std::uint64_t lo = mask - 1;
    const std::uint64_t hi = ~lo;
    const std::int64_t half = 1ll << (num_qubits - 1);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < half; ++i) {
        const std::uint64_t u = static_cast<std::uint64_t>(i);
        const std::uint64_t i0 = ((u & hi) << 1) | (u & lo);
        update_pair(amps, i0, i0 | mask, m);
    }
}

inline void update_quad(Complex* amps, const std::uint64_t idx[4], const Complex* m) {
    const Complex a0 = amps[idx[0]];
    const Complex a1 = amps[idx[1]];
    const Complex a2 = amps[idx[2]];
    const Complex a3 = amps[idx[3]];
    for (int r = 0; r < 4; ++r) {
        amps[idx[r]] = m[4 * r] * a0 + m[4 * r + 1] * a1 + m[4 * r + 2] * a2 + m[4 * r + 3] * a3;
    }
}

struct TwoQubitMasks {
    std::uint64_t mask_a, mask_b, lo, mid, hi;
};

TwoQubitMasks make_masks(int bit_a, int bit_b) {
    const int pmin = bit_a < bit_b ? bit_a : bit_b;
    const int pmax = bit_a < bit_b ? bit_b : bit_a;
    TwoQubitMasks mk;
    mk.mask_a = 1ull << bit_a;
    mk.mask_b = 1ull << bit_b;
    mk.lo = (1ull << pmin) - 1;
    mk.mid = ((1ull << (pmax - 1)) - 1) ^ mk.lo;
    mk.hi = ~((1ull << (pmax - 1)) - 1);
    return mk;
}

inline void expand_quad(std::uint64_t i, const TwoQubitMasks& mk, std::uint64_t idx[4]) {
    const std::uint64_t base = ((i & mk.hi) << 2) | ((i & mk.mid) << 1) | (i & mk.lo);
    idx[0] = base;
    idx[1] = base | mk.mask_b;
    idx[2] = base | mk.mask_a;
    idx[3] = base | mk.mask_a | mk.mask_b;
}

void apply_2q_serial(Complex* amps, int num_qubits, int bit_a, int bit_b, const Complex* m) {
    const TwoQubitMasks mk = make_masks(bit_a, bit_b);
    const std::uint64_t quarter = 1ull << (num_qubits - 2);
    std::uint64_t idx[4];
    for (std::uint64_t i = 0; i < quarter; ++i) {
        expand_quad(i, mk, idx);
        update_quad(amps, idx, m);
    }
}

void apply_2q_parallel(Complex* amps, int num_qubits, int bit_a, int bit_b, const Complex* m) {
    const TwoQubitMasks mk = make_masks(bit_a, bit_b);
    const std::int64_t quarter = 1ll << (num_qubits - 2);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < quarter; ++i) {
        std::uint64_t idx[4];
        expand_quad(static_cast<std::uint64_t>(i), mk, idx);
        update_quad(amps, idx, m);
    }
}

} // namespace

void set_default_mode(Mode mode) { g_default_mode.store(mode, std::memory_order_relaxed); }

Mode default_mode() { return g_default_mode.load(std::memory_order_relaxed); }

void apply_1q(Complex* amps, int num_qubits, int bit, const Complex* mat, Mode mode) {
    if (resolve(mode, 1ull << num_qubits) == Mode::Parallel) {
        apply_1q_parallel(amps, num_qubits, bit, mat);
    } else {
        apply_1q_serial(amps, num_qubits, bit, mat);
    }
}

void apply_2q(Complex* amps, int num_qubits, int bit_a, int bit_b, const Complex* mat, Mode mode) {
    if (resolve(mode, 1ull << num_qubits) == Mode::Parallel) {
        apply_2q_parallel(amps, num_qubits, bit_a, bit_b, mat);
    } else {
        apply_2q_serial(amps, num_qubits, bit_a, bit_b, mat);
    }
}

} // namespace spinsim::kernels
