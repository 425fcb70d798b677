#pragma once

#include <complex>

// Amplitude-update kernels behind gate application. Each comes in a serial
// reference version and an OpenMP version; both write every amplitude exactly
// once per call, so results are bitwise identical regardless of thread count.

namespace spinsim::kernels {

using Complex = std::complex<double>;

enum class Mode { Serial, Parallel, Auto };

// Auto switches to the parallel kernel once the amplitude array is large
// enough to pay for the fork (below that, the serial path wins on 2^m <= 4096
// arrays typical of this project; realization-level parallelism covers those).
void set_default_mode(Mode mode);
Mode default_mode();

// Applies a 2x2 matrix (row-major) to the amplitude pair selected by `bit`
// (0-based position from the least significant bit).
void apply_1q(Complex* amps, int num_qubits, int bit, const Complex* mat, Mode mode = Mode::Auto);

// Applies a 4x4 matrix (row-major) to the amplitude quadruple selected by two
// distinct bit positions; the sub-index convention is 2*bit_a + bit_b.
void apply_2q(Complex* amps, int num_qubits, int bit_a, int bit_b, const Complex* mat,
              Mode mode = Mode::Auto);

} // namespace spinsim::kernels
