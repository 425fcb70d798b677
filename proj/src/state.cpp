#include "spinsim/state.hpp"

#include <bit>
#include <cmath>

namespace spinsim {

namespace {
constexpr double kNormTolerance = 1e-9;
}

StateVector StateVector::unchecked(int num_qubits, std::vector<Complex> amps) {
    return StateVector(num_qubits, std::move(amps));
}

double StateVector::squared_norm() const {
    double s = 0.0;
    for (const Complex& a : amps_) s += std::norm(a);
    return s;
}

DensityMatrix DensityMatrix::unchecked(int num_qubits, std::vector<Complex> elems) {
    return DensityMatrix(num_qubits, std::move(elems));
}

Complex DensityMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double DensityMatrix::max_hermiticity_deviation() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return worst;
}

StateVector from_bitstring(std::string_view bits) {
    if (bits.empty()) fail(ErrorCode::EmptyString, "from_bitstring: empty bitstring");
    std::uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            fail(ErrorCode::InvalidCharacter,
                 std::string("from_bitstring: invalid character '") + c + "'");
        }
        index = (index << 1) | static_cast<std::uint64_t>(c - '0');
    }
    const int m = static_cast<int>(bits.size());
    std::vector<Complex> amps(1ull << m, Complex(0.0, 0.0));
    amps[index] = Complex(1.0, 0.0);
    return StateVector::unchecked(m, std::move(amps));
}

StateVector from_amplitudes(std::vector<Complex> amps) {
    const std::size_t n = amps.size();
    if (n < 2 || !std::has_single_bit(n)) {
        fail(ErrorCode::NotPowerOfTwo,
             "from_amplitudes: length " + std::to_string(n) + " is not a power of two >= 2");
    }
    double sq = 0.0;
    for (const Complex& a : amps) sq += std::norm(a);
    if (std::abs(sq - 1.0) > kNormTolerance) {
        fail(ErrorCode::NotNormalized,
             "from_amplitudes: squared norm " + std::to_string(sq) + " deviates from 1");
    }
    return StateVector::unchecked(static_cast<int>(std::countr_zero(n)), std::move(amps));
}

BlochVector bloch_coords(const StateVector& state) {
    if (state.num_qubits() != 1) {
        fail(ErrorCode::WrongQubitCount, "bloch_coords: expected a single-qubit state, got m=" +
                                             std::to_string(state.num_qubits()));
    }
    const Complex a = state[0];
    const Complex b = state[1];
    const Complex cross = std::conj(a) * b;
    return BlochVector{2.0 * cross.real(), 2.0 * cross.imag(), std::norm(a) - std::norm(b)};
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        fail(ErrorCode::DimensionMismatch, "inner_product: qubit counts differ");
    }
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

DensityMatrix to_density(const StateVector& state) {
    const std::size_t d = state.dim();
    std::vector<Complex> elems(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            elems[r * d + c] = state[r] * std::conj(state[c]);
        }
    }
    return DensityMatrix::unchecked(state.num_qubits(), std::move(elems));
}

} // namespace spinsim
