#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "spinsim/errors.hpp"

namespace spinsim {

using Complex = std::complex<double>;

// Site/bit convention used throughout: sites are 1-based, site 1 is the
// leftmost ket character and the most significant bit of the flat amplitude
// index. Bit 0 = spin-up (sigma_z = +1), bit 1 = spin-down (sigma_z = -1).
inline int site_bit_position(int site, int num_qubits) { return num_qubits - site; }

inline int bit_at_site(std::uint64_t index, int site, int num_qubits) {
    return static_cast<int>((index >> site_bit_position(site, num_qubits)) & 1u);
}

// Pure m-qubit state; 2^m amplitudes with unit norm. Immutable after
// construction; gate application returns new values.
class StateVector {
public:
    // Skips the norm check. For internal construction along unitary paths;
    // user-facing construction goes through from_bitstring/from_amplitudes.
    static StateVector unchecked(int num_qubits, std::vector<Complex> amps);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const Complex> amplitudes() const { return amps_; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }

    double squared_norm() const;

private:
    StateVector(int num_qubits, std::vector<Complex> amps)
        : num_qubits_(num_qubits), amps_(std::move(amps)) {}

    int num_qubits_;
    std::vector<Complex> amps_;
};

// 2^m x 2^m density operator, stored row-major. Hermitian, unit trace.
class DensityMatrix {
public:
    static DensityMatrix unchecked(int num_qubits, std::vector<Complex> elems);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return dim_; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return elems_[r * dim_ + c]; }
    std::span<const Complex> elements() const { return elems_; }

    Complex trace() const;
    double max_hermiticity_deviation() const;

private:
    DensityMatrix(int num_qubits, std::vector<Complex> elems)
        : num_qubits_(num_qubits), dim_(1ull << num_qubits), elems_(std::move(elems)) {}

    int num_qubits_;
    std::size_t dim_;
    std::vector<Complex> elems_;
};

struct BlochVector {
    double x;
    double y;
    double z;
};

// Computational basis state; leftmost character is site 1.
StateVector from_bitstring(std::string_view bits);

// Amplitudes are stored exactly as given; inputs whose squared norm deviates
// from 1 by more than 1e-9 are rejected rather than renormalized.
StateVector from_amplitudes(std::vector<Complex> amps);

// (<sigma_x>, <sigma_y>, <sigma_z>) of a single-qubit state.
BlochVector bloch_coords(const StateVector& state);

// <a|b>, conjugate-linear in the first argument.
Complex inner_product(const StateVector& a, const StateVector& b);

DensityMatrix to_density(const StateVector& state);

} // namespace spinsim
