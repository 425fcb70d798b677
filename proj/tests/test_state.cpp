#include "doctest.h"

#include <cmath>

#include "spinsim/state.hpp"
#include "test_util.hpp"

using namespace spinsim;

using spinsim::test::code_of;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
} // namespace

TEST_CASE("from_bitstring places amplitude 1 at the indexed basis state") {
    const StateVector s00 = from_bitstring("00");
    CHECK(s00.num_qubits() == 2);
    CHECK(s00[0] == Complex(1.0, 0.0));
    CHECK(s00[1] == Complex(0.0, 0.0));
    CHECK(s00[2] == Complex(0.0, 0.0));
    CHECK(s00[3] == Complex(0.0, 0.0));

    const StateVector s1 = from_bitstring("1");
    CHECK(s1[0] == Complex(0.0, 0.0));
    CHECK(s1[1] == Complex(1.0, 0.0));

    // leftmost character is site 1 = most significant bit
    const StateVector s10 = from_bitstring("10");
    CHECK(s10[2] == Complex(1.0, 0.0));
    CHECK(s10[0] == Complex(0.0, 0.0));
    CHECK(s10[1] == Complex(0.0, 0.0));
    CHECK(s10[3] == Complex(0.0, 0.0));
}

TEST_CASE("from_bitstring rejects bad input") {
    CHECK(code_of([] { from_bitstring(""); }) == ErrorCode::EmptyString);
    CHECK(code_of([] { from_bitstring("012"); }) == ErrorCode::InvalidCharacter);
    CHECK(code_of([] { from_bitstring("1x"); }) == ErrorCode::InvalidCharacter);
}

TEST_CASE("from_amplitudes keeps amplitudes exactly and validates the norm") {
    const StateVector a = from_amplitudes({kInvSqrt2, kInvSqrt2});
    CHECK(a[0].real() == kInvSqrt2);
    CHECK(a.num_qubits() == 1);

    const StateVector basis = from_amplitudes({1.0, 0.0, 0.0, 0.0});
    CHECK(basis.num_qubits() == 2);
    CHECK(basis[0] == Complex(1.0, 0.0));

    // the two-qubit example state with squared norm 15/7 is rejected
    const double r7 = 1.0 / std::sqrt(7.0);
    CHECK(code_of([&] { from_amplitudes({r7, 2 * r7, 3 * r7, r7}); }) ==
          ErrorCode::NotNormalized);
}

TEST_CASE("from_amplitudes rejects non-power-of-two lengths") {
    for (std::size_t n : {std::size_t(0), std::size_t(1), std::size_t(3), std::size_t(6)}) {
        std::vector<Complex> amps(n, Complex(0.0, 0.0));
        if (n) amps[0] = 1.0;
        CHECK(code_of([&] { from_amplitudes(amps); }) == ErrorCode::NotPowerOfTwo);
    }
}

TEST_CASE("bloch_coords of the axis and superposition states") {
    const BlochVector z = bloch_coords(from_bitstring("0"));
    CHECK(z.x == 0.0);
    CHECK(z.y == 0.0);
    CHECK(z.z == 1.0);

    const BlochVector x = bloch_coords(from_amplitudes({kInvSqrt2, kInvSqrt2}));
    CHECK(std::abs(x.x - 1.0) < 1e-12);
    CHECK(std::abs(x.y) < 1e-12);
    CHECK(std::abs(x.z) < 1e-12);

    const BlochVector y = bloch_coords(from_amplitudes({kInvSqrt2, Complex(0.0, kInvSqrt2)}));
    CHECK(std::abs(y.x) < 1e-12);
    CHECK(std::abs(y.y - 1.0) < 1e-12);
    CHECK(std::abs(y.z) < 1e-12);

    CHECK(code_of([] { bloch_coords(from_bitstring("00")); }) == ErrorCode::WrongQubitCount);
}

TEST_CASE("bloch vector of random pure states has unit length") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const BlochVector v = bloch_coords(test::random_state(1, seed));
        const double len = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
        CHECK(std::abs(len - 1.0) < 1e-9);
    }
}

TEST_CASE("inner_product is conjugate-linear in the first argument") {
    CHECK(inner_product(from_bitstring("00"), from_bitstring("00")) == Complex(1.0, 0.0));
    CHECK(inner_product(from_bitstring("0"), from_bitstring("1")) == Complex(0.0, 0.0));

    const StateVector plus = from_amplitudes({kInvSqrt2, kInvSqrt2});
    const StateVector minus = from_amplitudes({kInvSqrt2, -kInvSqrt2});
    CHECK(std::abs(inner_product(plus, minus)) < 1e-12);

    const StateVector ic = from_amplitudes({kInvSqrt2, Complex(0.0, kInvSqrt2)});
    CHECK(inner_product(ic, from_bitstring("1")).imag() == doctest::Approx(-kInvSqrt2));

    CHECK(code_of([] { inner_product(from_bitstring("0"), from_bitstring("00")); }) ==
          ErrorCode::DimensionMismatch);
}

TEST_CASE("to_density forms the rank-1 projector") {
    const DensityMatrix zero = to_density(from_bitstring("0"));
    CHECK(zero(0, 0) == Complex(1.0, 0.0));
    CHECK(zero(0, 1) == Complex(0.0, 0.0));
    CHECK(zero(1, 1) == Complex(0.0, 0.0));

    const DensityMatrix one = to_density(from_bitstring("1"));
    CHECK(one(1, 1) == Complex(1.0, 0.0));
    CHECK(one(0, 0) == Complex(0.0, 0.0));

    const DensityMatrix plus = to_density(from_amplitudes({kInvSqrt2, kInvSqrt2}));
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            CHECK(plus(r, c).real() == doctest::Approx(0.5).epsilon(1e-12));
            CHECK(plus(r, c).imag() == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("to_density has unit trace and purity 1 for random states") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const DensityMatrix rho = to_density(test::random_state(3, seed));
        CHECK(std::abs(rho.trace() - Complex(1.0, 0.0)) < 1e-9);
        const Eigen::MatrixXcd r = test::to_eigen(rho);
        CHECK(std::abs((r * r).trace() - Complex(1.0, 0.0)) < 1e-9);
        CHECK(rho.max_hermiticity_deviation() < 1e-12);
    }
}

TEST_CASE("random normalized inputs construct with norm within tolerance") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const StateVector psi = test::random_state(4, seed);
        CHECK(std::abs(psi.squared_norm() - 1.0) < 1e-9);
    }
}
