#include "doctest.h"

#include <array>
#include <cmath>

#include "spinsim/chain.hpp"
#include "spinsim/noise.hpp"
#include "spinsim/trotter.hpp"
#include "test_util.hpp"

using namespace spinsim;
using spinsim::test::code_of;
using spinsim::test::max_abs_diff;

namespace {

// weighted mixture of pure random states; a generic valid density matrix
DensityMatrix random_density(int m, std::uint64_t seed) {
    const StateVector a = test::random_state(m, seed);
    const StateVector b = test::random_state(m, seed + 1000);
    const Eigen::MatrixXcd mix =
        0.65 * test::to_eigen(to_density(a)) + 0.35 * test::to_eigen(to_density(b));
    std::vector<Complex> elems(mix.size());
    for (Eigen::Index r = 0; r < mix.rows(); ++r) {
        for (Eigen::Index c = 0; c < mix.cols(); ++c) {
            elems[r * mix.cols() + c] = mix(r, c);
        }
    }
    return DensityMatrix::unchecked(m, std::move(elems));
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

} // namespace

TEST_CASE("depolarizing channel anchors") {
    const DensityMatrix rho = to_density(from_bitstring("0"));
    const std::array<int, 1> site = {1};

    const DensityMatrix same = apply_depolarizing(rho, site, 0.0);
    CHECK(max_abs_diff(test::to_eigen(same), test::to_eigen(rho)) == 0.0);

    // p=1 on |0><0|: (X rho X + Y rho Y + Z rho Z)/3 = diag(1/3, 2/3)
    const DensityMatrix mixed = apply_depolarizing(rho, site, 1.0);
    CHECK(mixed(0, 0).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(mixed(1, 1).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(mixed(0, 1)) < 1e-12);
}

TEST_CASE("depolarizing channel preserves trace and hermiticity") {
    for (std::uint64_t seed : {1, 7, 19}) {
        const DensityMatrix rho = random_density(3, seed);
        for (double p : {0.02, 0.3, 0.97}) {
            const std::array<int, 2> pair = {1, 3};
            const DensityMatrix out = apply_depolarizing(rho, pair, p);
            CHECK(std::abs(out.trace() - rho.trace()) < 1e-12);
            CHECK(out.max_hermiticity_deviation() < 1e-12);

            const std::array<int, 1> single = {2};
            const DensityMatrix out1 = apply_depolarizing(rho, single, p);
            CHECK(std::abs(out1.trace() - rho.trace()) < 1e-12);
        }
    }
}

TEST_CASE("depolarizing channel validates its inputs") {
    const DensityMatrix rho = to_density(from_bitstring("00"));
    const std::array<int, 1> site = {1};
    CHECK(code_of([&] { apply_depolarizing(rho, site, 1.5); }) == ErrorCode::BadProbability);
    CHECK(code_of([&] { apply_depolarizing(rho, site, -0.1); }) == ErrorCode::BadProbability);
    const std::array<int, 1> bad_site = {5};
    CHECK(code_of([&] { apply_depolarizing(rho, bad_site, 0.1); }) ==
          ErrorCode::TargetOutOfRange);
    const std::array<int, 2> dup = {1, 1};
    CHECK(code_of([&] { apply_depolarizing(rho, dup, 0.1); }) == ErrorCode::ArityMismatch);
    CHECK(code_of([] {
              const DensityMatrix big = to_density(from_bitstring("0000000"));
              const std::array<int, 1> s = {1};
              apply_depolarizing(big, s, 0.1);
          }) == ErrorCode::TooManyQubits);
}

TEST_CASE("noiseless execution agrees across all three modes") {
    const Circuit c{2, {g::h(1), g::cnot(1, 2), g::rz(0.4, 2)}};
    const StateVector psi0 = from_bitstring("00");
    const NoiseModel off{0.0, 0.0};

    const Eigen::MatrixXcd ideal = test::to_eigen(noisy_execute(c, psi0, off, ExecutionMode::ideal()));
    const Eigen::MatrixXcd density =
        test::to_eigen(noisy_execute(c, psi0, off, ExecutionMode::density()));
    const Eigen::MatrixXcd traj =
        test::to_eigen(noisy_execute(c, psi0, off, ExecutionMode::trajectories(10, 3)));
    CHECK(max_abs_diff(ideal, density) < 1e-9);
    CHECK(max_abs_diff(ideal, traj) < 1e-9);
}

TEST_CASE("trajectory unraveling converges to the density-matrix channel") {
    const Circuit c{2, {g::cnot(1, 2)}};
    const StateVector psi0 = apply_circuit(from_bitstring("00"), Circuit{2, {g::h(1), g::ry(0.6, 2)}});
    const NoiseModel noise{0.1, 0.0};

    const DensityMatrix channel = noisy_execute(c, psi0, noise, ExecutionMode::density());
    const DensityMatrix sampled =
        noisy_execute(c, psi0, noise, ExecutionMode::trajectories(100000, 2024));
    for (std::size_t i = 0; i < channel.dim(); ++i) {
        CHECK(std::abs(channel(i, i).real() - sampled(i, i).real()) < 0.01);
    }
}

TEST_CASE("trajectory runs are deterministic for a fixed seed") {
    const Circuit c{2, {g::h(1), g::cnot(1, 2), g::cnot(2, 1)}};
    const StateVector psi0 = from_bitstring("10");
    const NoiseModel noise{0.2, 0.05};
    const DensityMatrix a = noisy_execute(c, psi0, noise, ExecutionMode::trajectories(500, 7));
    const DensityMatrix b = noisy_execute(c, psi0, noise, ExecutionMode::trajectories(500, 7));
    CHECK(max_abs_diff(test::to_eigen(a), test::to_eigen(b)) == 0.0);
}

TEST_CASE("noisy M_s contracts toward zero for the 12-step protocol") {
    const ChainSpec chain{2, 1.0, {0.0, 0.0}, Boundary::Open};
    const StateVector neel = initial_state(InitialState::neel(), 2);
    const Circuit step = trotter_step_circuit(chain, {0.1, 12, SchemeKind::Optimized2Cnot});

    const ObservableSeries ideal =
        noisy_step_series(step, neel, 12, 0.1, {}, ExecutionMode::ideal());
    for (double p : {0.005, 0.01, 0.02}) {
        const ObservableSeries noisy =
            noisy_step_series(step, neel, 12, 0.1, {p, 0.0}, ExecutionMode::density());
        std::vector<double> abs_ideal, abs_noisy;
        for (std::size_t j = 0; j < ideal.size(); ++j) {
            abs_ideal.push_back(std::abs(ideal.ms_values[j]));
            abs_noisy.push_back(std::abs(noisy.ms_values[j]));
        }
        CHECK(mean(abs_noisy) <= mean(abs_ideal) + 1e-9);
    }
}

TEST_CASE("more CNOTs per step means larger deviation from ideal") {
    const ChainSpec chain{2, 1.0, {0.0, 0.0}, Boundary::Open};
    const StateVector neel = initial_state(InitialState::neel(), 2);
    const Circuit step_naive = trotter_step_circuit(chain, {0.1, 12, SchemeKind::Naive4Cnot});
    const Circuit step_opt = trotter_step_circuit(chain, {0.1, 12, SchemeKind::Optimized2Cnot});

    const ObservableSeries ideal =
        noisy_step_series(step_opt, neel, 12, 0.1, {}, ExecutionMode::ideal());
    for (double p : {0.005, 0.01, 0.02}) {
        const NoiseModel noise{p, 0.0};
        const ObservableSeries naive =
            noisy_step_series(step_naive, neel, 12, 0.1, noise, ExecutionMode::density());
        const ObservableSeries opt =
            noisy_step_series(step_opt, neel, 12, 0.1, noise, ExecutionMode::density());
        CHECK(mean(deviation_series(ideal, naive)) > mean(deviation_series(ideal, opt)));
    }
}

TEST_CASE("deviation_series compares matching grids only") {
    const ChainSpec chain{2, 1.0, {0.0, 0.0}, Boundary::Open};
    const StateVector neel = initial_state(InitialState::neel(), 2);
    const Circuit step = trotter_step_circuit(chain, {0.1, 4, SchemeKind::Optimized2Cnot});

    const ObservableSeries a = noisy_step_series(step, neel, 4, 0.1, {}, ExecutionMode::ideal());
    const std::vector<double> zero = deviation_series(a, a);
    for (double v : zero) CHECK(v == 0.0);

    const ObservableSeries no_noise =
        noisy_step_series(step, neel, 4, 0.1, {0.0, 0.0}, ExecutionMode::density());
    for (double v : deviation_series(a, no_noise)) CHECK(v < 1e-9);

    const ObservableSeries shorter =
        noisy_step_series(step, neel, 3, 0.1, {}, ExecutionMode::ideal());
    CHECK(code_of([&] { deviation_series(a, shorter); }) == ErrorCode::GridMismatch);
    const ObservableSeries other_dt =
        noisy_step_series(step, neel, 4, 0.2, {}, ExecutionMode::ideal());
    CHECK(code_of([&] { deviation_series(a, other_dt); }) == ErrorCode::GridMismatch);
}

TEST_CASE("noisy outputs remain valid density matrices") {
    const ChainSpec chain{2, 1.0, {0.3, -0.4}, Boundary::Open};
    const StateVector neel = initial_state(InitialState::neel(), 2);
    const Circuit step = trotter_step_circuit(chain, {0.1, 12, SchemeKind::Optimized2Cnot});
    const ObservableSeries unused =
        noisy_step_series(step, neel, 12, 0.1, {0.05, 0.01}, ExecutionMode::density());
    for (const auto& row : unused.probabilities) {
        double sum = 0.0;
        for (double p : row) sum += p;
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }

    Circuit twelve{2, {}};
    for (int s = 0; s < 12; ++s) twelve.append(step);
    const DensityMatrix rho =
        noisy_execute(twelve, neel, {0.05, 0.01}, ExecutionMode::density());
    CHECK(std::abs(rho.trace() - Complex(1.0, 0.0)) < 1e-9);
    CHECK(rho.max_hermiticity_deviation() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(test::to_eigen(rho));
    CHECK(es.eigenvalues().minCoeff() >= -1e-9);
}

TEST_CASE("noisy execution enforces its size limits") {
    const NoiseModel noise{0.01, 0.0};
    CHECK(code_of([&] {
              noisy_execute(Circuit{7, {}}, from_bitstring("0000000"), noise,
                            ExecutionMode::density());
          }) == ErrorCode::TooManyQubits);
    CHECK(code_of([&] {
              noisy_execute(Circuit{2, {}}, from_bitstring("00"), {1.5, 0.0},
                            ExecutionMode::density());
          }) == ErrorCode::BadProbability);
}
