#include "spinsim/noise.hpp"

#include <cmath>

#include "spinsim/rng.hpp"

namespace spinsim {

namespace {

constexpr int kDensityMaxQubits = 6;
constexpr int kTrajectoryMaxQubits = 10;
constexpr long long kTrajectoryChunk = 256;

GateKind pauli_kind(int idx) {
    switch (idx) {
    case 1: return GateKind::PauliX;
    case 2: return GateKind::PauliY;
    default: return GateKind::PauliZ;
    }
}

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        fail(ErrorCode::BadProbability, "noise: probability must lie in [0, 1]");
    }
}

double gate_noise_probability(const GateOp& op, const NoiseModel& noise) {
    if (op.kind == GateKind::Cnot || op.kind == GateKind::Rcnot) return noise.p_two_qubit;
    return gate_arity(op.kind) == 1 ? noise.p_single_qubit : 0.0;
}

// Conjugates rho by the Pauli product encoded by `code` (base-4 digits over
// the targeted sites; 0 = identity digit).
void conjugate_pauli_in_place(std::vector<Complex>& elems, int m, std::span<const int> sites,
                              int code) {
    for (std::size_t s = 0; s < sites.size(); ++s) {
        const int digit = (code >> (2 * (sites.size() - 1 - s))) & 3;
        if (digit == 0) continue;
        detail::apply_op_to_density_in_place(elems, m, {pauli_kind(digit), 0.0, {sites[s], 0}});
    }
}

void depolarize_in_place(std::vector<Complex>& elems, int m, std::span<const int> sites, double p) {
    if (p == 0.0) return;
    const int n_pauli = sites.size() == 1 ? 3 : 15;
    std::vector<Complex> acc(elems.size(), Complex(0.0, 0.0));
    for (int code = 1; code <= n_pauli; ++code) {
        std::vector<Complex> term = elems;
        conjugate_pauli_in_place(term, m, sites, code);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
    }
    const double keep = 1.0 - p;
    const double mix = p / n_pauli;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        elems[i] = keep * elems[i] + mix * acc[i];
    }
}

// Statevector unraveling: with probability p, insert one uniformly random
// nontrivial Pauli on the gate's sites.
void maybe_insert_pauli(std::vector<Complex>& amps, int m, const GateOp& op, double p,
                        rng::Prng& prng) {
    if (p <= 0.0) return;
    if (prng.uniform01() >= p) return;
    const int arity = gate_arity(op.kind);
    const int n_pauli = arity == 1 ? 3 : 15;
    const int code = 1 + static_cast<int>(prng.uniform_index(n_pauli));
    if (arity == 1) {
        detail::apply_op_in_place(amps, m, {pauli_kind(code), 0.0, {op.targets[0], 0}});
    } else {
        const int pa = code >> 2;
        const int pb = code & 3;
        if (pa != 0) detail::apply_op_in_place(amps, m, {pauli_kind(pa), 0.0, {op.targets[0], 0}});
        if (pb != 0) detail::apply_op_in_place(amps, m, {pauli_kind(pb), 0.0, {op.targets[1], 0}});
    }
}

void run_trajectory_circuit(std::vector<Complex>& amps, int m, const Circuit& circuit,
                            const NoiseModel& noise, rng::Prng& prng) {
    for (const GateOp& op : circuit.ops) {
        detail::apply_op_in_place(amps, m, op);
        maybe_insert_pauli(amps, m, op, gate_noise_probability(op, noise), prng);
    }
}

void accumulate_outer_product(std::vector<Complex>& acc, const std::vector<Complex>& amps) {
    const std::size_t d = amps.size();
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            acc[r * d + c] += amps[r] * std::conj(amps[c]);
        }
    }
}

void check_mode_limits(int m, const ExecutionMode& mode) {
    if (mode.kind == ExecKind::DensityMatrix && m > kDensityMaxQubits) {
        fail(ErrorCode::TooManyQubits, "noisy execution: density mode limited to m <= " +
                                           std::to_string(kDensityMaxQubits));
    }
    if (mode.kind != ExecKind::DensityMatrix && m > kTrajectoryMaxQubits) {
        fail(ErrorCode::TooManyQubits, "noisy execution: limited to m <= " +
                                           std::to_string(kTrajectoryMaxQubits));
    }
    if (mode.kind == ExecKind::Trajectories && mode.n_traj < 1) {
        fail(ErrorCode::ConfigError, "noisy execution: n_traj must be >= 1");
    }
}

} // namespace

DensityMatrix apply_depolarizing(const DensityMatrix& rho, std::span<const int> sites, double p) {
    check_probability(p);
    if (rho.num_qubits() > kDensityMaxQubits) {
        fail(ErrorCode::TooManyQubits, "apply_depolarizing: m=" + std::to_string(rho.num_qubits()) +
                                           " exceeds the density limit of " +
                                           std::to_string(kDensityMaxQubits));
    }
    if (sites.empty() || sites.size() > 2) {
        fail(ErrorCode::ArityMismatch, "apply_depolarizing: expected 1 or 2 sites");
    }
    for (int s : sites) {
        if (s < 1 || s > rho.num_qubits()) {
            fail(ErrorCode::TargetOutOfRange,
                 "apply_depolarizing: site " + std::to_string(s) + " out of range");
        }
    }
    if (sites.size() == 2 && sites[0] == sites[1]) {
        fail(ErrorCode::ArityMismatch, "apply_depolarizing: sites must be distinct");
    }
    std::vector<Complex> elems(rho.elements().begin(), rho.elements().end());
    depolarize_in_place(elems, rho.num_qubits(), sites, p);
    return DensityMatrix::unchecked(rho.num_qubits(), std::move(elems));
}

DensityMatrix noisy_execute(const Circuit& circuit, const StateVector& psi0,
                            const NoiseModel& noise, const ExecutionMode& mode) {
    const int m = psi0.num_qubits();
    check_probability(noise.p_two_qubit);
    check_probability(noise.p_single_qubit);
    check_mode_limits(m, mode);

    switch (mode.kind) {
    case ExecKind::Ideal:
        return to_density(apply_circuit(psi0, circuit));
    case ExecKind::DensityMatrix: {
        DensityMatrix rho = to_density(psi0);
        std::vector<Complex> elems(rho.elements().begin(), rho.elements().end());
        for (const GateOp& op : circuit.ops) {
            detail::apply_op_to_density_in_place(elems, m, op);
            const double p = gate_noise_probability(op, noise);
            if (p > 0.0) {
                const int arity = gate_arity(op.kind);
                depolarize_in_place(elems, m, std::span<const int>(op.targets.data(), arity), p);
            }
        }
        return DensityMatrix::unchecked(m, std::move(elems));
    }
    case ExecKind::Trajectories: {
        const std::size_t dd = psi0.dim() * psi0.dim();
        const long long n_chunks = (mode.n_traj + kTrajectoryChunk - 1) / kTrajectoryChunk;
        std::vector<std::vector<Complex>> partial(n_chunks);

#pragma omp parallel for schedule(dynamic)
        for (long long c = 0; c < n_chunks; ++c) {
            std::vector<Complex> acc(dd, Complex(0.0, 0.0));
            const long long begin = c * kTrajectoryChunk;
            const long long end = std::min(mode.n_traj, begin + kTrajectoryChunk);
            for (long long t = begin; t < end; ++t) {
                std::vector<Complex> amps(psi0.amplitudes().begin(), psi0.amplitudes().end());
                rng::Prng prng(rng::derive_seed(mode.seed, static_cast<std::uint64_t>(t)));
                run_trajectory_circuit(amps, m, circuit, noise, prng);
                accumulate_outer_product(acc, amps);
            }
            partial[c] = std::move(acc);
        }

        // fixed chunk order keeps the reduction bitwise deterministic
        std::vector<Complex> total(dd, Complex(0.0, 0.0));
        for (const auto& acc : partial) {
            for (std::size_t i = 0; i < dd; ++i) total[i] += acc[i];
        }
        const double inv = 1.0 / static_cast<double>(mode.n_traj);
        for (Complex& v : total) v *= inv;
        return DensityMatrix::unchecked(m, std::move(total));
    }
    }
    fail(ErrorCode::ConfigError, "noisy_execute: unknown execution mode");
}

ObservableSeries noisy_step_series(const Circuit& step, const StateVector& psi0, int n_steps,
                                   double dt, const NoiseModel& noise, const ExecutionMode& mode) {
    const int m = psi0.num_qubits();
    check_probability(noise.p_two_qubit);
    check_probability(noise.p_single_qubit);
    check_mode_limits(m, mode);

    ObservableSeries series;
    series.times.reserve(n_steps + 1);
    for (int j = 0; j <= n_steps; ++j) series.times.push_back(j * dt);

    switch (mode.kind) {
    case ExecKind::Ideal: {
        std::vector<Complex> amps(psi0.amplitudes().begin(), psi0.amplitudes().end());
        for (int j = 0; j <= n_steps; ++j) {
            if (j > 0) {
                for (const GateOp& op : step.ops) detail::apply_op_in_place(amps, m, op);
            }
            const StateVector snapshot = StateVector::unchecked(m, amps);
            series.ms_values.push_back(staggered_magnetization(snapshot));
            series.probabilities.push_back(basis_probabilities(snapshot));
        }
        return series;
    }
    case ExecKind::DensityMatrix: {
        DensityMatrix rho0 = to_density(psi0);
        std::vector<Complex> elems(rho0.elements().begin(), rho0.elements().end());
        for (int j = 0; j <= n_steps; ++j) {
            if (j > 0) {
                for (const GateOp& op : step.ops) {
                    detail::apply_op_to_density_in_place(elems, m, op);
                    const double p = gate_noise_probability(op, noise);
                    if (p > 0.0) {
                        const int arity = gate_arity(op.kind);
                        depolarize_in_place(elems, m,
                                            std::span<const int>(op.targets.data(), arity), p);
                    }
                }
            }
            const DensityMatrix snapshot = DensityMatrix::unchecked(m, elems);
            series.ms_values.push_back(staggered_magnetization(snapshot));
            series.probabilities.push_back(basis_probabilities(snapshot));
        }
        return series;
    }
    case ExecKind::Trajectories: {
        const std::size_t dim = psi0.dim();
        const int n_rec = n_steps + 1;
        const long long n_chunks = (mode.n_traj + kTrajectoryChunk - 1) / kTrajectoryChunk;
        struct Partial {
            std::vector<double> ms;
            std::vector<double> probs; // n_rec x dim
        };
        std::vector<Partial> partial(n_chunks);

#pragma omp parallel for schedule(dynamic)
        for (long long c = 0; c < n_chunks; ++c) {
            Partial acc{std::vector<double>(n_rec, 0.0), std::vector<double>(n_rec * dim, 0.0)};
            const long long begin = c * kTrajectoryChunk;
            const long long end = std::min(mode.n_traj, begin + kTrajectoryChunk);
            for (long long t = begin; t < end; ++t) {
                std::vector<Complex> amps(psi0.amplitudes().begin(), psi0.amplitudes().end());
                rng::Prng prng(rng::derive_seed(mode.seed, static_cast<std::uint64_t>(t)));
                for (int j = 0; j <= n_steps; ++j) {
                    if (j > 0) {
                        for (const GateOp& op : step.ops) {
                            detail::apply_op_in_place(amps, m, op);
                            maybe_insert_pauli(amps, m, op, gate_noise_probability(op, noise),
                                               prng);
                        }
                    }
                    const StateVector snapshot = StateVector::unchecked(m, amps);
                    acc.ms[j] += staggered_magnetization(snapshot);
                    const std::vector<double> probs = basis_probabilities(snapshot);
                    for (std::size_t i = 0; i < dim; ++i) acc.probs[j * dim + i] += probs[i];
                }
            }
            partial[c] = std::move(acc);
        }

        const double inv = 1.0 / static_cast<double>(mode.n_traj);
        series.ms_values.assign(n_rec, 0.0);
        series.probabilities.assign(n_rec, std::vector<double>(dim, 0.0));
        for (const Partial& acc : partial) {
            for (int j = 0; j < n_rec; ++j) {
                series.ms_values[j] += acc.ms[j];
                for (std::size_t i = 0; i < dim; ++i) {
                    series.probabilities[j][i] += acc.probs[j * dim + i];
                }
            }
        }
        for (int j = 0; j < n_rec; ++j) {
            series.ms_values[j] *= inv;
            for (double& p : series.probabilities[j]) p *= inv;
        }
        return series;
    }
    }
    fail(ErrorCode::ConfigError, "noisy_step_series: unknown execution mode");
}

std::vector<double> deviation_series(const ObservableSeries& ideal, const ObservableSeries& noisy) {
    if (ideal.size() != noisy.size()) {
        fail(ErrorCode::GridMismatch, "deviation_series: series lengths differ");
    }
    for (std::size_t j = 0; j < ideal.size(); ++j) {
        if (std::abs(ideal.times[j] - noisy.times[j]) > 1e-12) {
            fail(ErrorCode::GridMismatch, "deviation_series: time grids differ at step " +
                                              std::to_string(j));
        }
    }
    std::vector<double> dev(ideal.size());
    for (std::size_t j = 0; j < ideal.size(); ++j) {
        dev[j] = std::abs(ideal.ms_values[j] - noisy.ms_values[j]);
    }
    return dev;
}

} // namespace spinsim
