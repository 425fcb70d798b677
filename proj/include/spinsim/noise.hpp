#pragma once

#include <cstdint>
#include <span>

#include "spinsim/gates.hpp"
#include "spinsim/observables.hpp"

namespace spinsim {

// Symmetric depolarizing noise attached to gates: p_two_qubit after each
// CNOT/RCNOT, p_single_qubit after each single-qubit gate (default 0, which
// isolates the CNOT-count effect in scheme comparisons).
struct NoiseModel {
    double p_two_qubit = 0.01;
    double p_single_qubit = 0.0;
};

enum class ExecKind {
    Ideal,         // statevector, zero noise
    DensityMatrix, // exact channel evolution; m <= 6
    Trajectories,  // Monte-Carlo Pauli insertion; m <= 10
};

struct ExecutionMode {
    ExecKind kind = ExecKind::Ideal;
    long long n_traj = 1;
    std::uint64_t seed = 0;

    static ExecutionMode ideal() { return {ExecKind::Ideal, 1, 0}; }
    static ExecutionMode density() { return {ExecKind::DensityMatrix, 1, 0}; }
    static ExecutionMode trajectories(long long n, std::uint64_t seed) {
        return {ExecKind::Trajectories, n, seed};
    }
};

// rho -> (1-p) rho + p/(4^k - 1) sum over nontrivial Pauli products on the
// targeted sites; trace preserving.
DensityMatrix apply_depolarizing(const DensityMatrix& rho, std::span<const int> sites, double p);

// Runs a circuit under the chosen mode and returns the final density matrix.
// Trajectories average n_traj statevector runs in which, after each gate, a
// uniformly random nontrivial Pauli on the gate's sites is inserted with the
// gate's noise probability; reduction order is fixed by trajectory index.
DensityMatrix noisy_execute(const Circuit& circuit, const StateVector& psi0,
                            const NoiseModel& noise, const ExecutionMode& mode);

// Repeats `step` n_steps times, recording M_s and basis probabilities after
// every step (times j * dt, starting at 0). The workhorse behind the
// scheme-comparison and noisy-evolution jobs.
ObservableSeries noisy_step_series(const Circuit& step, const StateVector& psi0, int n_steps,
                                   double dt, const NoiseModel& noise, const ExecutionMode& mode);

// |ms_ideal - ms_noisy| per step; grids must match.
std::vector<double> deviation_series(const ObservableSeries& ideal, const ObservableSeries& noisy);

} // namespace spinsim
