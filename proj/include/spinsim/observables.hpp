#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spinsim/state.hpp"

namespace spinsim {

// Per-time-step record of a run: times, staggered magnetization, full
// basis-state probability vectors.
struct ObservableSeries {
    std::vector<double> times;
    std::vector<double> ms_values;
    std::vector<std::vector<double>> probabilities;

    std::size_t size() const { return times.size(); }
};

struct ShotCounts {
    long long shots = 0;
    std::map<std::string, long long> counts;
};

// M_s = (1/m) sum_k (-1)^k <sigma_z at k>, k starting at 1 (site 1 carries
// factor -1). <sigma_z> = P(bit 0) - P(bit 1), so a Neel state 1010... gives
// exactly +1.
double staggered_magnetization(const StateVector& state);
double staggered_magnetization(const DensityMatrix& rho);

std::vector<double> basis_probabilities(const StateVector& state);
std::vector<double> basis_probabilities(const DensityMatrix& rho);

// Probability that a measurement of `site` yields `outcome` (0 or 1).
double marginal_probability(const StateVector& state, int site, int outcome);

// `shots` draws from basis_probabilities via inverse CDF over the cumulative
// array; reproducible for a fixed seed.
ShotCounts sample_shots(const StateVector& state, long long shots, std::uint64_t seed);
ShotCounts sample_shots_from_probabilities(const std::vector<double>& probs, int num_qubits,
                                           long long shots, std::uint64_t seed);

// M_s estimated from measured bitstrings: bit 0 contributes +1, bit 1
// contributes -1 at its site, same alternating-sign sum as above.
double ms_from_counts(const ShotCounts& counts);

// Label of a basis index as an m-character bitstring, site 1 leftmost.
std::string basis_label(std::uint64_t index, int num_qubits);

} // namespace spinsim
