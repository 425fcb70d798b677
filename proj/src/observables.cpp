#include "spinsim/observables.hpp"

#include <algorithm>
#include <cmath>

#include "spinsim/rng.hpp"

namespace spinsim {

namespace {

// Site-major sum over <sigma_z> values; one of the two code paths for M_s
// (ms_from_counts is the bitstring-major one).
double ms_from_probability_array(const std::vector<double>& probs, int m) {
    double ms = 0.0;
    for (int k = 1; k <= m; ++k) {
        double sz = 0.0;
        for (std::uint64_t i = 0; i < probs.size(); ++i) {
            sz += probs[i] * (bit_at_site(i, k, m) == 0 ? 1.0 : -1.0);
        }
        ms += (k % 2 == 0 ? 1.0 : -1.0) * sz;
    }
    return ms / m;
}

} // namespace

double staggered_magnetization(const StateVector& state) {
    return ms_from_probability_array(basis_probabilities(state), state.num_qubits());
}

double staggered_magnetization(const DensityMatrix& rho) {
    return ms_from_probability_array(basis_probabilities(rho), rho.num_qubits());
}

std::vector<double> basis_probabilities(const StateVector& state) {
    std::vector<double> probs(state.dim());
    for (std::uint64_t i = 0; i < probs.size(); ++i) probs[i] = std::norm(state[i]);
    return probs;
}

std::vector<double> basis_probabilities(const DensityMatrix& rho) {
    std::vector<double> probs(rho.dim());
    for (std::uint64_t i = 0; i < probs.size(); ++i) probs[i] = rho(i, i).real();
    return probs;
}

double marginal_probability(const StateVector& state, int site, int outcome) {
    const int m = state.num_qubits();
    if (site < 1 || site > m) {
        fail(ErrorCode::SiteOutOfRange,
             "marginal_probability: site " + std::to_string(site) + " outside [1, " +
                 std::to_string(m) + "]");
    }
    double p = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        if (bit_at_site(i, site, m) == outcome) p += std::norm(state[i]);
    }
    return p;
}

ShotCounts sample_shots_from_probabilities(const std::vector<double>& probs, int num_qubits,
                                           long long shots, std::uint64_t seed) {
    if (shots < 1) fail(ErrorCode::ConfigError, "sample_shots: shots must be >= 1");
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    rng::Prng prng(seed);
    ShotCounts out;
    out.shots = shots;
    for (long long s = 0; s < shots; ++s) {
        const double u = prng.uniform01() * acc;
        const std::size_t idx = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        const std::uint64_t basis = std::min<std::uint64_t>(idx, probs.size() - 1);
        ++out.counts[basis_label(basis, num_qubits)];
    }
    return out;
}

ShotCounts sample_shots(const StateVector& state, long long shots, std::uint64_t seed) {
    return sample_shots_from_probabilities(basis_probabilities(state), state.num_qubits(), shots,
                                           seed);
}

double ms_from_counts(const ShotCounts& counts) {
    if (counts.counts.empty()) {
        fail(ErrorCode::EmptyCounts, "ms_from_counts: no counted bitstrings");
    }
    double total = 0.0;
    for (const auto& [bits, n] : counts.counts) {
        const int m = static_cast<int>(bits.size());
        double w = 0.0;
        for (int k = 1; k <= m; ++k) {
            const double sign = bits[k - 1] == '0' ? 1.0 : -1.0;
            w += (k % 2 == 0 ? 1.0 : -1.0) * sign;
        }
        total += static_cast<double>(n) * (w / m);
    }
    return total / static_cast<double>(counts.shots);
}

std::string basis_label(std::uint64_t index, int num_qubits) {
    std::string bits(num_qubits, '0');
    for (int k = 1; k <= num_qubits; ++k) {
        bits[k - 1] = bit_at_site(index, k, num_qubits) ? '1' : '0';
    }
    return bits;
}

} // namespace spinsim
