#include "spinsim/chain.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "spinsim/rng.hpp"

namespace spinsim {

namespace {
constexpr int kDenseMaxSites = 12;
constexpr int kExactEvolveMaxSites = 10;
} // namespace

std::vector<std::pair<int, int>> chain_bonds(int num_sites, Boundary boundary) {
    std::vector<std::pair<int, int>> bonds;
    for (int k = 1; k < num_sites; ++k) bonds.emplace_back(k, k + 1);
    if (boundary == Boundary::Closed) bonds.emplace_back(num_sites, 1);
    return bonds;
}

void validate_chain(const ChainSpec& chain) {
    if (chain.num_sites < 2) {
        fail(ErrorCode::ConfigError, "chain: num_sites must be >= 2");
    }
    if (chain.boundary == Boundary::Closed && chain.num_sites < 3) {
        // The wrap-around bond of a 2-site ring would double-count the single
        // physical bond.
        fail(ErrorCode::ClosedChainTooSmall, "chain: closed boundary requires m >= 3");
    }
    if (static_cast<int>(chain.fields.size()) != chain.num_sites) {
        fail(ErrorCode::ConfigError, "chain: fields length " +
                                         std::to_string(chain.fields.size()) + " != num_sites " +
                                         std::to_string(chain.num_sites));
    }
    if (!std::isfinite(chain.g_xy)) {
        fail(ErrorCode::ConfigError, "chain: g_xy must be finite");
    }
    for (double h : chain.fields) {
        if (!std::isfinite(h)) fail(ErrorCode::ConfigError, "chain: fields must be finite");
    }
}

std::vector<double> sample_disorder(const DisorderSpec& spec, int m) {
    rng::Prng prng(spec.seed);
    std::vector<double> fields(m);
    for (int k = 0; k < m; ++k) {
        fields[k] = prng.uniform(-spec.bound, spec.bound);
    }
    return fields;
}

Eigen::MatrixXcd build_hamiltonian(const ChainSpec& chain) {
    validate_chain(chain);
    if (chain.num_sites > kDenseMaxSites) {
        fail(ErrorCode::TooManySites, "build_hamiltonian: m=" + std::to_string(chain.num_sites) +
                                          " exceeds the dense limit of " +
                                          std::to_string(kDenseMaxSites));
    }
    const int m = chain.num_sites;
    const std::uint64_t dim = 1ull << m;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

    // XX + YY on a bond couples only |..0..1..> <-> |..1..0..| with matrix
    // element 2; the field term is diagonal.
    for (auto [a, b] : chain_bonds(m, chain.boundary)) {
        const std::uint64_t mask_a = 1ull << site_bit_position(a, m);
        const std::uint64_t mask_b = 1ull << site_bit_position(b, m);
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & mask_a) == 0 && (i & mask_b) != 0) {
                const std::uint64_t j = (i | mask_a) & ~mask_b;
                h(i, j) += -2.0 * chain.g_xy;
                h(j, i) += -2.0 * chain.g_xy;
            }
        }
    }
    for (int k = 1; k <= m; ++k) {
        const std::uint64_t mask = 1ull << site_bit_position(k, m);
        for (std::uint64_t i = 0; i < dim; ++i) {
            h(i, i) += (i & mask) ? -chain.fields[k - 1] : chain.fields[k - 1];
        }
    }
    return h;
}

ExactPropagator::ExactPropagator(const ChainSpec& chain) : num_sites_(chain.num_sites) {
    if (chain.num_sites > kExactEvolveMaxSites) {
        fail(ErrorCode::TooManySites, "exact_evolve: m=" + std::to_string(chain.num_sites) +
                                          " exceeds the limit of " +
                                          std::to_string(kExactEvolveMaxSites));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(build_hamiltonian(chain));
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();
}

StateVector ExactPropagator::evolve(const StateVector& psi0, double t) const {
    if (psi0.num_qubits() != num_sites_) {
        fail(ErrorCode::DimensionMismatch, "exact_evolve: state has m=" +
                                               std::to_string(psi0.num_qubits()) + ", chain has m=" +
                                               std::to_string(num_sites_));
    }
    Eigen::Map<const Eigen::VectorXcd> psi(psi0.amplitudes().data(), psi0.dim());
    Eigen::VectorXcd modal = eigenvectors_.adjoint() * psi;
    for (Eigen::Index k = 0; k < modal.size(); ++k) {
        modal[k] *= std::exp(Complex(0.0, -eigenvalues_[k] * t));
    }
    Eigen::VectorXcd result = eigenvectors_ * modal;
    return StateVector::unchecked(num_sites_,
                                  std::vector<Complex>(result.data(), result.data() + result.size()));
}

double ExactPropagator::energy(const StateVector& psi) const {
    Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), psi.dim());
    Eigen::VectorXcd modal = eigenvectors_.adjoint() * v;
    double e = 0.0;
    for (Eigen::Index k = 0; k < modal.size(); ++k) {
        e += eigenvalues_[k] * std::norm(modal[k]);
    }
    return e;
}

StateVector exact_evolve(const ChainSpec& chain, const StateVector& psi0, double t) {
    return ExactPropagator(chain).evolve(psi0, t);
}

StateVector initial_state(const InitialState& kind, int m) {
    switch (kind.kind) {
    case InitialState::Kind::Neel: {
        std::string bits(m, '0');
        for (int k = 0; k < m; k += 2) bits[k] = '1';
        return from_bitstring(bits);
    }
    case InitialState::Kind::DomainWall: {
        if (m % 2 != 0) {
            fail(ErrorCode::OddSitesForDomainWall,
                 "initial_state: domain wall requires even m, got " + std::to_string(m));
        }
        std::string bits(m, '0');
        for (int k = 0; k < m / 2; ++k) bits[k] = '1';
        return from_bitstring(bits);
    }
    case InitialState::Kind::Custom:
        if (static_cast<int>(kind.bits.size()) != m) {
            fail(ErrorCode::ConfigError, "initial_state: bitstring length " +
                                             std::to_string(kind.bits.size()) + " != m " +
                                             std::to_string(m));
        }
        return from_bitstring(kind.bits);
    }
    fail(ErrorCode::ConfigError, "initial_state: unknown kind");
}

} // namespace spinsim
