#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spinsim/state.hpp"

namespace spinsim {

enum class Boundary { Open, Closed };

// Disordered XX chain: H = -g_xy * sum_bonds (XX + YY) + sum_k h_k Z_k,
// bonds (1,2)..(m-1,m), plus the wrap-around bond (m,1) when closed.
struct ChainSpec {
    int num_sites;
    double g_xy;
    std::vector<double> fields;
    Boundary boundary = Boundary::Open;
};

struct DisorderSpec {
    double bound;       // h_k drawn uniformly from [-bound, +bound]
    std::uint64_t seed;
};

// Bonds in layer order: (1,2)..(m-1,m), then (m,1) when closed.
std::vector<std::pair<int, int>> chain_bonds(int num_sites, Boundary boundary);

void validate_chain(const ChainSpec& chain);

// m independent draws, uniform on [-bound, bound]; identical (seed, m, bound)
// always yields identical output (mt19937_64, explicit 53-bit mapping).
std::vector<double> sample_disorder(const DisorderSpec& spec, int m);

// Dense 2^m x 2^m Hamiltonian; real-symmetric in the computational basis.
Eigen::MatrixXcd build_hamiltonian(const ChainSpec& chain);

// Reusable e^{-iHt} propagator: one eigendecomposition, many t values.
class ExactPropagator {
public:
    explicit ExactPropagator(const ChainSpec& chain);

    StateVector evolve(const StateVector& psi0, double t) const;
    double energy(const StateVector& psi) const;

private:
    int num_sites_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
};

// e^{-iHt} |psi0> via Hermitian eigendecomposition; m <= 10.
StateVector exact_evolve(const ChainSpec& chain, const StateVector& psi0, double t);

struct InitialState {
    enum class Kind { Neel, DomainWall, Custom };
    Kind kind;
    std::string bits; // Custom only

    static InitialState neel() { return {Kind::Neel, {}}; }
    static InitialState domain_wall() { return {Kind::DomainWall, {}}; }
    static InitialState custom(std::string bitstring) { return {Kind::Custom, std::move(bitstring)}; }
};

// Neel = down-up-down-up... starting down at site 1; DomainWall = first m/2
// sites down, the rest up.
StateVector initial_state(const InitialState& kind, int m);

} // namespace spinsim
