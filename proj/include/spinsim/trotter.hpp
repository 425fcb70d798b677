#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spinsim/chain.hpp"
#include "spinsim/gates.hpp"

namespace spinsim {

// Per-bond synthesis scheme: 4 CNOTs (separate XX and YY exponentials) or the
// magic-basis 2-CNOT block. Both implement the same unitary; they differ only
// in gate count.
enum class SchemeKind { Naive4Cnot, Optimized2Cnot };

int scheme_cnots_per_bond(SchemeKind scheme);

struct TrotterPlan {
    double dt;
    int n_steps;
    SchemeKind scheme = SchemeKind::Optimized2Cnot;
};

// exp(i theta (XX + YY)): identity on |00>,|11>, rotation by 2 theta in the
// {|01>,|10>} block. Matrix-exponential oracle for the circuit synthesizers.
Eigen::Matrix4cd xxyy_block_matrix(double theta);

// 2-CNOT realization of exp(i theta (XX + YY)) on sites (k, k+1), from the
// magic-basis sandwich reduced to a CNOT-conjugated pair of axis rotations:
//   CNOT (e^{i a X} ox e^{i b Z}) CNOT = exp(i (a XX + b ZZ)),
// with Rx(pi/2) basis changes turning ZZ into YY.
Circuit xxyy_block_circuit(double theta, std::pair<int, int> sites, int num_qubits);

// 4-CNOT realization: exp(i theta XX) and exp(i theta YY) synthesized
// separately (the two strings commute, so the split is exact).
Circuit xxyy_block_circuit_naive(double theta, std::pair<int, int> sites, int num_qubits);

// One Rz(2 h_k dt) per site: e^{-i h Z dt} = Rz(2 h dt) exactly.
Circuit field_layer(const std::vector<double>& fields, double dt);

// One first-order step of e^{-iHt}: odd-bond blocks, even-bond blocks, field
// layer (the operator product read right-to-left as circuit order). A closed
// chain's wrap-around bond (m,1) joins the even layer if m is even, the odd
// layer if m is odd.
Circuit trotter_step_circuit(const ChainSpec& chain, const TrotterPlan& plan);

// Applies the step circuit n_steps times, recording (t_j, state) at steps
// 0, record_every, 2*record_every, ...
std::vector<std::pair<double, StateVector>> trotter_evolve(const ChainSpec& chain,
                                                           const StateVector& psi0,
                                                           const TrotterPlan& plan,
                                                           int record_every);

// Max entrywise deviation of M^dag N(lambda,0,phi) M from
// e^{i phi Z} ox e^{i lambda Z}, both sides computed with dense matrices.
double verify_magic_identity(double lambda, double phi);

int cnot_count(const Circuit& circuit);

} // namespace spinsim
