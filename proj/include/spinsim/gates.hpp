#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinsim/kernels.hpp"
#include "spinsim/state.hpp"

namespace spinsim {

enum class GateKind {
    PauliX,
    PauliY,
    PauliZ,
    Hadamard,
    Phase, // S(lambda) = diag(1, e^{i lambda})
    Rx,    // R(phi) = e^{-i phi sigma / 2}
    Ry,
    Rz,
    Cnot, // first target is the control
    Rcnot,
    Magic,
    MagicDagger,
};

int gate_arity(GateKind kind);
bool gate_has_angle(GateKind kind);
const char* gate_name(GateKind kind);

struct GateOp {
    GateKind kind;
    double angle = 0.0;
    std::array<int, 2> targets = {0, 0}; // 1-based sites; single-qubit ops use targets[0]
};

// Shorthand constructors; circuits read as gate lists.
namespace g {
inline GateOp x(int q) { return {GateKind::PauliX, 0.0, {q, 0}}; }
inline GateOp y(int q) { return {GateKind::PauliY, 0.0, {q, 0}}; }
inline GateOp z(int q) { return {GateKind::PauliZ, 0.0, {q, 0}}; }
inline GateOp h(int q) { return {GateKind::Hadamard, 0.0, {q, 0}}; }
inline GateOp s(double lambda, int q) { return {GateKind::Phase, lambda, {q, 0}}; }
inline GateOp rx(double phi, int q) { return {GateKind::Rx, phi, {q, 0}}; }
inline GateOp ry(double phi, int q) { return {GateKind::Ry, phi, {q, 0}}; }
inline GateOp rz(double phi, int q) { return {GateKind::Rz, phi, {q, 0}}; }
inline GateOp cnot(int control, int target) { return {GateKind::Cnot, 0.0, {control, target}}; }
inline GateOp rcnot(int q1, int q2) { return {GateKind::Rcnot, 0.0, {q1, q2}}; }
inline GateOp magic(int q1, int q2) { return {GateKind::Magic, 0.0, {q1, q2}}; }
inline GateOp magic_dagger(int q1, int q2) { return {GateKind::MagicDagger, 0.0, {q1, q2}}; }
} // namespace g

struct Circuit {
    int num_qubits = 0;
    std::vector<GateOp> ops;

    void append(const GateOp& op) { ops.push_back(op); }
    void append(const Circuit& other);
};

// The literal 2x2 / 4x4 matrix for a gate kind.
Eigen::MatrixXcd gate_matrix(GateKind kind, double angle = 0.0);

StateVector apply_gate(const StateVector& state, const GateOp& op);
StateVector apply_circuit(const StateVector& state, const Circuit& circuit);

// Dense product of embedded gate matrices in application order. Built by
// entrywise index arithmetic, independent of the stride kernels, so the two
// paths cross-check each other. Limited to m <= 8.
Eigen::MatrixXcd circuit_unitary(const Circuit& circuit);

// Global phase is unobservable; equality means |tr(U^dag V)| / d >= 1 - tol.
bool unitaries_equal_up_to_phase(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v, double tol);

// rho -> U rho U^dag gate by gate; m <= 6.
DensityMatrix apply_circuit_density(const DensityMatrix& rho, const Circuit& circuit);

// One op per line: `KIND(angle) q_i [q_j]`; angles in shortest round-trip form.
std::string dump_circuit(const Circuit& circuit);

namespace detail {

void check_op(const GateOp& op, int num_qubits);

// Row-major entries (4 values for 1q kinds, 16 for 2q kinds) into `out`.
void gate_entries(GateKind kind, double angle, Complex* out);

// In-place fast paths shared by apply_gate/apply_circuit and the trajectory
// runner. `amps` holds 2^num_qubits amplitudes.
void apply_op_in_place(std::vector<Complex>& amps, int num_qubits, const GateOp& op,
                       kernels::Mode mode = kernels::Mode::Auto);

// rho -> U rho U^dag on a row-major 2^m x 2^m matrix, by applying the gate to
// the row-index qubits and its conjugate to the column-index qubits.
void apply_op_to_density_in_place(std::vector<Complex>& elems, int num_qubits, const GateOp& op,
                                  kernels::Mode mode = kernels::Mode::Auto);

} // namespace detail

} // namespace spinsim
