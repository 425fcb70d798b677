#include "spinsim/trotter.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "spinsim/linalg.hpp"

namespace spinsim {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd pauli_y() {
    Eigen::Matrix2cd m;
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

void check_site_pair(std::pair<int, int> sites, int num_qubits) {
    const auto [a, b] = sites;
    const bool adjacent = b == a + 1 && a >= 1 && b <= num_qubits;
    const bool wrap = a == num_qubits && b == 1 && num_qubits >= 3;
    if (!adjacent && !wrap) {
        fail(ErrorCode::InvalidSitePair, "xxyy block: sites (" + std::to_string(a) + ", " +
                                             std::to_string(b) +
                                             ") are not an adjacent or wrap-around pair for m=" +
                                             std::to_string(num_qubits));
    }
}

void append_xxyy_optimized(Circuit& c, double theta, int a, int b) {
    c.append(g::rx(kHalfPi, a));
    c.append(g::rx(kHalfPi, b));
    c.append(g::cnot(a, b));
    c.append(g::rx(-2.0 * theta, a));
    c.append(g::rz(-2.0 * theta, b));
    c.append(g::cnot(a, b));
    c.append(g::rx(-kHalfPi, a));
    c.append(g::rx(-kHalfPi, b));
}

void append_xxyy_naive(Circuit& c, double theta, int a, int b) {
    // exp(i theta XX) in the Hadamard basis
    c.append(g::h(a));
    c.append(g::h(b));
    c.append(g::cnot(a, b));
    c.append(g::rz(-2.0 * theta, b));
    c.append(g::cnot(a, b));
    c.append(g::h(a));
    c.append(g::h(b));
    // exp(i theta YY) in the Rx(pi/2) basis
    c.append(g::rx(kHalfPi, a));
    c.append(g::rx(kHalfPi, b));
    c.append(g::cnot(a, b));
    c.append(g::rz(-2.0 * theta, b));
    c.append(g::cnot(a, b));
    c.append(g::rx(-kHalfPi, a));
    c.append(g::rx(-kHalfPi, b));
}

void append_block(Circuit& c, SchemeKind scheme, double theta, std::pair<int, int> sites) {
    if (scheme == SchemeKind::Optimized2Cnot) {
        append_xxyy_optimized(c, theta, sites.first, sites.second);
    } else {
        append_xxyy_naive(c, theta, sites.first, sites.second);
    }
}

} // namespace

int scheme_cnots_per_bond(SchemeKind scheme) {
    return scheme == SchemeKind::Optimized2Cnot ? 2 : 4;
}

Eigen::Matrix4cd xxyy_block_matrix(double theta) {
    const Eigen::Matrix4cd h = Eigen::kroneckerProduct(pauli_x(), pauli_x()).eval() +
                               Eigen::kroneckerProduct(pauli_y(), pauli_y()).eval();
    return expm_i_hermitian(h, theta);
}

Circuit xxyy_block_circuit(double theta, std::pair<int, int> sites, int num_qubits) {
    check_site_pair(sites, num_qubits);
    Circuit c{num_qubits, {}};
    append_xxyy_optimized(c, theta, sites.first, sites.second);
    return c;
}

Circuit xxyy_block_circuit_naive(double theta, std::pair<int, int> sites, int num_qubits) {
    check_site_pair(sites, num_qubits);
    Circuit c{num_qubits, {}};
    append_xxyy_naive(c, theta, sites.first, sites.second);
    return c;
}

Circuit field_layer(const std::vector<double>& fields, double dt) {
    const int m = static_cast<int>(fields.size());
    Circuit c{m, {}};
    for (int k = 1; k <= m; ++k) {
        c.append(g::rz(2.0 * fields[k - 1] * dt, k));
    }
    return c;
}

Circuit trotter_step_circuit(const ChainSpec& chain, const TrotterPlan& plan) {
    validate_chain(chain);
    const int m = chain.num_sites;
    const double theta = chain.g_xy * plan.dt;
    Circuit c{m, {}};
    for (int parity : {1, 0}) { // odd bonds first, then even
        for (int k = parity == 1 ? 1 : 2; k < m; k += 2) {
            append_block(c, plan.scheme, theta, {k, k + 1});
        }
        if (chain.boundary == Boundary::Closed && m % 2 == parity) {
            append_block(c, plan.scheme, theta, {m, 1});
        }
    }
    c.append(field_layer(chain.fields, plan.dt));
    return c;
}

std::vector<std::pair<double, StateVector>> trotter_evolve(const ChainSpec& chain,
                                                           const StateVector& psi0,
                                                           const TrotterPlan& plan,
                                                           int record_every) {
    if (record_every < 1) {
        fail(ErrorCode::ConfigError, "trotter_evolve: record_every must be >= 1");
    }
    if (psi0.num_qubits() != chain.num_sites) {
        fail(ErrorCode::DimensionMismatch, "trotter_evolve: state has m=" +
                                               std::to_string(psi0.num_qubits()) +
                                               ", chain has m=" + std::to_string(chain.num_sites));
    }
    const Circuit step = trotter_step_circuit(chain, plan);
    std::vector<std::pair<double, StateVector>> recorded;
    recorded.emplace_back(0.0, psi0);

    std::vector<Complex> amps(psi0.amplitudes().begin(), psi0.amplitudes().end());
    for (int j = 1; j <= plan.n_steps; ++j) {
        for (const GateOp& op : step.ops) {
            detail::apply_op_in_place(amps, chain.num_sites, op);
        }
        if (j % record_every == 0) {
            recorded.emplace_back(j * plan.dt, StateVector::unchecked(chain.num_sites, amps));
        }
    }
    return recorded;
}

double verify_magic_identity(double lambda, double phi) {
    const Eigen::Matrix4cd xx = Eigen::kroneckerProduct(pauli_x(), pauli_x());
    const Eigen::Matrix4cd zz = Eigen::kroneckerProduct(pauli_z(), pauli_z());
    const Eigen::MatrixXcd n = expm_i_hermitian(lambda * xx + phi * zz, 1.0);
    const Eigen::MatrixXcd magic = gate_matrix(GateKind::Magic);
    const Eigen::MatrixXcd lhs = magic.adjoint() * n * magic;
    const Eigen::Matrix4cd rhs = Eigen::kroneckerProduct(
        expm_i_hermitian(pauli_z(), phi).eval(), expm_i_hermitian(pauli_z(), lambda).eval());
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

int cnot_count(const Circuit& circuit) {
    int n = 0;
    for (const GateOp& op : circuit.ops) {
        if (op.kind == GateKind::Cnot || op.kind == GateKind::Rcnot) ++n;
    }
    return n;
}

} // namespace spinsim
