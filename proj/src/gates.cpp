#include "spinsim/gates.hpp"

#include <cmath>
#include <cstdint>

#include "spinsim/format.hpp"

namespace spinsim {

namespace {

constexpr Complex kI(0.0, 1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

constexpr int kCircuitUnitaryMaxQubits = 8;
constexpr int kDensityMaxQubits = 6;

} // namespace

int gate_arity(GateKind kind) {
    switch (kind) {
    case GateKind::Cnot:
    case GateKind::Rcnot:
    case GateKind::Magic:
    case GateKind::MagicDagger:
        return 2;
    default:
        return 1;
    }
}

bool gate_has_angle(GateKind kind) {
    switch (kind) {
    case GateKind::Phase:
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
        return true;
    default:
        return false;
    }
}

const char* gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::PauliX: return "X";
    case GateKind::PauliY: return "Y";
    case GateKind::PauliZ: return "Z";
    case GateKind::Hadamard: return "H";
    case GateKind::Phase: return "S";
    case GateKind::Rx: return "RX";
    case GateKind::Ry: return "RY";
    case GateKind::Rz: return "RZ";
    case GateKind::Cnot: return "CNOT";
    case GateKind::Rcnot: return "RCNOT";
    case GateKind::Magic: return "MAGIC";
    case GateKind::MagicDagger: return "MAGICDAG";
    }
    return "?";
}

void Circuit::append(const Circuit& other) {
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

namespace detail {

void gate_entries(GateKind kind, double angle, Complex* out) {
    switch (kind) {
    case GateKind::PauliX:
        out[0] = 0; out[1] = 1;
        out[2] = 1; out[3] = 0;
        return;
    case GateKind::PauliY:
        out[0] = 0; out[1] = -kI;
        out[2] = kI; out[3] = 0;
        return;
    case GateKind::PauliZ:
        out[0] = 1; out[1] = 0;
        out[2] = 0; out[3] = -1;
        return;
    case GateKind::Hadamard:
        out[0] = kInvSqrt2; out[1] = kInvSqrt2;
        out[2] = kInvSqrt2; out[3] = -kInvSqrt2;
        return;
    case GateKind::Phase:
        out[0] = 1; out[1] = 0;
        out[2] = 0; out[3] = std::exp(kI * angle);
        return;
    case GateKind::Rx: {
        const double c = std::cos(angle / 2), s = std::sin(angle / 2);
        out[0] = c; out[1] = -kI * s;
        out[2] = -kI * s; out[3] = c;
        return;
    }
    case GateKind::Ry: {
        const double c = std::cos(angle / 2), s = std::sin(angle / 2);
        out[0] = c; out[1] = -s;
        out[2] = s; out[3] = c;
        return;
    }
    case GateKind::Rz:
        out[0] = std::exp(-kI * (angle / 2)); out[1] = 0;
        out[2] = 0; out[3] = std::exp(kI * (angle / 2));
        return;
    case GateKind::Cnot: {
        static constexpr double m[16] = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
        for (int i = 0; i < 16; ++i) out[i] = m[i];
        return;
    }
    case GateKind::Rcnot: {
        static constexpr double m[16] = {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0};
        for (int i = 0; i < 16; ++i) out[i] = m[i];
        return;
    }
    case GateKind::Magic:
    case GateKind::MagicDagger: {
        // M = (1/sqrt 2) [[1, i, 0, 0], [0, 0, i, 1], [0, 0, i, -1], [1, -i, 0, 0]]
        const Complex w = kInvSqrt2;
        const Complex wi = kI * kInvSqrt2;
        const Complex m[16] = {w, wi, 0, 0, 0, 0, wi, w, 0, 0, wi, -w, w, -wi, 0, 0};
        if (kind == GateKind::Magic) {
            for (int i = 0; i < 16; ++i) out[i] = m[i];
        } else {
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) out[4 * r + c] = std::conj(m[4 * c + r]);
        }
        return;
    }
    }
}

void check_op(const GateOp& op, int num_qubits) {
    const int arity = gate_arity(op.kind);
    for (int i = 0; i < arity; ++i) {
        const int q = op.targets[i];
        if (q < 1 || q > num_qubits) {
            fail(ErrorCode::TargetOutOfRange, std::string(gate_name(op.kind)) + ": target q" +
                                                  std::to_string(q) + " outside [1, " +
                                                  std::to_string(num_qubits) + "]");
        }
    }
    if (arity == 2 && op.targets[0] == op.targets[1]) {
        fail(ErrorCode::ArityMismatch,
             std::string(gate_name(op.kind)) + ": target indices must be distinct");
    }
}

void apply_op_in_place(std::vector<Complex>& amps, int num_qubits, const GateOp& op,
                       kernels::Mode mode) {
    check_op(op, num_qubits);
    Complex entries[16];
    gate_entries(op.kind, op.angle, entries);
    if (gate_arity(op.kind) == 1) {
        kernels::apply_1q(amps.data(), num_qubits, site_bit_position(op.targets[0], num_qubits),
                          entries, mode);
    } else {
        kernels::apply_2q(amps.data(), num_qubits, site_bit_position(op.targets[0], num_qubits),
                          site_bit_position(op.targets[1], num_qubits), entries, mode);
    }
}

void apply_op_to_density_in_place(std::vector<Complex>& elems, int num_qubits, const GateOp& op,
                                  kernels::Mode mode) {
    check_op(op, num_qubits);
    Complex entries[16];
    gate_entries(op.kind, op.angle, entries);
    const int arity = gate_arity(op.kind);
    const int n = arity == 1 ? 4 : 16;
    Complex conj_entries[16];
    for (int i = 0; i < n; ++i) conj_entries[i] = std::conj(entries[i]);

    // Flat index = r * 2^m + c: row-side site k sits at bit 2m-k, column-side
    // site k at bit m-k. U acts on the rows, conj(U) on the columns.
    const int total = 2 * num_qubits;
    if (arity == 1) {
        const int row_bit = total - op.targets[0];
        const int col_bit = num_qubits - op.targets[0];
        kernels::apply_1q(elems.data(), total, row_bit, entries, mode);
        kernels::apply_1q(elems.data(), total, col_bit, conj_entries, mode);
    } else {
        kernels::apply_2q(elems.data(), total, total - op.targets[0], total - op.targets[1],
                          entries, mode);
        kernels::apply_2q(elems.data(), total, num_qubits - op.targets[0],
                          num_qubits - op.targets[1], conj_entries, mode);
    }
}

} // namespace detail

Eigen::MatrixXcd gate_matrix(GateKind kind, double angle) {
    const int d = gate_arity(kind) == 1 ? 2 : 4;
    Complex entries[16];
    detail::gate_entries(kind, angle, entries);
    Eigen::MatrixXcd m(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = entries[d * r + c];
    return m;
}

StateVector apply_gate(const StateVector& state, const GateOp& op) {
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    detail::apply_op_in_place(amps, state.num_qubits(), op);
    return StateVector::unchecked(state.num_qubits(), std::move(amps));
}

StateVector apply_circuit(const StateVector& state, const Circuit& circuit) {
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (const GateOp& op : circuit.ops) {
        detail::apply_op_in_place(amps, state.num_qubits(), op);
    }
    return StateVector::unchecked(state.num_qubits(), std::move(amps));
}

namespace {

// Embedded 2^m x 2^m matrix for one op: entry (i, j) is the gate entry at the
// target-bit sub-indices when all other bits agree, else zero.
Eigen::MatrixXcd embed_op(const GateOp& op, int num_qubits) {
    Complex entries[16];
    detail::gate_entries(op.kind, op.angle, entries);
    const int arity = gate_arity(op.kind);
    const std::uint64_t dim = 1ull << num_qubits;

    std::uint64_t target_mask = 0;
    for (int t = 0; t < arity; ++t) {
        target_mask |= 1ull << site_bit_position(op.targets[t], num_qubits);
    }

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::uint64_t i = 0; i < dim; ++i) {
        for (std::uint64_t j = 0; j < dim; ++j) {
            if ((i & ~target_mask) != (j & ~target_mask)) continue;
            int sub_i = 0, sub_j = 0;
            for (int t = 0; t < arity; ++t) {
                sub_i = (sub_i << 1) | bit_at_site(i, op.targets[t], num_qubits);
                sub_j = (sub_j << 1) | bit_at_site(j, op.targets[t], num_qubits);
            }
            const int d = arity == 1 ? 2 : 4;
            out(i, j) = entries[d * sub_i + sub_j];
        }
    }
    return out;
}

} // namespace

Eigen::MatrixXcd circuit_unitary(const Circuit& circuit) {
    if (circuit.num_qubits > kCircuitUnitaryMaxQubits) {
        fail(ErrorCode::TooManyQubits, "circuit_unitary: m=" + std::to_string(circuit.num_qubits) +
                                           " exceeds the dense limit of " +
                                           std::to_string(kCircuitUnitaryMaxQubits));
    }
    const std::uint64_t dim = 1ull << circuit.num_qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const GateOp& op : circuit.ops) {
        detail::check_op(op, circuit.num_qubits);
        u = embed_op(op, circuit.num_qubits) * u;
    }
    return u;
}

bool unitaries_equal_up_to_phase(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v, double tol) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        fail(ErrorCode::DimensionMismatch, "unitaries_equal_up_to_phase: dimensions differ");
    }
    const double d = static_cast<double>(u.rows());
    return std::abs((u.adjoint() * v).trace()) / d >= 1.0 - tol;
}

DensityMatrix apply_circuit_density(const DensityMatrix& rho, const Circuit& circuit) {
    if (rho.num_qubits() > kDensityMaxQubits) {
        fail(ErrorCode::TooManyQubits,
             "apply_circuit_density: m=" + std::to_string(rho.num_qubits()) +
                 " exceeds the density limit of " + std::to_string(kDensityMaxQubits));
    }
    std::vector<Complex> elems(rho.elements().begin(), rho.elements().end());
    for (const GateOp& op : circuit.ops) {
        detail::apply_op_to_density_in_place(elems, rho.num_qubits(), op);
    }
    return DensityMatrix::unchecked(rho.num_qubits(), std::move(elems));
}

std::string dump_circuit(const Circuit& circuit) {
    std::string out;
    for (const GateOp& op : circuit.ops) {
        out += gate_name(op.kind);
        if (gate_has_angle(op.kind)) {
            out += '(';
            out += format_double(op.angle);
            out += ')';
        }
        const int arity = gate_arity(op.kind);
        for (int t = 0; t < arity; ++t) {
            out += " q";
            out += std::to_string(op.targets[t]);
        }
        out += '\n';
    }
    return out;
}

} // namespace spinsim
