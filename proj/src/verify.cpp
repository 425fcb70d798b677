#include "spinsim/verify.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>

#include <Eigen/Dense>

#include "spinsim/gates.hpp"
#include "spinsim/rng.hpp"
#include "spinsim/trotter.hpp"

namespace spinsim {

namespace {

constexpr double kPi = std::numbers::pi;

// up-to-global-phase deviation: 0 when U = e^{i a} V
double phase_deviation(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
    const double d = static_cast<double>(u.rows());
    return 1.0 - std::abs((u.adjoint() * v).trace()) / d;
}

VerifyCheck grid_block_check(const std::string& name, SchemeKind scheme, double tol,
                             double perturb_angle) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double theta = -kPi + 2.0 * kPi * i / 99.0;
        Circuit c = scheme == SchemeKind::Optimized2Cnot
                        ? xxyy_block_circuit(theta, {1, 2}, 2)
                        : xxyy_block_circuit_naive(theta, {1, 2}, 2);
        if (perturb_angle != 0.0) {
            for (GateOp& op : c.ops) {
                if (op.kind == GateKind::Rz) {
                    op.angle += perturb_angle;
                    break;
                }
            }
        }
        worst = std::max(worst, phase_deviation(circuit_unitary(c), xxyy_block_matrix(theta)));
    }
    return {name, worst, tol, worst <= tol};
}

VerifyCheck count_check(const std::string& name, SchemeKind scheme, int expected) {
    const Circuit c = scheme == SchemeKind::Optimized2Cnot
                          ? xxyy_block_circuit(0.37, {1, 2}, 2)
                          : xxyy_block_circuit_naive(0.37, {1, 2}, 2);
    const double dev = std::abs(cnot_count(c) - expected);
    return {name, dev, 0.0, dev == 0.0};
}

} // namespace

bool VerifyReport::all_passed() const {
    for (const VerifyCheck& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

VerifyReport run_verify(double perturb_angle) {
    VerifyReport report;
    rng::Prng prng(0x5ca1ab1e);

    {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            worst = std::max(worst, verify_magic_identity(prng.uniform(-kPi, kPi),
                                                          prng.uniform(-kPi, kPi)));
        }
        report.checks.push_back({"magic-basis identity (100 random angle pairs)", worst, 1e-12,
                                 worst <= 1e-12});
    }
    {
        const Eigen::MatrixXcd magic = gate_matrix(GateKind::Magic);
        const Eigen::MatrixXcd dagger = gate_matrix(GateKind::MagicDagger);
        const double unitary =
            (magic.adjoint() * magic - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
        const double adj = (dagger - magic.adjoint()).cwiseAbs().maxCoeff();
        const double worst = std::max(unitary, adj);
        report.checks.push_back({"magic matrix unitarity and dagger", worst, 1e-12, worst <= 1e-12});
    }
    report.checks.push_back(grid_block_check("2-CNOT block vs exp(i theta (XX+YY)), 100-point grid",
                                             SchemeKind::Optimized2Cnot, 1e-10, perturb_angle));
    report.checks.push_back(
        count_check("2-CNOT block CNOT count", SchemeKind::Optimized2Cnot, 2));
    report.checks.push_back(grid_block_check("4-CNOT block vs exp(i theta (XX+YY)), 100-point grid",
                                             SchemeKind::Naive4Cnot, 1e-10, perturb_angle));
    report.checks.push_back(count_check("4-CNOT block CNOT count", SchemeKind::Naive4Cnot, 4));
    {
        Circuit reversed{2, {g::rcnot(1, 2)}};
        Circuit sandwich{2, {g::h(1), g::h(2), g::cnot(1, 2), g::h(1), g::h(2)}};
        const double worst =
            (circuit_unitary(reversed) - circuit_unitary(sandwich)).cwiseAbs().maxCoeff();
        report.checks.push_back({"CNOT reversal via Hadamard sandwich", worst, 1e-12,
                                 worst <= 1e-12});
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 32; ++i) {
            const double lambda = prng.uniform(-kPi, kPi);
            const double phi = prng.uniform(-kPi, kPi);
            const Eigen::MatrixXcd s = gate_matrix(GateKind::Phase, lambda);
            const Eigen::MatrixXcd rz = gate_matrix(GateKind::Rz, phi);
            worst = std::max(worst, (s * rz - rz * s).cwiseAbs().maxCoeff());
        }
        report.checks.push_back({"[S, Rz] = 0 (32 random angle pairs)", worst, 1e-12,
                                 worst <= 1e-12});
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 32; ++i) {
            const double phi = prng.uniform(-kPi, kPi);
            const Eigen::MatrixXcd hgate = gate_matrix(GateKind::Hadamard);
            const Eigen::MatrixXcd lhs = hgate * gate_matrix(GateKind::Rz, phi) * hgate;
            worst = std::max(worst, (lhs - gate_matrix(GateKind::Rx, phi)).cwiseAbs().maxCoeff());
        }
        report.checks.push_back({"H Rz H = Rx (32 random angles)", worst, 1e-12, worst <= 1e-12});
    }
    return report;
}

void print_verify_report(const VerifyReport& report, std::ostream& out) {
    for (const VerifyCheck& c : report.checks) {
        out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": max deviation "
            << std::scientific << std::setprecision(3) << c.max_deviation << " (tolerance "
            << c.tolerance << ")\n";
    }
    out << (report.all_passed() ? "verify: all identities hold\n"
                                : "verify: at least one identity FAILED\n");
}

} // namespace spinsim
