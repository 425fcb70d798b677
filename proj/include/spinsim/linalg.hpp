#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace spinsim {

// exp(i * scale * h) for Hermitian h, via eigendecomposition. Exact and
// stable for the Hamiltonians and Pauli-sum exponents used here.
inline Eigen::MatrixXcd expm_i_hermitian(const Eigen::MatrixXcd& h, double scale) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases[k] = std::exp(std::complex<double>(0.0, scale * es.eigenvalues()[k]));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace spinsim
