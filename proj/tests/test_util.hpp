#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinsim/errors.hpp"
#include "spinsim/rng.hpp"
#include "spinsim/state.hpp"

namespace spinsim::test {

// Runs `f`, which must throw a spinsim::Error, and returns its code.
inline ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    throw std::logic_error("expected a spinsim::Error, none was thrown");
}

inline StateVector random_state(int m, std::uint64_t seed) {
    rng::Prng prng(seed);
    std::vector<Complex> amps(1ull << m);
    double sq = 0.0;
    for (Complex& a : amps) {
        a = Complex(prng.uniform(-1, 1), prng.uniform(-1, 1));
        sq += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(sq);
    for (Complex& a : amps) a *= inv;
    return from_amplitudes(std::move(amps));
}

inline Eigen::VectorXcd to_eigen(const StateVector& state) {
    return Eigen::Map<const Eigen::VectorXcd>(state.amplitudes().data(), state.dim());
}

inline Eigen::MatrixXcd to_eigen(const DensityMatrix& rho) {
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    return Eigen::Map<const RowMajor>(rho.elements().data(), rho.dim(), rho.dim());
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// ||psi - e^{i phi} chi|| minimized over the global phase
inline double phase_aligned_distance(const StateVector& a, const StateVector& b) {
    const Complex overlap = inner_product(a, b);
    const double fidelity = std::abs(overlap);
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * fidelity));
}

// max_i |a_i - e^{i phi} b_i| at the optimal alignment phase; resolves far
// below the sqrt metric when the states are (nearly) identical
inline double phase_aligned_max_diff(const StateVector& a, const StateVector& b) {
    Complex overlap = inner_product(a, b);
    if (std::abs(overlap) == 0.0) overlap = 1.0;
    const Complex phase = std::conj(overlap) / std::abs(overlap);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        worst = std::max(worst, std::abs(a[i] - phase * b[i]));
    }
    return worst;
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return static_cast<int>(i);
        }
        return -1;
    }

    double value(std::size_t row, const std::string& name) const {
        return std::stod(rows[row][column(name)]);
    }
};

inline Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            cells.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (first) {
            csv.header = cells;
            first = false;
        } else {
            csv.rows.push_back(cells);
        }
    }
    return csv;
}

} // namespace spinsim::test
