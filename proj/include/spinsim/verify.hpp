#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spinsim {

struct VerifyCheck {
    std::string name;
    double max_deviation;
    double tolerance;
    bool passed;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;

    bool all_passed() const;
};

// Runs the full identity suite: magic-basis identity grid, both block
// synthesizers against the matrix-exponential oracle, CNOT reversal, and the
// commutation identities behind the circuit reduction. `perturb_angle` is a
// negative-control knob that injects an angle error into the synthesized
// 2-CNOT block so failure detection itself can be exercised.
VerifyReport run_verify(double perturb_angle = 0.0);

// One line per identity: name, max deviation, tolerance, PASS/FAIL.
void print_verify_report(const VerifyReport& report, std::ostream& out);

} // namespace spinsim
