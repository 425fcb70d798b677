#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinsim/chain.hpp"
#include "spinsim/noise.hpp"
#include "spinsim/trotter.hpp"

namespace spinsim {

enum class RunMode { Ideal, Exact, Density, Trajectories };

struct NoiseConfig {
    double p2 = 0.01;
    double p1 = 0.0;

    bool operator==(const NoiseConfig&) const = default;
};

// One experiment: chain parameters, disorder, Trotter plan, execution mode.
// Loaded from JSON; CLI flags override individual fields.
struct ExperimentConfig {
    int sites = 2;
    double g_xy = 1.0;
    Boundary boundary = Boundary::Open;
    double disorder_bound = 0.0;
    std::optional<std::vector<double>> explicit_fields; // overrides sampling
    std::uint64_t seed = 1;
    int realizations = 100;
    std::string initial_state = "neel"; // "neel" | "domain_wall" | literal bitstring
    double dt = 0.1;
    std::optional<int> n_steps; // per-job default when unset (evolve/sweep 100, compare 12)
    SchemeKind scheme = SchemeKind::Optimized2Cnot;
    RunMode mode = RunMode::Ideal;
    NoiseConfig noise;
    std::optional<long long> shots;
    long long n_traj = 1000;

    bool operator==(const ExperimentConfig&) const = default;
};

std::string to_string(RunMode mode);
std::string to_string(SchemeKind scheme);
std::string to_string(Boundary boundary);

RunMode run_mode_from_string(const std::string& s);
SchemeKind scheme_from_string(const std::string& s);
Boundary boundary_from_string(const std::string& s);

// JSON text <-> config; parse rejects unknown keys and reports the offending
// field. Round-trips exactly.
ExperimentConfig parse_config(const std::string& json_text);
std::string serialize_config(const ExperimentConfig& config);
ExperimentConfig load_config_file(const std::string& path);

// Throws Error(ConfigError) with one message per bad field.
void validate_config(const ExperimentConfig& config);

// CSV producers (deterministic, byte-identical for a fixed config). The
// run_* variants write the CSV to a file.
std::string run_evolve_csv(const ExperimentConfig& config);
std::string run_disorder_sweep_csv(const ExperimentConfig& config,
                                   const std::vector<double>& h_values);
std::string run_compare_schemes_csv(const ExperimentConfig& config);

void run_evolve(const ExperimentConfig& config, const std::string& out_path);
void run_disorder_sweep(const ExperimentConfig& config, const std::vector<double>& h_values,
                        const std::string& out_path);
void run_compare_schemes(const ExperimentConfig& config, const std::string& out_path);

} // namespace spinsim
