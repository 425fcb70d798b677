// Experiment runner for the disordered XX chain simulator. Subcommands write
// deterministic CSV data files; `verify` prints the circuit-identity report.
// Exit codes: 0 success, 1 validation error, 2 verification failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "spinsim/experiment.hpp"
#include "spinsim/verify.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    // optional overrides; CLI11 counts tell us what was actually passed
    int sites = 0;
    std::uint64_t seed = 0;
    double dt = 0.0;
    int steps = 0;
    int realizations = 0;
    double g_xy = 0.0;
    double disorder_bound = 0.0;
    std::string boundary;
    std::string scheme;
    std::string mode;
    std::string initial_state;
    long long shots = 0;
    long long n_traj = 0;
    double p2 = 0.0;
    double p1 = 0.0;
};

void add_common_options(CLI::App* cmd, CommonFlags& flags, const std::string& default_out) {
    cmd->add_option("--config", flags.config_path, "JSON config file");
    cmd->add_option("--out", flags.out_path, "output CSV path")->default_val(default_out);
    cmd->add_option("--sites", flags.sites, "number of chain sites");
    cmd->add_option("--seed", flags.seed, "master RNG seed");
    cmd->add_option("--dt", flags.dt, "Trotter step size");
    cmd->add_option("--steps", flags.steps, "number of Trotter steps");
    cmd->add_option("--realizations", flags.realizations, "disorder realizations to average");
    cmd->add_option("--g", flags.g_xy, "coupling g_xy");
    cmd->add_option("--disorder-bound", flags.disorder_bound, "disorder bound h");
    cmd->add_option("--boundary", flags.boundary, "open|closed");
    cmd->add_option("--scheme", flags.scheme, "naive4|optimized2");
    cmd->add_option("--mode", flags.mode, "ideal|exact|density|trajectories");
    cmd->add_option("--initial-state", flags.initial_state, "neel|domain_wall|<bitstring>");
    cmd->add_option("--shots", flags.shots, "finite-shot sampling per recorded step");
    cmd->add_option("--n-traj", flags.n_traj, "trajectories per noisy run");
    cmd->add_option("--p2", flags.p2, "two-qubit depolarizing probability");
    cmd->add_option("--p1", flags.p1, "single-qubit depolarizing probability");
}

spinsim::ExperimentConfig build_config(const CLI::App* cmd, const CommonFlags& flags) {
    spinsim::ExperimentConfig cfg;
    if (cmd->count("--config")) cfg = spinsim::load_config_file(flags.config_path);
    if (cmd->count("--sites")) cfg.sites = flags.sites;
    if (cmd->count("--seed")) cfg.seed = flags.seed;
    if (cmd->count("--dt")) cfg.dt = flags.dt;
    if (cmd->count("--steps")) cfg.n_steps = flags.steps;
    if (cmd->count("--realizations")) cfg.realizations = flags.realizations;
    if (cmd->count("--g")) cfg.g_xy = flags.g_xy;
    if (cmd->count("--disorder-bound")) cfg.disorder_bound = flags.disorder_bound;
    if (cmd->count("--boundary")) cfg.boundary = spinsim::boundary_from_string(flags.boundary);
    if (cmd->count("--scheme")) cfg.scheme = spinsim::scheme_from_string(flags.scheme);
    if (cmd->count("--mode")) cfg.mode = spinsim::run_mode_from_string(flags.mode);
    if (cmd->count("--initial-state")) cfg.initial_state = flags.initial_state;
    if (cmd->count("--shots")) cfg.shots = flags.shots;
    if (cmd->count("--n-traj")) cfg.n_traj = flags.n_traj;
    if (cmd->count("--p2")) cfg.noise.p2 = flags.p2;
    if (cmd->count("--p1")) cfg.noise.p1 = flags.p1;
    return cfg;
}

std::vector<double> parse_h_values(const std::string& csv) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        try {
            values.push_back(std::stod(csv.substr(pos, comma - pos)));
        } catch (const std::exception&) {
            spinsim::fail(spinsim::ErrorCode::ConfigError,
                          "h-values: expected a comma-separated list of numbers");
        }
        pos = comma + 1;
    }
    return values;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinsim: disordered XX chain dynamics via Trotterized circuits"};
    app.require_subcommand(1);

    CommonFlags evolve_flags, sweep_flags, compare_flags;
    std::string h_values_csv = "0,0.5,1";
    double perturb_angle = 0.0;

    CLI::App* evolve = app.add_subcommand("evolve", "time evolution: M_s and probabilities vs t");
    add_common_options(evolve, evolve_flags, "evolve.csv");

    CLI::App* sweep = app.add_subcommand("sweep", "disorder sweep: M_s vs t per disorder bound");
    add_common_options(sweep, sweep_flags, "sweep.csv");
    sweep->add_option("--h-values", h_values_csv, "comma-separated disorder bounds");

    CLI::App* compare =
        app.add_subcommand("compare-schemes", "4-CNOT vs 2-CNOT scheme under gate noise");
    add_common_options(compare, compare_flags, "compare_schemes.csv");

    CLI::App* verify = app.add_subcommand("verify", "run the circuit-identity suite");
    verify->add_option("--perturb-angle", perturb_angle,
                       "negative control: inject an angle error before checking");

    CLI11_PARSE(app, argc, argv);

    try {
        if (evolve->parsed()) {
            spinsim::run_evolve(build_config(evolve, evolve_flags), evolve_flags.out_path);
            std::cout << "wrote " << evolve_flags.out_path << "\n";
        } else if (sweep->parsed()) {
            spinsim::run_disorder_sweep(build_config(sweep, sweep_flags),
                                        parse_h_values(h_values_csv), sweep_flags.out_path);
            std::cout << "wrote " << sweep_flags.out_path << "\n";
        } else if (compare->parsed()) {
            spinsim::run_compare_schemes(build_config(compare, compare_flags),
                                         compare_flags.out_path);
            std::cout << "wrote " << compare_flags.out_path << "\n";
        } else if (verify->parsed()) {
            const spinsim::VerifyReport report = spinsim::run_verify(perturb_angle);
            spinsim::print_verify_report(report, std::cout);
            return report.all_passed() ? 0 : 2;
        }
    } catch (const spinsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
