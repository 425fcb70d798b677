#include "spinsim/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "spinsim/format.hpp"
#include "spinsim/observables.hpp"
#include "spinsim/rng.hpp"

namespace spinsim {

namespace {

using nlohmann::json;

constexpr int kEvolveDefaultSteps = 100;
constexpr int kCompareDefaultSteps = 12;
constexpr int kExactColumnMaxSites = 10;
constexpr int kProbabilityColumnMaxSites = 4;

InitialState parse_initial_state(const std::string& s) {
    if (s == "neel") return InitialState::neel();
    if (s == "domain_wall") return InitialState::domain_wall();
    return InitialState::custom(s);
}

bool is_bitstring(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

// Seed tree: every stream is derived from (master seed, realization index)
// so runs are reproducible and realizations can execute in any order.
struct RealizationSeeds {
    std::uint64_t root;

    explicit RealizationSeeds(std::uint64_t master, int realization)
        : root(rng::derive_seed(master, static_cast<std::uint64_t>(realization))) {}

    std::uint64_t disorder() const { return rng::derive_seed(root, 0); }
    std::uint64_t noise() const { return rng::derive_seed(root, 1); }
    std::uint64_t shots(int step) const {
        return rng::derive_seed(rng::derive_seed(root, 2), static_cast<std::uint64_t>(step));
    }
    std::uint64_t noise_naive() const { return rng::derive_seed(root, 3); }
    std::uint64_t noise_optimized() const { return rng::derive_seed(root, 4); }
};

std::vector<double> realization_fields(const ExperimentConfig& cfg, const RealizationSeeds& seeds) {
    if (cfg.explicit_fields) return *cfg.explicit_fields;
    return sample_disorder({cfg.disorder_bound, seeds.disorder()}, cfg.sites);
}

ObservableSeries exact_series(const ChainSpec& chain, const StateVector& psi0, int steps,
                              double dt) {
    ExactPropagator prop(chain);
    ObservableSeries series;
    for (int j = 0; j <= steps; ++j) {
        const StateVector psi = prop.evolve(psi0, j * dt);
        series.times.push_back(j * dt);
        series.ms_values.push_back(staggered_magnetization(psi));
        series.probabilities.push_back(basis_probabilities(psi));
    }
    return series;
}

struct SeriesBundle {
    ObservableSeries trotter;
    ObservableSeries exact;
    std::optional<ObservableSeries> noisy;
    std::vector<double> ms_shots;
};

const ObservableSeries& headline_series(const SeriesBundle& bundle, RunMode mode) {
    switch (mode) {
    case RunMode::Exact: return bundle.exact;
    case RunMode::Density:
    case RunMode::Trajectories: return *bundle.noisy;
    default: return bundle.trotter;
    }
}

SeriesBundle run_one_realization(const ExperimentConfig& cfg, int steps, int realization) {
    const RealizationSeeds seeds(cfg.seed, realization);
    const ChainSpec chain{cfg.sites, cfg.g_xy, realization_fields(cfg, seeds), cfg.boundary};
    const StateVector psi0 = initial_state(parse_initial_state(cfg.initial_state), cfg.sites);
    const TrotterPlan plan{cfg.dt, steps, cfg.scheme};
    const Circuit step = trotter_step_circuit(chain, plan);

    SeriesBundle bundle;
    bundle.trotter = noisy_step_series(step, psi0, steps, cfg.dt, {}, ExecutionMode::ideal());
    bundle.exact = exact_series(chain, psi0, steps, cfg.dt);
    if (cfg.mode == RunMode::Density) {
        bundle.noisy = noisy_step_series(step, psi0, steps, cfg.dt,
                                         {cfg.noise.p2, cfg.noise.p1}, ExecutionMode::density());
    } else if (cfg.mode == RunMode::Trajectories) {
        bundle.noisy =
            noisy_step_series(step, psi0, steps, cfg.dt, {cfg.noise.p2, cfg.noise.p1},
                              ExecutionMode::trajectories(cfg.n_traj, seeds.noise()));
    }
    if (cfg.shots) {
        const ObservableSeries& head = headline_series(bundle, cfg.mode);
        for (int j = 0; j <= steps; ++j) {
            const ShotCounts counts = sample_shots_from_probabilities(
                head.probabilities[j], cfg.sites, *cfg.shots, seeds.shots(j));
            bundle.ms_shots.push_back(ms_from_counts(counts));
        }
    }
    return bundle;
}

// Runs all realizations (in parallel) and averages in fixed index order.
std::vector<SeriesBundle> run_realizations(const ExperimentConfig& cfg, int steps) {
    std::vector<SeriesBundle> results(cfg.realizations);
    std::string first_error;
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < cfg.realizations; ++r) {
        try {
            results[r] = run_one_realization(cfg, steps, r);
        } catch (const std::exception& e) {
#pragma omp critical
            if (first_error.empty()) first_error = e.what();
        }
    }
    if (!first_error.empty()) fail(ErrorCode::ConfigError, first_error);
    return results;
}

void accumulate(std::vector<double>& acc, const std::vector<double>& values) {
    if (acc.empty()) acc.assign(values.size(), 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) acc[i] += values[i];
}

void scale(std::vector<double>& values, double factor) {
    for (double& v : values) v *= factor;
}

struct EvolveAverages {
    std::vector<double> times;
    std::vector<double> ms_trotter;
    std::vector<double> ms_exact;
    std::vector<double> ms_noisy;
    std::vector<double> ms_shots;
    std::vector<std::vector<double>> probabilities; // headline path
    bool has_noisy = false;
    bool has_shots = false;
};

EvolveAverages averaged_evolve(const ExperimentConfig& cfg, int steps) {
    const std::vector<SeriesBundle> results = run_realizations(cfg, steps);

    EvolveAverages avg;
    avg.times = results.front().trotter.times;
    avg.has_noisy = results.front().noisy.has_value();
    avg.has_shots = !results.front().ms_shots.empty();
    avg.probabilities.assign(steps + 1, std::vector<double>(1ull << cfg.sites, 0.0));
    for (const SeriesBundle& bundle : results) {
        accumulate(avg.ms_trotter, bundle.trotter.ms_values);
        accumulate(avg.ms_exact, bundle.exact.ms_values);
        if (avg.has_noisy) accumulate(avg.ms_noisy, bundle.noisy->ms_values);
        if (avg.has_shots) accumulate(avg.ms_shots, bundle.ms_shots);
        const ObservableSeries& head = headline_series(bundle, cfg.mode);
        for (int j = 0; j <= steps; ++j) accumulate(avg.probabilities[j], head.probabilities[j]);
    }
    const double inv = 1.0 / cfg.realizations;
    scale(avg.ms_trotter, inv);
    scale(avg.ms_exact, inv);
    scale(avg.ms_noisy, inv);
    scale(avg.ms_shots, inv);
    for (auto& row : avg.probabilities) scale(row, inv);
    return avg;
}

void require_exact_feasible(const ExperimentConfig& cfg, const char* job) {
    if (cfg.sites > kExactColumnMaxSites) {
        fail(ErrorCode::ConfigError, std::string("sites: ") + job +
                                         " needs the exact oracle and requires sites <= " +
                                         std::to_string(kExactColumnMaxSites));
    }
}

} // namespace

std::string to_string(RunMode mode) {
    switch (mode) {
    case RunMode::Ideal: return "ideal";
    case RunMode::Exact: return "exact";
    case RunMode::Density: return "density";
    case RunMode::Trajectories: return "trajectories";
    }
    return "?";
}

std::string to_string(SchemeKind scheme) {
    return scheme == SchemeKind::Naive4Cnot ? "naive4" : "optimized2";
}

std::string to_string(Boundary boundary) {
    return boundary == Boundary::Open ? "open" : "closed";
}

RunMode run_mode_from_string(const std::string& s) {
    if (s == "ideal") return RunMode::Ideal;
    if (s == "exact") return RunMode::Exact;
    if (s == "density") return RunMode::Density;
    if (s == "trajectories") return RunMode::Trajectories;
    fail(ErrorCode::ConfigError, "mode: expected ideal|exact|density|trajectories, got '" + s + "'");
}

SchemeKind scheme_from_string(const std::string& s) {
    if (s == "naive4") return SchemeKind::Naive4Cnot;
    if (s == "optimized2") return SchemeKind::Optimized2Cnot;
    fail(ErrorCode::ConfigError, "scheme: expected naive4|optimized2, got '" + s + "'");
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "open") return Boundary::Open;
    if (s == "closed") return Boundary::Closed;
    fail(ErrorCode::ConfigError, "boundary: expected open|closed, got '" + s + "'");
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(ErrorCode::ConfigError, std::string("config: ") + e.what());
    }
    if (!j.is_object()) fail(ErrorCode::ConfigError, "config: top level must be a JSON object");

    static const std::set<std::string> known = {
        "sites",      "g_xy",        "boundary", "disorder_bound", "explicit_fields",
        "seed",       "realizations", "initial_state", "dt",       "n_steps",
        "scheme",     "mode",        "noise",    "shots",          "n_traj"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) {
            fail(ErrorCode::ConfigError, "config: unknown field '" + key + "'");
        }
    }

    ExperimentConfig cfg;
    try {
        if (j.contains("sites")) cfg.sites = j["sites"].get<int>();
        if (j.contains("g_xy")) cfg.g_xy = j["g_xy"].get<double>();
        if (j.contains("boundary")) cfg.boundary = boundary_from_string(j["boundary"].get<std::string>());
        if (j.contains("disorder_bound")) cfg.disorder_bound = j["disorder_bound"].get<double>();
        if (j.contains("explicit_fields")) {
            cfg.explicit_fields = j["explicit_fields"].get<std::vector<double>>();
        }
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("realizations")) cfg.realizations = j["realizations"].get<int>();
        if (j.contains("initial_state")) cfg.initial_state = j["initial_state"].get<std::string>();
        if (j.contains("dt")) cfg.dt = j["dt"].get<double>();
        if (j.contains("n_steps")) cfg.n_steps = j["n_steps"].get<int>();
        if (j.contains("scheme")) cfg.scheme = scheme_from_string(j["scheme"].get<std::string>());
        if (j.contains("mode")) cfg.mode = run_mode_from_string(j["mode"].get<std::string>());
        if (j.contains("noise")) {
            const json& n = j["noise"];
            for (const auto& [key, value] : n.items()) {
                if (key != "p2" && key != "p1") {
                    fail(ErrorCode::ConfigError, "config: unknown noise field '" + key + "'");
                }
            }
            if (n.contains("p2")) cfg.noise.p2 = n["p2"].get<double>();
            if (n.contains("p1")) cfg.noise.p1 = n["p1"].get<double>();
        }
        if (j.contains("shots")) cfg.shots = j["shots"].get<long long>();
        if (j.contains("n_traj")) cfg.n_traj = j["n_traj"].get<long long>();
    } catch (const json::exception& e) {
        fail(ErrorCode::ConfigError, std::string("config: ") + e.what());
    }
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    json j;
    j["sites"] = cfg.sites;
    j["g_xy"] = cfg.g_xy;
    j["boundary"] = to_string(cfg.boundary);
    j["disorder_bound"] = cfg.disorder_bound;
    if (cfg.explicit_fields) j["explicit_fields"] = *cfg.explicit_fields;
    j["seed"] = cfg.seed;
    j["realizations"] = cfg.realizations;
    j["initial_state"] = cfg.initial_state;
    j["dt"] = cfg.dt;
    if (cfg.n_steps) j["n_steps"] = *cfg.n_steps;
    j["scheme"] = to_string(cfg.scheme);
    j["mode"] = to_string(cfg.mode);
    j["noise"] = {{"p2", cfg.noise.p2}, {"p1", cfg.noise.p1}};
    if (cfg.shots) j["shots"] = *cfg.shots;
    j["n_traj"] = cfg.n_traj;
    return j.dump(2) + "\n";
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ConfigError, "config: cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate_config(const ExperimentConfig& cfg) {
    std::vector<std::string> issues;
    if (cfg.sites < 2 || cfg.sites > 12) {
        issues.push_back("sites: must lie in [2, 12]");
    }
    if (cfg.boundary == Boundary::Closed && cfg.sites < 3) {
        issues.push_back("boundary: closed chains need sites >= 3");
    }
    if (!std::isfinite(cfg.g_xy)) issues.push_back("g_xy: must be finite");
    if (!(cfg.disorder_bound >= 0.0) || !std::isfinite(cfg.disorder_bound)) {
        issues.push_back("disorder_bound: must be finite and >= 0");
    }
    if (cfg.explicit_fields) {
        if (static_cast<int>(cfg.explicit_fields->size()) != cfg.sites) {
            issues.push_back("explicit_fields: length must equal sites");
        }
        for (double h : *cfg.explicit_fields) {
            if (!std::isfinite(h)) {
                issues.push_back("explicit_fields: entries must be finite");
                break;
            }
        }
    }
    if (cfg.realizations < 1) issues.push_back("realizations: must be >= 1");
    if (cfg.initial_state != "neel" && cfg.initial_state != "domain_wall") {
        if (!is_bitstring(cfg.initial_state)) {
            issues.push_back("initial_state: expected neel, domain_wall, or a 0/1 bitstring");
        } else if (static_cast<int>(cfg.initial_state.size()) != cfg.sites) {
            issues.push_back("initial_state: bitstring length must equal sites");
        }
    }
    if (cfg.initial_state == "domain_wall" && cfg.sites % 2 != 0) {
        issues.push_back("initial_state: domain_wall requires an even number of sites");
    }
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) issues.push_back("dt: must be positive and finite");
    if (cfg.n_steps && *cfg.n_steps < 1) issues.push_back("n_steps: must be >= 1");
    if (!(cfg.noise.p2 >= 0.0 && cfg.noise.p2 <= 1.0)) issues.push_back("noise.p2: must lie in [0, 1]");
    if (!(cfg.noise.p1 >= 0.0 && cfg.noise.p1 <= 1.0)) issues.push_back("noise.p1: must lie in [0, 1]");
    if (cfg.shots && *cfg.shots < 1) issues.push_back("shots: must be >= 1");
    if (cfg.n_traj < 1) issues.push_back("n_traj: must be >= 1");
    if (cfg.mode == RunMode::Density && cfg.sites > 6) {
        issues.push_back("mode: density mode is limited to sites <= 6");
    }
    if (cfg.mode == RunMode::Trajectories && cfg.sites > 10) {
        issues.push_back("mode: trajectories mode is limited to sites <= 10");
    }
    if (!issues.empty()) {
        std::string joined;
        for (std::size_t i = 0; i < issues.size(); ++i) {
            if (i) joined += "; ";
            joined += issues[i];
        }
        fail(ErrorCode::ConfigError, joined);
    }
}

std::string run_evolve_csv(const ExperimentConfig& cfg) {
    validate_config(cfg);
    require_exact_feasible(cfg, "evolve");
    const int steps = cfg.n_steps.value_or(kEvolveDefaultSteps);
    const EvolveAverages avg = averaged_evolve(cfg, steps);

    std::string out = "t,ms_trotter,ms_exact";
    if (avg.has_noisy) out += ",ms_noisy";
    if (avg.has_shots) out += ",ms_shots";
    const bool with_probs = cfg.sites <= kProbabilityColumnMaxSites;
    if (with_probs) {
        for (std::uint64_t i = 0; i < (1ull << cfg.sites); ++i) {
            out += ",p_" + basis_label(i, cfg.sites);
        }
    }
    out += '\n';
    for (int j = 0; j <= steps; ++j) {
        out += format_double(avg.times[j]);
        out += ',' + format_double(avg.ms_trotter[j]);
        out += ',' + format_double(avg.ms_exact[j]);
        if (avg.has_noisy) out += ',' + format_double(avg.ms_noisy[j]);
        if (avg.has_shots) out += ',' + format_double(avg.ms_shots[j]);
        if (with_probs) {
            for (double p : avg.probabilities[j]) out += ',' + format_double(p);
        }
        out += '\n';
    }
    return out;
}

std::string run_disorder_sweep_csv(const ExperimentConfig& cfg,
                                   const std::vector<double>& h_values) {
    validate_config(cfg);
    require_exact_feasible(cfg, "sweep");
    if (h_values.empty()) fail(ErrorCode::ConfigError, "h_values: must be nonempty");
    for (double h : h_values) {
        if (!(h >= 0.0) || !std::isfinite(h)) {
            fail(ErrorCode::ConfigError, "h_values: entries must be finite and >= 0");
        }
    }
    const int steps = cfg.n_steps.value_or(kEvolveDefaultSteps);

    std::vector<std::vector<double>> ms_per_h;
    std::vector<double> times;
    for (double h : h_values) {
        ExperimentConfig sub = cfg;
        sub.disorder_bound = h;
        const EvolveAverages avg = averaged_evolve(sub, steps);
        times = avg.times;
        switch (cfg.mode) {
        case RunMode::Exact: ms_per_h.push_back(avg.ms_exact); break;
        case RunMode::Density:
        case RunMode::Trajectories: ms_per_h.push_back(avg.ms_noisy); break;
        default: ms_per_h.push_back(avg.ms_trotter); break;
        }
    }

    std::string out = "t";
    for (double h : h_values) out += ",ms_h_" + format_double(h);
    out += '\n';
    for (int j = 0; j <= steps; ++j) {
        out += format_double(times[j]);
        for (const auto& ms : ms_per_h) out += ',' + format_double(ms[j]);
        out += '\n';
    }
    // summary row: mean M_s over the recorded window per h value
    out += "time_avg";
    for (const auto& ms : ms_per_h) {
        double sum = 0.0;
        for (double v : ms) sum += v;
        out += ',' + format_double(sum / static_cast<double>(ms.size()));
    }
    out += '\n';
    return out;
}

std::string run_compare_schemes_csv(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const int steps = cfg.n_steps.value_or(kCompareDefaultSteps);
    const NoiseModel nm{cfg.noise.p2, cfg.noise.p1};
    const bool use_density = cfg.mode == RunMode::Trajectories ? false : cfg.sites <= 6;
    if (!use_density && cfg.sites > 10) {
        fail(ErrorCode::ConfigError, "sites: compare-schemes requires sites <= 10");
    }

    std::vector<double> ms_ideal, ms_naive, ms_opt;
    std::string first_error;
    std::vector<std::array<std::vector<double>, 3>> per_real(cfg.realizations);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < cfg.realizations; ++r) {
        try {
            const RealizationSeeds seeds(cfg.seed, r);
            const ChainSpec chain{cfg.sites, cfg.g_xy, realization_fields(cfg, seeds),
                                  cfg.boundary};
            const StateVector psi0 =
                initial_state(parse_initial_state(cfg.initial_state), cfg.sites);
            const Circuit step_naive =
                trotter_step_circuit(chain, {cfg.dt, steps, SchemeKind::Naive4Cnot});
            const Circuit step_opt =
                trotter_step_circuit(chain, {cfg.dt, steps, SchemeKind::Optimized2Cnot});

            const ExecutionMode mode_naive =
                use_density ? ExecutionMode::density()
                            : ExecutionMode::trajectories(cfg.n_traj, seeds.noise_naive());
            const ExecutionMode mode_opt =
                use_density ? ExecutionMode::density()
                            : ExecutionMode::trajectories(cfg.n_traj, seeds.noise_optimized());

            per_real[r][0] =
                noisy_step_series(step_opt, psi0, steps, cfg.dt, {}, ExecutionMode::ideal())
                    .ms_values;
            per_real[r][1] =
                noisy_step_series(step_naive, psi0, steps, cfg.dt, nm, mode_naive).ms_values;
            per_real[r][2] =
                noisy_step_series(step_opt, psi0, steps, cfg.dt, nm, mode_opt).ms_values;
        } catch (const std::exception& e) {
#pragma omp critical
            if (first_error.empty()) first_error = e.what();
        }
    }
    if (!first_error.empty()) fail(ErrorCode::ConfigError, first_error);
    for (const auto& bundle : per_real) {
        accumulate(ms_ideal, bundle[0]);
        accumulate(ms_naive, bundle[1]);
        accumulate(ms_opt, bundle[2]);
    }
    const double inv = 1.0 / cfg.realizations;
    scale(ms_ideal, inv);
    scale(ms_naive, inv);
    scale(ms_opt, inv);

    // cumulative CNOT counts at step j
    const ChainSpec ref_chain{cfg.sites, cfg.g_xy,
                              std::vector<double>(cfg.sites, 0.0), cfg.boundary};
    const int per_step_naive =
        cnot_count(trotter_step_circuit(ref_chain, {cfg.dt, steps, SchemeKind::Naive4Cnot}));
    const int per_step_opt =
        cnot_count(trotter_step_circuit(ref_chain, {cfg.dt, steps, SchemeKind::Optimized2Cnot}));

    std::string out = "t,ms_ideal,ms_naive4_noisy,ms_opt2_noisy,cnots_naive4,cnots_opt2\n";
    for (int j = 0; j <= steps; ++j) {
        out += format_double(j * cfg.dt);
        out += ',' + format_double(ms_ideal[j]);
        out += ',' + format_double(ms_naive[j]);
        out += ',' + format_double(ms_opt[j]);
        out += ',' + std::to_string(static_cast<long long>(j) * per_step_naive);
        out += ',' + std::to_string(static_cast<long long>(j) * per_step_opt);
        out += '\n';
    }
    return out;
}

namespace {

void write_file(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::ConfigError, "out: cannot write '" + path + "'");
    out << text;
}

} // namespace

void run_evolve(const ExperimentConfig& cfg, const std::string& out_path) {
    write_file(run_evolve_csv(cfg), out_path);
}

void run_disorder_sweep(const ExperimentConfig& cfg, const std::vector<double>& h_values,
                        const std::string& out_path) {
    write_file(run_disorder_sweep_csv(cfg, h_values), out_path);
}

void run_compare_schemes(const ExperimentConfig& cfg, const std::string& out_path) {
    write_file(run_compare_schemes_csv(cfg), out_path);
}

} // namespace spinsim
