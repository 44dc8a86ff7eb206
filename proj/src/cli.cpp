#include "qumeas/cli.hpp"

#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qumeas/csv.hpp"
#include "qumeas/dp.hpp"
#include "qumeas/errors.hpp"
#include "qumeas/fcs.hpp"
#include "qumeas/oracle.hpp"
#include "qumeas/phase.hpp"
#include "qumeas/validation.hpp"

namespace qumeas::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// Refining the phase boundaries assumes the row order PL, UPL, APL along
// omega; pi/2 sits strictly inside the unpolarized band for every theta the
// scans visit, so it bounds both brackets.
constexpr double kPlUplLo = 0.02;
constexpr double kPlUplHi = kPi / 2.0;
constexpr double kUplAplLo = kPi / 2.0;
constexpr double kUplAplHi = kPi - 0.02;

std::string location(const KeyValue& kv) {
    return kv.line > 0 ? "line " + std::to_string(kv.line) + ": " : "";
}

std::string trim(const std::string& s) {
    const std::size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const KeyValue& kv) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(kv.value.c_str(), &end);
    if (errno != 0 || end == kv.value.c_str() || *end != '\0')
        throw config_error(location(kv) + "invalid number '" + kv.value + "' for key '" +
                           kv.key + "'");
    return v;
}

long long parse_integer(const KeyValue& kv) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(kv.value.c_str(), &end, 10);
    if (errno != 0 || end == kv.value.c_str() || *end != '\0')
        throw config_error(location(kv) + "invalid integer '" + kv.value + "' for key '" +
                           kv.key + "'");
    return v;
}

std::uint64_t parse_u64(const KeyValue& kv) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(kv.value.c_str(), &end, 10);
    if (errno != 0 || end == kv.value.c_str() || *end != '\0')
        throw config_error(location(kv) + "invalid integer '" + kv.value + "' for key '" +
                           kv.key + "'");
    return v;
}

struct KeyDef {
    const char* name;
    const char* help;
};

const KeyDef kKeyTable[] = {
    {"theta", "measurement-strength angle θ in [0, π/2]; strength λ = sin θ"},
    {"omega", "per-step precession angle ω = ω_L·τ in [0, π]"},
    {"r_tau", "per-step relaxation rτ ≥ 0 (default 0)"},
    {"n", "number of measurements N; even, ≥ 2 (default 100)"},
    {"init_rhoz", "initial ρ_z; ρ_0 is fixed to 1 and ρ_y to 0 (default 0)"},
    {"init_rhox", "initial ρ_x (default 1)"},
    {"n_traj", "Monte Carlo trajectory count (default 10000)"},
    {"seed", "sampling seed; each trajectory draws from a splitmix64 stream keyed by (seed, index)"},
    {"threads", "worker threads, 0 = all cores; outputs are identical for every value"},
    {"output", "output path prefix (default 'qumeas'); relative prefixes resolve under $QUMEAS_OUT_DIR"},
    {"samples", "eigenvalue-locus sample count over χ in [0, 2π) (default 256)"},
    {"theta_min", "θ grid start (default 0.02)"},
    {"theta_max", "θ grid end (default π/2)"},
    {"theta_count", "θ grid size (default 157)"},
    {"omega_min", "ω grid start (default 0.02)"},
    {"omega_max", "ω grid end (default π)"},
    {"omega_count", "ω grid size (default 157)"},
    {"theta_step", "θ spacing for boundary scans (default 0.02)"},
    {"omega_step", "ω spacing when axis=omega (default 0.002)"},
    {"axis",
     "scan axis: theta marches θ and bisects the boundary in ω; omega marches ω and bisects the "
     "polarization onset in θ (default theta)"},
    {"resolution", "bisection resolution for boundary scans (default 0.01)"},
    {"kind", "boundary to scan: pl-upl, upl-apl, or both (default both)"},
};

const char* key_help(const std::string& name) {
    for (const auto& def : kKeyTable)
        if (name == def.name) return def.help;
    return "";
}

std::vector<std::string> allowed_keys(Command command) {
    switch (command) {
        case Command::dist:
            return {"theta", "omega", "r_tau", "n", "init_rhoz", "init_rhox", "output"};
        case Command::sample:
            return {"theta", "omega", "r_tau", "n", "init_rhoz", "init_rhox", "n_traj", "seed",
                    "threads", "output"};
        case Command::fcs:
            return {"theta", "omega", "n", "samples", "output"};
        case Command::diagram:
            return {"n", "r_tau", "init_rhoz", "init_rhox", "theta_min", "theta_max",
                    "theta_count", "omega_min", "omega_max", "omega_count", "threads", "output"};
        case Command::boundary:
            return {"n", "r_tau", "init_rhoz", "init_rhox", "kind", "axis", "theta_min",
                    "theta_max", "theta_step", "omega_min", "omega_max", "omega_step",
                    "resolution", "threads", "output"};
        case Command::validate:
            return {};
    }
    return {};
}

void apply_entry(RunConfig& config, const KeyValue& kv) {
    const std::string& key = kv.key;
    if (key == "theta") {
        config.params.theta = parse_double(kv);
        config.theta_set = true;
    } else if (key == "omega") {
        config.params.omega = parse_double(kv);
        config.omega_set = true;
    } else if (key == "r_tau") {
        config.params.r_tau = parse_double(kv);
    } else if (key == "n") {
        config.params.n_meas = static_cast<int>(parse_integer(kv));
    } else if (key == "init_rhoz") {
        config.params.initial.rhoz = parse_double(kv);
    } else if (key == "init_rhox") {
        config.params.initial.rhox = parse_double(kv);
    } else if (key == "n_traj") {
        config.n_traj = static_cast<long>(parse_integer(kv));
    } else if (key == "seed") {
        config.seed = parse_u64(kv);
    } else if (key == "threads") {
        config.threads = static_cast<int>(parse_integer(kv));
    } else if (key == "output") {
        config.output = kv.value;
    } else if (key == "samples") {
        config.samples = static_cast<int>(parse_integer(kv));
    } else if (key == "theta_min") {
        config.theta_min = parse_double(kv);
    } else if (key == "theta_max") {
        config.theta_max = parse_double(kv);
    } else if (key == "theta_count") {
        config.theta_count = static_cast<int>(parse_integer(kv));
    } else if (key == "omega_min") {
        config.omega_min = parse_double(kv);
    } else if (key == "omega_max") {
        config.omega_max = parse_double(kv);
    } else if (key == "omega_count") {
        config.omega_count = static_cast<int>(parse_integer(kv));
    } else if (key == "theta_step") {
        config.theta_step = parse_double(kv);
    } else if (key == "omega_step") {
        config.omega_step = parse_double(kv);
    } else if (key == "resolution") {
        config.resolution = parse_double(kv);
    } else if (key == "kind") {
        config.kind = kv.value;
    } else if (key == "axis") {
        config.axis = kv.value;
    } else {
        throw config_error(location(kv) + "unknown key '" + key + "'");
    }
}

void require_angles(const RunConfig& config) {
    if (!config.theta_set) throw config_error("key 'theta' is required for this command");
    if (!config.omega_set) throw config_error("key 'omega' is required for this command");
}

void validate_grid_corners(const RunConfig& config, double omega_lo, double omega_hi) {
    // Reuse the parameter validator at both grid corners so range violations
    // carry the standard constraint messages.
    ModelParams corner = config.params;
    corner.theta = config.theta_min;
    corner.omega = omega_lo;
    corner.validate();
    corner.theta = config.theta_max;
    corner.omega = omega_hi;
    corner.validate();
    if (!(config.theta_min < config.theta_max))
        throw config_error("theta_min must be below theta_max");
}

int resolved_threads(const RunConfig& config) {
    if (config.threads > 0) return config.threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string out_path(const RunConfig& config, const std::string& suffix) {
    std::string prefix = config.output;
    if (!prefix.empty() && prefix.front() != '/') {
        const char* dir = std::getenv("QUMEAS_OUT_DIR");
        if (dir != nullptr && *dir != '\0') prefix = std::string(dir) + "/" + prefix;
    }
    return prefix + suffix;
}

std::ofstream open_output(const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
    }
    std::ofstream os(path);
    if (!os) throw config_error("cannot open output file '" + path + "'");
    return os;
}

// Resolved physics configuration for the metadata block. Deliberately leaves
// out `threads` and the output location: neither affects the numbers, and
// outputs must be byte-identical across thread counts.
void add_params_meta(csv::Metadata& meta, const RunConfig& config) {
    meta.add("theta", config.params.theta);
    meta.add("omega", config.params.omega);
    meta.add("r_tau", config.params.r_tau);
    meta.add("n", static_cast<long long>(config.params.n_meas));
    meta.add("init_rho0", config.params.initial.rho0);
    meta.add("init_rhoz", config.params.initial.rhoz);
    meta.add("init_rhox", config.params.initial.rhox);
}

void run_dist(const RunConfig& config) {
    const auto fm = dp::fm_distribution(config.params);
    const auto afm = dp::afm_distribution(config.params);
    for (const auto* pair : {&fm, &afm}) {
        const bool is_fm = pair->kind == OrderKind::FM;
        csv::Metadata meta;
        meta.add("command", std::string("dist"));
        add_params_meta(meta, config);
        meta.add("kind", std::string(is_fm ? "FM" : "AFM"));
        const std::string path = out_path(config, is_fm ? "_fm.csv" : "_afm.csv");
        auto os = open_output(path);
        csv::write_distribution(os, *pair, meta);
        std::cout << "wrote " << path << "\n";
    }
}

void run_sample(const RunConfig& config) {
    if (config.n_traj < 1) throw config_error("n_traj must be >= 1");
    const auto hist = oracle::monte_carlo_sample(config.params, config.n_traj, config.seed,
                                                 resolved_threads(config));
    for (OrderKind kind : {OrderKind::FM, OrderKind::AFM}) {
        const bool is_fm = kind == OrderKind::FM;
        csv::Metadata meta;
        meta.add("command", std::string("sample"));
        add_params_meta(meta, config);
        meta.add("kind", std::string(is_fm ? "FM" : "AFM"));
        meta.add("n_traj", static_cast<long long>(config.n_traj));
        meta.add("seed", std::to_string(config.seed));
        meta.add("rng", std::string("splitmix64 stream per trajectory, keyed by (seed, index)"));
        const std::string path = out_path(config, is_fm ? "_sample_fm.csv" : "_sample_afm.csv");
        auto os = open_output(path);
        csv::write_mc_histogram(os, hist, kind, meta);
        std::cout << "wrote " << path << "\n";
    }
}

void run_diagram(const RunConfig& config) {
    const auto theta_grid = phase::linspace(config.theta_min, config.theta_max,
                                            config.theta_count);
    const auto omega_grid = phase::linspace(config.omega_min, config.omega_max,
                                            config.omega_count);
    const auto diagram = phase::sweep(theta_grid, omega_grid, config.params.n_meas,
                                      config.params.initial, config.params.r_tau,
                                      resolved_threads(config));
    csv::Metadata meta;
    meta.add("command", std::string("diagram"));
    meta.add("n", static_cast<long long>(config.params.n_meas));
    meta.add("r_tau", config.params.r_tau);
    meta.add("init_rho0", config.params.initial.rho0);
    meta.add("init_rhoz", config.params.initial.rhoz);
    meta.add("init_rhox", config.params.initial.rhox);
    meta.add("theta_min", config.theta_min);
    meta.add("theta_max", config.theta_max);
    meta.add("theta_count", static_cast<long long>(config.theta_count));
    meta.add("omega_min", config.omega_min);
    meta.add("omega_max", config.omega_max);
    meta.add("omega_count", static_cast<long long>(config.omega_count));
    const std::string path = out_path(config, "_diagram.csv");
    auto os = open_output(path);
    csv::write_diagram(os, diagram, meta);
    std::cout << "wrote " << path << "\n";
}

void run_boundary(const RunConfig& config) {
    std::vector<phase::BoundaryKind> kinds;
    if (config.kind == "pl-upl" || config.kind == "both")
        kinds.push_back(phase::BoundaryKind::PL_UPL);
    if (config.kind == "upl-apl" || config.kind == "both")
        kinds.push_back(phase::BoundaryKind::UPL_APL);

    const bool along_theta = config.axis == "theta";
    std::vector<double> grid;
    const double grid_lo = along_theta ? config.theta_min : config.omega_min;
    const double grid_hi = along_theta ? config.theta_max : config.omega_max;
    const double grid_step = along_theta ? config.theta_step : config.omega_step;
    const int count = static_cast<int>((grid_hi - grid_lo) / grid_step + 1e-9) + 1;
    for (int i = 0; i < count; ++i)
        grid.push_back(grid_lo + static_cast<double>(i) * grid_step);

    std::vector<csv::BoundaryRow> rows;
    std::vector<csv::PeriodRow> periods;
    for (phase::BoundaryKind kind : kinds) {
        const bool pl_upl = kind == phase::BoundaryKind::PL_UPL;
        const auto boundary =
            along_theta
                ? phase::boundary_scan(grid, kind, config.params.n_meas, config.params.initial,
                                       config.params.r_tau, pl_upl ? kPlUplLo : kUplAplLo,
                                       pl_upl ? kPlUplHi : kUplAplHi, config.resolution,
                                       resolved_threads(config))
                : phase::onset_scan(grid, kind, config.params.n_meas, config.params.initial,
                                    config.params.r_tau, config.theta_min, config.theta_max,
                                    config.resolution, resolved_threads(config));
        for (const auto& pt : boundary) rows.push_back({pt, kind});
        csv::PeriodRow row{kind, std::numeric_limits<double>::quiet_NaN(), boundary.size(), "ok"};
        try {
            row.period = phase::oscillation_period(boundary);
        } catch (const insufficient_resolution_error& e) {
            row.status = e.what();
        }
        periods.push_back(std::move(row));
    }

    csv::Metadata meta;
    meta.add("command", std::string("boundary"));
    meta.add("n", static_cast<long long>(config.params.n_meas));
    meta.add("r_tau", config.params.r_tau);
    meta.add("init_rho0", config.params.initial.rho0);
    meta.add("init_rhoz", config.params.initial.rhoz);
    meta.add("init_rhox", config.params.initial.rhox);
    meta.add("kind", config.kind);
    meta.add("axis", config.axis);
    meta.add("theta_min", config.theta_min);
    meta.add("theta_max", config.theta_max);
    meta.add("resolution", config.resolution);
    if (along_theta) {
        meta.add("theta_step", config.theta_step);
        meta.add("pl_upl_bracket", "[" + csv::format_double(kPlUplLo) + ", " +
                                       csv::format_double(kPlUplHi) + "]");
        meta.add("upl_apl_bracket", "[" + csv::format_double(kUplAplLo) + ", " +
                                        csv::format_double(kUplAplHi) + "]");
    } else {
        meta.add("omega_min", config.omega_min);
        meta.add("omega_max", config.omega_max);
        meta.add("omega_step", config.omega_step);
        meta.add("theta_bracket", "[" + csv::format_double(config.theta_min) + ", " +
                                      csv::format_double(config.theta_max) + "]");
    }

    const std::string boundary_path = out_path(config, "_boundary.csv");
    auto bos = open_output(boundary_path);
    csv::write_boundary(bos, rows, meta);
    std::cout << "wrote " << boundary_path << "\n";

    const std::string period_path = out_path(config, "_periods.csv");
    auto pos = open_output(period_path);
    csv::write_periods(pos, periods, meta);
    std::cout << "wrote " << period_path << "\n";
}

void run_fcs(const RunConfig& config) {
    csv::Metadata meta;
    meta.add("command", std::string("fcs"));
    meta.add("theta", config.params.theta);
    meta.add("omega", config.params.omega);
    meta.add("n", static_cast<long long>(config.params.n_meas));
    meta.add("samples", static_cast<long long>(config.samples));

    std::vector<double> chis(static_cast<std::size_t>(config.samples));
    std::vector<fcs::SpectrumPoint> locus(chis.size());
    for (std::size_t j = 0; j < chis.size(); ++j) {
        chis[j] = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(config.samples);
        locus[j] = fcs::k_eigenvalues(std::polar(1.0, chis[j]), config.params.theta,
                                      config.params.omega);
    }
    const std::string locus_path = out_path(config, "_locus.csv");
    auto los = open_output(locus_path);
    csv::write_eigenvalue_locus(los, locus, chis, meta);
    std::cout << "wrote " << locus_path << "\n";

    const auto dist = fcs::closed_form_distribution(config.params.theta, config.params.omega,
                                                    config.params.n_meas);
    const std::string dist_path = out_path(config, "_closed_form.csv");
    auto dos = open_output(dist_path);
    csv::write_plain_distribution(dos, dist, config.params.n_meas, meta);
    std::cout << "wrote " << dist_path << "\n";
}

int run_validate() {
    const auto results = validation::run_all();
    std::size_t passed = 0;
    for (const auto& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << "\n";
        if (!r.detail.empty()) std::cout << "       " << r.detail << "\n";
        if (r.passed) ++passed;
    }
    std::cout << passed << " of " << results.size() << " checks passed\n";
    return validation::all_passed(results) ? 0 : 1;
}

}  // namespace

std::vector<KeyValue> parse_key_value_text(const std::string& text) {
    std::vector<KeyValue> entries;
    std::istringstream stream(text);
    std::string raw;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        const std::string stripped = trim(raw);
        if (stripped.empty() || stripped.front() == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(line) + ": expected key=value, got '" +
                               stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw config_error("line " + std::to_string(line) + ": empty key");
        entries.push_back({key, value, line});
    }
    return entries;
}

RunConfig build_config(Command command, const std::vector<KeyValue>& file_entries,
                       const std::vector<KeyValue>& flag_entries) {
    RunConfig config;
    config.command = command;
    config.params.initial = {1.0, 0.0, 1.0};
    config.params.n_meas = 100;

    const std::vector<std::string> allowed = allowed_keys(command);
    auto apply_all = [&](const std::vector<KeyValue>& entries) {
        for (const auto& kv : entries) {
            bool known = false;
            for (const auto& name : allowed) known = known || name == kv.key;
            if (!known) throw config_error(location(kv) + "unknown key '" + kv.key + "'");
            apply_entry(config, kv);
        }
    };
    apply_all(file_entries);
    apply_all(flag_entries);

    if (config.threads < 0) throw config_error("threads must be >= 0");
    switch (command) {
        case Command::dist:
            require_angles(config);
            config.params.validate();
            break;
        case Command::sample:
            require_angles(config);
            config.params.validate();
            if (config.n_traj < 1) throw config_error("n_traj must be >= 1");
            break;
        case Command::fcs:
            require_angles(config);
            config.params.validate();
            if (config.samples < 2) throw config_error("samples must be >= 2");
            break;
        case Command::diagram:
            validate_grid_corners(config, config.omega_min, config.omega_max);
            if (!(config.omega_min < config.omega_max))
                throw config_error("omega_min must be below omega_max");
            if (config.theta_count < 2 || config.omega_count < 2)
                throw config_error("grid counts must be >= 2");
            break;
        case Command::boundary:
            validate_grid_corners(config, 0.1, 0.1);
            if (!(config.theta_step > 0.0)) throw config_error("theta_step must be positive");
            if (!(config.omega_step > 0.0)) throw config_error("omega_step must be positive");
            if (!(config.resolution > 0.0)) throw config_error("resolution must be positive");
            if (config.kind != "pl-upl" && config.kind != "upl-apl" && config.kind != "both")
                throw config_error("kind must be pl-upl, upl-apl, or both");
            if (config.axis != "theta" && config.axis != "omega")
                throw config_error("axis must be theta or omega");
            if (config.axis == "omega" && !(config.omega_min < config.omega_max))
                throw config_error("omega_min must be below omega_max");
            break;
        case Command::validate:
            break;
    }
    return config;
}

int run(const RunConfig& config) {
    switch (config.command) {
        case Command::dist: run_dist(config); return 0;
        case Command::sample: run_sample(config); return 0;
        case Command::diagram: run_diagram(config); return 0;
        case Command::boundary: run_boundary(config); return 0;
        case Command::fcs: run_fcs(config); return 0;
        case Command::validate: return run_validate();
    }
    return 2;
}

int run_main(int argc, const char* const* argv) {
    CLI::App app{"qumeas: exact record statistics of a qubit precessing under repeated "
                 "measurement"};
    app.require_subcommand(1);

    struct SubSpec {
        const char* name;
        Command command;
        const char* help;
    };
    const SubSpec specs[] = {
        {"dist", Command::dist,
         "exact FM and AFM order-parameter distributions at one (theta, omega) point"},
        {"diagram", Command::diagram, "phase diagram over a (theta, omega) grid"},
        {"boundary", Command::boundary,
         "bisection-refined phase boundaries and their oscillation period"},
        {"fcs", Command::fcs,
         "tilted-generator eigenvalue locus and the closed-form count distribution"},
        {"sample", Command::sample, "Monte Carlo trajectory histograms"},
        {"validate", Command::validate, "cross-implementation identity suite (exit 1 on failure)"},
    };

    std::vector<KeyValue> flag_entries;
    std::string config_path;
    for (const auto& spec : specs) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        sub->add_option("--config", config_path, "key=value config file; flags override it");
        for (const auto& key : allowed_keys(spec.command)) {
            sub->add_option_function<std::string>(
                "--" + key,
                [&flag_entries, key](const std::string& value) {
                    flag_entries.push_back({key, value, 0});
                },
                key_help(key));
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (const auto& spec : specs) {
            if (!app.got_subcommand(spec.name)) continue;
            std::vector<KeyValue> file_entries;
            if (!config_path.empty()) {
                std::ifstream is(config_path);
                if (!is) throw config_error("cannot read config file '" + config_path + "'");
                std::ostringstream text;
                text << is.rdbuf();
                file_entries = parse_key_value_text(text.str());
            }
            return run(build_config(spec.command, file_entries, flag_entries));
        }
        std::cerr << "error: no command given\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace qumeas::cli
