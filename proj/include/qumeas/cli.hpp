#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qumeas/state.hpp"

// Command-line orchestration: one binary, one subcommand per experiment.
// Configuration is flat key=value text (file via --config) with command-line
// flags taking precedence; every run writes self-describing CSV files.
namespace qumeas::cli {

enum class Command { dist, diagram, boundary, fcs, sample, validate };

struct KeyValue {
    std::string key;
    std::string value;
    int line = 0;  // 1-based config-file line; 0 for flags
};

// Split key=value lines, skipping blanks and '#' comments. Throws
// config_error with the offending line number on malformed input.
std::vector<KeyValue> parse_key_value_text(const std::string& text);

struct RunConfig {
    Command command = Command::validate;

    ModelParams params;  // theta, omega, r_tau, n_meas, initial
    bool theta_set = false;
    bool omega_set = false;

    long n_traj = 10000;
    std::uint64_t seed = 12345;
    int threads = 0;  // 0 = all hardware threads
    std::string output = "qumeas";
    int samples = 256;  // eigenvalue-locus resolution

    // Grid for `diagram` (defaults reproduce the full phase diagram). For
    // `boundary`, axis=theta marches theta_min..theta_max by theta_step and
    // bisects omega per row; axis=omega marches omega_min..omega_max by
    // omega_step and bisects the polarization onset in [theta_min, theta_max]
    // (the small-angle oscillation lives along omega).
    double theta_min = 0.02;
    double theta_max = 1.5707963267948966;
    int theta_count = 157;
    double omega_min = 0.02;
    double omega_max = 3.141592653589793;
    int omega_count = 157;
    double theta_step = 0.02;
    double omega_step = 0.002;
    double resolution = 0.01;
    std::string kind = "both";  // boundary kinds: pl-upl, upl-apl, or both
    std::string axis = "theta";  // boundary scan direction: theta or omega
};

// Apply file entries, then flag entries, onto the defaults for `command`;
// validates every constraint. Throws config_error (unknown key, bad value,
// missing required key) or std::invalid_argument (parameter constraint,
// with the message naming the constraint).
RunConfig build_config(Command command, const std::vector<KeyValue>& file_entries,
                       const std::vector<KeyValue>& flag_entries);

// Execute a validated config. Returns the process exit code (0, or 1 when
// `validate` finds a failing check). Output files go under $QUMEAS_OUT_DIR
// (default ".") unless the output prefix is an absolute path.
int run(const RunConfig& config);

// Full entry point: argv parsing, config assembly, error-to-exit-code
// mapping (0 success, 1 validation failure, 2 usage error, 3 numeric
// failure).
int run_main(int argc, const char* const* argv);

}  // namespace qumeas::cli
