#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jamguard/simulator.hpp"

// Command-line front-end plumbing: config file parsing with flag overrides,
// CSV serialization, and the run manifest written next to every output.

namespace jamguard::cli {

// Raised for unknown keys, unparsable values, and inconsistent geometry;
// mapped to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FlagOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::vector<double> snr_j_db;
    std::vector<double> pfa;
    std::optional<int> mp;
    std::vector<int> lp;
    std::optional<std::string> channel;  // awgn | rayleigh | both
};

// Resolves a scenario config: kind defaults, then the config file (flat
// key = value lines, '#' comments), then flag overrides; validates the result.
sim::ScenarioConfig parse_config(sim::ScenarioKind kind, const std::string& config_path,
                                 const FlagOverrides& overrides);

// CSV with the stable header x_label,x,series,y,y_stderr. Doubles are
// rendered shortest-round-trip, locale independent; y_stderr is empty for
// analytic records.
std::string records_csv(const std::vector<sim::ScenarioRecord>& records);

// Flat key = value manifest describing a finished run.
std::string manifest_text(const sim::ScenarioConfig& cfg, const std::string& csv_path,
                          const std::string& timestamp);

std::string iso8601_utc_now();

// Exit-code contract: 0 success, 1 validation failure, 2 config error,
// 3 I/O error.
enum ExitCode : int { kOk = 0, kValidationFailed = 1, kConfigError = 2, kIoError = 3 };

// Runs one scenario and writes <out_dir>/<scenario>.csv plus its manifest.
// Warnings go to stderr.
int run_command(const sim::ScenarioConfig& cfg, const std::string& out_dir);

}  // namespace jamguard::cli
