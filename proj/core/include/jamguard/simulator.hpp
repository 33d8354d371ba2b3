#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jamguard/airlink.hpp"

// Scenario engine: runs the experiment suite (ROC, SE and BLER sweeps,
// MD-optimal jammer, trade-off frontiers, analytic-vs-Monte-Carlo validation)
// and emits data series. Outputs are bitwise reproducible for a fixed
// (master seed, config) regardless of the worker count.

namespace jamguard::sim {

enum class ScenarioKind { Roc, Se, Bler, MdOpt, TradeoffSe, TradeoffBler, Validate };

std::string_view scenario_name(ScenarioKind kind);
std::optional<ScenarioKind> scenario_from_name(std::string_view name);

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::Roc;
    airlink::SlotConfig slot = airlink::SlotConfig::default_5g();
    std::vector<airlink::ChannelKind> channels;
    std::vector<double> pfa_grid;
    std::vector<double> snr_j_db_grid;
    std::vector<int> mp_list;  // blanked-resource counts
    std::vector<int> lp_list;  // jammed-resource counts
    double snr_ue_db = 10.0;
    double rho = 0.48;
    std::uint64_t trials = 100000;
    std::uint64_t master_seed = 1;
    unsigned workers = 0;  // 0 resolves via worker_count()
};

// Fully materialized defaults for one scenario kind (5G numerology profile).
ScenarioConfig default_config(ScenarioKind kind);

struct ScenarioRecord {
    std::string x_label;
    double x;
    std::string series;
    double y;
    std::optional<double> y_stderr;  // present exactly for Monte Carlo records
};

struct RunResult {
    std::vector<ScenarioRecord> records;
    std::vector<std::string> warnings;
    bool ok = true;  // false when a validation check fails
};

RunResult run_roc(const ScenarioConfig& cfg);
RunResult run_se_sweep(const ScenarioConfig& cfg);
RunResult run_bler_sweep(const ScenarioConfig& cfg);
RunResult run_md_opt(const ScenarioConfig& cfg);
RunResult run_tradeoff(const ScenarioConfig& cfg);  // kind picks the SE or BLER axis
RunResult run_validation(const ScenarioConfig& cfg);

RunResult run_scenario(const ScenarioConfig& cfg);

}  // namespace jamguard::sim
