#include "jamguard/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <iterator>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "jamguard/analytic.hpp"
#include "jamguard/detector.hpp"
#include "jamguard/jammer.hpp"
#include "jamguard/kpi.hpp"
#include "jamguard/parallel.hpp"
#include "jamguard/stats.hpp"

namespace jamguard::sim {

namespace {

constexpr std::uint64_t kTagBlankKey = 0xb1a4;
constexpr std::uint64_t kTagTrials = 0x7214;
constexpr std::uint64_t kMaxAutoTrials = 10000000;

std::string format(const char* fmt, ...) {
    char buf[160];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    return std::string(buf);
}

const char* channel_tag(airlink::ChannelKind kind) {
    return kind == airlink::ChannelKind::Awgn ? "awgn" : "rayleigh";
}

airlink::ChannelModel make_model(airlink::ChannelKind kind) {
    return kind == airlink::ChannelKind::Awgn ? airlink::ChannelModel::awgn()
                                              : airlink::ChannelModel::rayleigh();
}

double binomial_stderr(double p, std::uint64_t n) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

// Stream id scheme: every point of every scenario owns a blanking key and a
// trial-seed root derived from (master_seed, scenario id, point index).
struct PointIds {
    std::uint64_t blank_key;
    std::uint64_t trial_seed;
};

PointIds point_ids(const ScenarioConfig& cfg, std::uint64_t point_index) {
    const auto kind_id = static_cast<std::uint64_t>(cfg.kind) + 1;
    return PointIds{derive_seed({cfg.master_seed, kind_id, point_index, kTagBlankKey}),
                    derive_seed({cfg.master_seed, kind_id, point_index, kTagTrials})};
}

// Per-trial miss counts against a batch of thresholds, one detector run per
// slot reused across the whole FA grid.
struct MissCounts {
    std::vector<std::uint64_t> below;
    void merge(const MissCounts& o) {
        if (below.empty()) below = o.below;
        else if (!o.below.empty()) {
            for (std::size_t i = 0; i < below.size(); ++i) below[i] += o.below[i];
        }
    }
};

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

void check_counts(const ScenarioConfig& cfg) {
    const int pool = cfg.slot.pattern_pool();
    for (int mp : cfg.mp_list) require(mp >= 0 && mp <= pool, "blanked count out of range");
    for (int lp : cfg.lp_list) require(lp >= 0 && lp <= pool, "jammed count out of range");
    for (double p : cfg.pfa_grid) require(p > 0.0 && p < 1.0, "pfa must be in (0,1)");
    require(cfg.trials >= 1, "trials must be >= 1");
}

}  // namespace

std::string_view scenario_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::Roc: return "roc";
        case ScenarioKind::Se: return "se";
        case ScenarioKind::Bler: return "bler";
        case ScenarioKind::MdOpt: return "md-opt";
        case ScenarioKind::TradeoffSe: return "tradeoff-se";
        case ScenarioKind::TradeoffBler: return "tradeoff-bler";
        case ScenarioKind::Validate: return "validate";
    }
    return "unknown";
}

std::optional<ScenarioKind> scenario_from_name(std::string_view name) {
    for (ScenarioKind k : {ScenarioKind::Roc, ScenarioKind::Se, ScenarioKind::Bler,
                           ScenarioKind::MdOpt, ScenarioKind::TradeoffSe,
                           ScenarioKind::TradeoffBler, ScenarioKind::Validate}) {
        if (scenario_name(k) == name) return k;
    }
    return std::nullopt;
}

ScenarioConfig default_config(ScenarioKind kind) {
    ScenarioConfig cfg;
    cfg.kind = kind;
    cfg.channels = {airlink::ChannelKind::Awgn, airlink::ChannelKind::Rayleigh};
    switch (kind) {
        case ScenarioKind::Roc:
            cfg.pfa_grid = {1e-4, 3.16e-4, 1e-3, 3.16e-3, 1e-2, 3.16e-2, 1e-1};
            cfg.snr_j_db_grid = {0.0};
            cfg.mp_list = {1, 5};
            cfg.lp_list = {5, 21};
            break;
        case ScenarioKind::Se:
        case ScenarioKind::Bler:
            cfg.pfa_grid = {1e-3};
            cfg.snr_j_db_grid.resize(21);
            for (int i = 0; i < 21; ++i) cfg.snr_j_db_grid[i] = -20.0 + 2.0 * i;
            cfg.mp_list = {5};
            cfg.lp_list = {5, 21};
            break;
        case ScenarioKind::MdOpt:
            cfg.channels = {airlink::ChannelKind::Awgn};
            cfg.pfa_grid = {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1};
            cfg.snr_j_db_grid = {-10.0, 0.0};
            cfg.mp_list = {5};
            cfg.lp_list = {};
            break;
        case ScenarioKind::TradeoffSe:
        case ScenarioKind::TradeoffBler:
            cfg.channels = {airlink::ChannelKind::Awgn};
            cfg.pfa_grid = {1e-3};
            cfg.snr_j_db_grid = {0.0, 10.0, 20.0};
            cfg.mp_list = {5};
            cfg.lp_list.resize(cfg.slot.prb_count());
            std::iota(cfg.lp_list.begin(), cfg.lp_list.end(), 1);
            break;
        case ScenarioKind::Validate:
            cfg.pfa_grid = {};
            cfg.snr_j_db_grid = {};
            cfg.mp_list = {};
            cfg.lp_list = {};
            break;
    }
    return cfg;
}

RunResult run_roc(const ScenarioConfig& cfg) {
    check_counts(cfg);
    RunResult out;
    const double snr_j_db = cfg.snr_j_db_grid.empty() ? 0.0 : cfg.snr_j_db_grid.front();
    std::vector<double> pfas = cfg.pfa_grid;
    std::sort(pfas.begin(), pfas.end());
    require(!pfas.empty(), "roc: pfa grid must be nonempty");

    // Rare-event budget: every point needs ~100 expected misses of the FA
    // target to be meaningful.
    const double needed = 100.0 / pfas.front();
    std::uint64_t trials = std::max<std::uint64_t>(cfg.trials, static_cast<std::uint64_t>(needed));
    if (trials > kMaxAutoTrials) {
        out.warnings.push_back(format(
            "roc: pfa=%g asks for %.3g trials; capped at %.3g (stderr dominates there)",
            pfas.front(), needed, double(kMaxAutoTrials)));
        trials = std::max<std::uint64_t>(cfg.trials, kMaxAutoTrials);
    }

    std::uint64_t point = 0;
    for (auto channel : cfg.channels) {
        for (int mp : cfg.mp_list) {
            const int mn = cfg.slot.blanked_res_per_slot(mp);
            std::vector<double> thresholds(pfas.size());
            for (std::size_t i = 0; i < pfas.size(); ++i) {
                thresholds[i] = detector::calibrate(pfas[i], mn, cfg.slot.noise_power).threshold;
            }
            for (int lp : cfg.lp_list) {
                const auto ids = point_ids(cfg, point++);
                const detector::DetectionScenario scenario{
                    cfg.slot, mp, lp, make_model(channel),
                    airlink::PowerProfile::from_snr_db(cfg.slot, cfg.snr_ue_db, snr_j_db),
                    ids.blank_key};
                const auto counts = run_trials<MissCounts>(
                    trials,
                    [&](std::uint64_t t, MissCounts& acc) {
                        if (acc.below.empty()) acc.below.assign(thresholds.size(), 0);
                        RandomStream rng = RandomStream::from_ids({ids.trial_seed, t});
                        const double stat = detector::slot_statistic(scenario, true, t, rng);
                        for (std::size_t i = 0; i < thresholds.size(); ++i) {
                            if (!(stat > thresholds[i])) ++acc.below[i];
                        }
                    },
                    cfg.workers ? cfg.workers : worker_count());

                const std::string mc_series =
                    format("mp=%d lp=%d %s mc", mp, lp, channel_tag(channel));
                for (std::size_t i = 0; i < pfas.size(); ++i) {
                    const double md =
                        static_cast<double>(counts.below[i]) / static_cast<double>(trials);
                    out.records.push_back(ScenarioRecord{
                        "pfa", pfas[i], mc_series, md, binomial_stderr(md, trials)});
                    if (counts.below[i] < 100) {
                        out.warnings.push_back(
                            format("roc: %s at pfa=%g has %llu miss events; stderr dominates",
                                   mc_series.c_str(), pfas[i],
                                   static_cast<unsigned long long>(counts.below[i])));
                    }
                }
                if (channel == airlink::ChannelKind::Awgn) {
                    const double jam_total =
                        airlink::PowerProfile::from_snr_db(cfg.slot, cfg.snr_ue_db, snr_j_db)
                            .jam_total;
                    const std::string an_series = format("mp=%d lp=%d awgn analytic", mp, lp);
                    for (double pfa : pfas) {
                        const double pmd = analytic::pmd_gaussian_jammer(cfg.slot, mp, lp, pfa,
                                                                         jam_total);
                        out.records.push_back(
                            ScenarioRecord{"pfa", pfa, an_series, pmd, std::nullopt});
                    }
                }
            }
        }
    }
    return out;
}

RunResult run_se_sweep(const ScenarioConfig& cfg) {
    check_counts(cfg);
    require(!cfg.snr_j_db_grid.empty(), "se: snr_j grid must be nonempty");
    require(!cfg.mp_list.empty(), "se: blanked count missing");
    RunResult out;
    const int mp = cfg.mp_list.front();
    std::uint64_t point = 0;

    for (auto channel : cfg.channels) {
        // No-blanking / no-jamming upper bound, constant over the sweep axis.
        const auto ids = point_ids(cfg, point++);
        const auto bound = kpi::spectral_efficiency(
            cfg.slot, 0, 0, make_model(channel),
            airlink::PowerProfile{std::pow(10.0, cfg.snr_ue_db / 10.0) * cfg.slot.subcarriers *
                                      cfg.slot.noise_power,
                                  0.0},
            cfg.trials, ids.trial_seed, ids.blank_key, cfg.workers);
        const std::string bound_series = format("upper-bound %s", channel_tag(channel));
        for (double snr_j : cfg.snr_j_db_grid) {
            out.records.push_back(
                ScenarioRecord{"snr_j_db", snr_j, bound_series, bound.value, bound.stderr_value});
        }
        for (int lp : cfg.lp_list) {
            const std::string series = format("mp=%d lp=%d %s mc", mp, lp, channel_tag(channel));
            for (double snr_j : cfg.snr_j_db_grid) {
                const auto pids = point_ids(cfg, point++);
                const auto est = kpi::spectral_efficiency(
                    cfg.slot, mp, lp, make_model(channel),
                    airlink::PowerProfile::from_snr_db(cfg.slot, cfg.snr_ue_db, snr_j), cfg.trials,
                    pids.trial_seed, pids.blank_key, cfg.workers);
                out.records.push_back(
                    ScenarioRecord{"snr_j_db", snr_j, series, est.value, est.stderr_value});
            }
        }
    }
    return out;
}

RunResult run_bler_sweep(const ScenarioConfig& cfg) {
    check_counts(cfg);
    require(cfg.slot.granularity == airlink::Granularity::PRB,
            "bler: requires PRB granularity (one packet per PRB)");
    require(!cfg.snr_j_db_grid.empty(), "bler: snr_j grid must be nonempty");
    require(!cfg.mp_list.empty(), "bler: blanked count missing");
    RunResult out;
    const int mp = cfg.mp_list.front();
    const auto packet = kpi::PacketSpec(cfg.rho, cfg.slot.prb_size * cfg.slot.symbols,
                                        cfg.slot.prb_count());
    std::uint64_t point = 0;

    for (auto channel : cfg.channels) {
        for (int lp : cfg.lp_list) {
            const std::string series = format("mp=%d lp=%d %s mc", mp, lp, channel_tag(channel));
            for (double snr_j : cfg.snr_j_db_grid) {
                const auto pids = point_ids(cfg, point++);
                const auto est = kpi::slot_bler_mc(
                    cfg.slot, mp, lp, make_model(channel),
                    airlink::PowerProfile::from_snr_db(cfg.slot, cfg.snr_ue_db, snr_j), packet,
                    cfg.trials, pids.trial_seed, pids.blank_key, cfg.workers);
                out.records.push_back(
                    ScenarioRecord{"snr_j_db", snr_j, series, est.value, est.stderr_value});
            }
        }
    }
    return out;
}

RunResult run_md_opt(const ScenarioConfig& cfg) {
    check_counts(cfg);
    require(!cfg.mp_list.empty(), "md-opt: blanked count missing");
    require(!cfg.pfa_grid.empty(), "md-opt: pfa grid must be nonempty");
    RunResult out;
    const int mp = cfg.mp_list.front();
    const auto packet = kpi::PacketSpec(cfg.rho, cfg.slot.prb_size * cfg.slot.symbols,
                                        cfg.slot.prb_count());

    for (double snr_j : cfg.snr_j_db_grid) {
        const auto power = airlink::PowerProfile::from_snr_db(cfg.slot, cfg.snr_ue_db, snr_j);
        const std::string pmd_series = format("snrj=%gdb best-pmd", snr_j);
        const std::string lp_series = format("snrj=%gdb best-lp", snr_j);
        for (double pfa : cfg.pfa_grid) {
            const jammer::JammerKnowledge knowledge{cfg.slot, mp,          pfa,
                                                    1.0,      1.0,         power.ue_total,
                                                    power.jam_total, packet};
            const auto outcome = jammer::optimize_md(knowledge);
            out.records.push_back(
                ScenarioRecord{"pfa", pfa, pmd_series, outcome.objective_value, std::nullopt});
            out.records.push_back(ScenarioRecord{
                "pfa", pfa, lp_series, static_cast<double>(outcome.chosen_count), std::nullopt});
        }
    }
    return out;
}

RunResult run_tradeoff(const ScenarioConfig& cfg) {
    check_counts(cfg);
    const bool bler_axis = cfg.kind == ScenarioKind::TradeoffBler;
    require(!cfg.pfa_grid.empty(), "tradeoff: pfa missing");
    require(!cfg.mp_list.empty(), "tradeoff: blanked count missing");
    require(!cfg.lp_list.empty(), "tradeoff: lp list missing");
    RunResult out;
    const int mp = cfg.mp_list.front();
    const double pfa = cfg.pfa_grid.front();
    const auto model = airlink::ChannelModel::awgn();
    const auto packet = kpi::PacketSpec(cfg.rho, cfg.slot.prb_size * cfg.slot.symbols,
                                        cfg.slot.prb_count());
    const char* kpi_tag = bler_axis ? "bler" : "se";
    std::uint64_t point = 0;

    for (double snr_j : cfg.snr_j_db_grid) {
        const auto power = airlink::PowerProfile::from_snr_db(cfg.slot, cfg.snr_ue_db, snr_j);
        for (int lp : cfg.lp_list) {
            const auto pids = point_ids(cfg, point++);
            const double pmd =
                analytic::pmd_gaussian_jammer(cfg.slot, mp, lp, pfa, power.jam_total);
            const auto est =
                bler_axis ? kpi::slot_bler_mc(cfg.slot, mp, lp, model, power, packet, cfg.trials,
                                              pids.trial_seed, pids.blank_key, cfg.workers)
                          : kpi::spectral_efficiency(cfg.slot, mp, lp, model, power, cfg.trials,
                                                     pids.trial_seed, pids.blank_key, cfg.workers);
            out.records.push_back(ScenarioRecord{
                "lp", static_cast<double>(lp), format("snrj=%gdb pmd analytic", snr_j), pmd,
                std::nullopt});
            out.records.push_back(ScenarioRecord{"lp", static_cast<double>(lp),
                                                 format("snrj=%gdb %s mc", snr_j, kpi_tag),
                                                 est.value, est.stderr_value});
        }
    }
    return out;
}

namespace {

struct ValidationCase {
    int subcarriers;
    int prb_size;
    int symbols;
    int blanked;
    int jammed;
    double snr_j_db;  // NaN means zero jamming power
    double pfa;
};

// Desk-scale regression grid binding the total-probability formula to the
// end-to-end simulation. PRB granularity throughout (the per-slot pattern
// model the closed form describes exactly); case 12 lands on the
// moment-matched evaluation path (MN > 60).
const ValidationCase kValidationGrid[12] = {
    {12, 1, 2, 3, 4, 0.0, 1e-2},
    {12, 1, 2, 3, 4, std::numeric_limits<double>::quiet_NaN(), 1e-2},
    {12, 1, 2, 3, 12, 0.0, 1e-2},
    {12, 2, 2, 2, 3, 0.0, 1e-1},
    {24, 2, 4, 3, 5, 0.0, 1e-2},
    {24, 1, 4, 6, 10, -10.0, 1e-2},
    {12, 3, 3, 1, 2, 10.0, 1e-3},
    {24, 4, 2, 2, 4, 5.0, 1e-2},
    {12, 1, 1, 4, 6, 0.0, 1e-2},
    {24, 2, 3, 5, 11, -5.0, 1e-2},
    {12, 2, 2, 3, 3, 15.0, 1e-2},
    {24, 2, 4, 8, 5, 0.0, 1e-2},
};

}  // namespace

RunResult run_validation(const ScenarioConfig& cfg) {
    RunResult out;
    const std::uint64_t trials = std::max<std::uint64_t>(cfg.trials, 1);
    for (std::size_t i = 0; i < std::size(kValidationGrid); ++i) {
        const auto& vc = kValidationGrid[i];
        const airlink::SlotConfig slot(vc.subcarriers, vc.prb_size, vc.symbols,
                                       cfg.slot.noise_power, airlink::Granularity::PRB);
        const bool no_jam = std::isnan(vc.snr_j_db);
        const auto power =
            no_jam ? airlink::PowerProfile{std::pow(10.0, cfg.snr_ue_db / 10.0) *
                                               slot.subcarriers * slot.noise_power,
                                           0.0}
                   : airlink::PowerProfile::from_snr_db(slot, cfg.snr_ue_db, vc.snr_j_db);

        const double pmd =
            analytic::pmd_gaussian_jammer(slot, vc.blanked, vc.jammed, vc.pfa, power.jam_total);

        const auto ids = point_ids(cfg, i);
        const detector::DetectionScenario scenario{slot, vc.blanked, vc.jammed,
                                                   airlink::ChannelModel::awgn(), power,
                                                   ids.blank_key};
        const auto rates =
            detector::empirical_rates(scenario, vc.pfa, trials, ids.trial_seed,
                                      cfg.workers ? cfg.workers : worker_count());

        const double se = binomial_stderr(pmd, trials);
        const double z = se > 0.0 ? (rates.md_rate - pmd) / se : 0.0;
        const bool pass = std::fabs(z) <= 3.0;
        if (!pass) {
            out.ok = false;
            out.warnings.push_back(format("validate: configuration %zu off by %.2f sigma", i, z));
        }
        const double x = static_cast<double>(i);
        out.records.push_back(ScenarioRecord{"config", x, "analytic", pmd, std::nullopt});
        out.records.push_back(
            ScenarioRecord{"config", x, "empirical", rates.md_rate, rates.md_stderr});
        out.records.push_back(ScenarioRecord{"config", x, "zscore", z, std::nullopt});
        out.records.push_back(ScenarioRecord{"config", x, "pass", pass ? 1.0 : 0.0, std::nullopt});
    }
    return out;
}

RunResult run_scenario(const ScenarioConfig& cfg) {
    switch (cfg.kind) {
        case ScenarioKind::Roc: return run_roc(cfg);
        case ScenarioKind::Se: return run_se_sweep(cfg);
        case ScenarioKind::Bler: return run_bler_sweep(cfg);
        case ScenarioKind::MdOpt: return run_md_opt(cfg);
        case ScenarioKind::TradeoffSe:
        case ScenarioKind::TradeoffBler: return run_tradeoff(cfg);
        case ScenarioKind::Validate: return run_validation(cfg);
    }
    throw std::invalid_argument("run_scenario: unknown scenario kind");
}

}  // namespace jamguard::sim
