#include "jamguard/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "jamguard/version.hpp"

namespace jamguard::cli {

namespace {

std::string trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return "";
    const auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> parts;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for '" + key + "': " + value);
    }
}

std::int64_t parse_int(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const std::int64_t v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for '" + key + "': " + value);
    }
}

std::vector<double> parse_double_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    for (const auto& item : split_list(value)) out.push_back(parse_double(item, key));
    return out;
}

std::vector<int> parse_int_list(const std::string& value, const std::string& key) {
    std::vector<int> out;
    for (const auto& item : split_list(value)) out.push_back(static_cast<int>(parse_int(item, key)));
    return out;
}

std::vector<airlink::ChannelKind> parse_channels(const std::string& value) {
    if (value == "awgn") return {airlink::ChannelKind::Awgn};
    if (value == "rayleigh") return {airlink::ChannelKind::Rayleigh};
    if (value == "both") return {airlink::ChannelKind::Awgn, airlink::ChannelKind::Rayleigh};
    throw ConfigError("config: channel must be awgn, rayleigh, or both (got '" + value + "')");
}

void apply_file(sim::ScenarioConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    // Slot geometry is rebuilt at the end so partial edits stay validated.
    int subcarriers = cfg.slot.subcarriers;
    int prb_size = cfg.slot.prb_size;
    int symbols = cfg.slot.symbols;
    double noise_power = cfg.slot.noise_power;
    airlink::Granularity granularity = cfg.slot.granularity;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: line " + std::to_string(line_no) + " is not 'key = value'");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (value.empty()) throw ConfigError("config: empty value for '" + key + "'");

        if (key == "subcarriers") subcarriers = static_cast<int>(parse_int(value, key));
        else if (key == "prb_size") prb_size = static_cast<int>(parse_int(value, key));
        else if (key == "symbols") symbols = static_cast<int>(parse_int(value, key));
        else if (key == "noise_power") noise_power = parse_double(value, key);
        else if (key == "granularity") {
            if (value == "prb") granularity = airlink::Granularity::PRB;
            else if (value == "re") granularity = airlink::Granularity::RE;
            else throw ConfigError("config: granularity must be 'prb' or 're'");
        }
        else if (key == "channel") cfg.channels = parse_channels(value);
        else if (key == "snr_ue_db") cfg.snr_ue_db = parse_double(value, key);
        else if (key == "rho") cfg.rho = parse_double(value, key);
        else if (key == "trials") cfg.trials = static_cast<std::uint64_t>(parse_int(value, key));
        else if (key == "seed") cfg.master_seed = static_cast<std::uint64_t>(parse_int(value, key));
        else if (key == "pfa") cfg.pfa_grid = parse_double_list(value, key);
        else if (key == "snr_j_db") cfg.snr_j_db_grid = parse_double_list(value, key);
        else if (key == "mp") cfg.mp_list = parse_int_list(value, key);
        else if (key == "lp") cfg.lp_list = parse_int_list(value, key);
        else throw ConfigError("config: unknown key '" + key + "'");
    }
    try {
        cfg.slot = airlink::SlotConfig(subcarriers, prb_size, symbols, noise_power, granularity);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

void validate(const sim::ScenarioConfig& cfg) {
    const int pool = cfg.slot.pattern_pool();
    for (int mp : cfg.mp_list) {
        if (mp < 0 || mp > pool) {
            throw ConfigError("config: mp=" + std::to_string(mp) + " outside [0," +
                              std::to_string(pool) + "]");
        }
    }
    for (int lp : cfg.lp_list) {
        if (lp < 0 || lp > pool) {
            throw ConfigError("config: lp=" + std::to_string(lp) + " outside [0," +
                              std::to_string(pool) + "]");
        }
    }
    for (double p : cfg.pfa_grid) {
        if (!(p > 0.0 && p < 1.0)) throw ConfigError("config: pfa values must be in (0,1)");
    }
    if (cfg.trials < 1) throw ConfigError("config: trials must be >= 1");
    if (!(cfg.rho > 0.0)) throw ConfigError("config: rho must be > 0");
}

std::string fmt_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string join_doubles(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += fmt_double(values[i]);
    }
    return out;
}

std::string join_ints(const std::vector<int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

}  // namespace

sim::ScenarioConfig parse_config(sim::ScenarioKind kind, const std::string& config_path,
                                 const FlagOverrides& overrides) {
    sim::ScenarioConfig cfg = sim::default_config(kind);
    if (!config_path.empty()) apply_file(cfg, config_path);

    if (overrides.seed) cfg.master_seed = *overrides.seed;
    if (overrides.trials) cfg.trials = *overrides.trials;
    if (!overrides.snr_j_db.empty()) cfg.snr_j_db_grid = overrides.snr_j_db;
    if (!overrides.pfa.empty()) cfg.pfa_grid = overrides.pfa;
    if (overrides.mp) cfg.mp_list = {*overrides.mp};
    if (!overrides.lp.empty()) cfg.lp_list = overrides.lp;
    if (overrides.channel) cfg.channels = parse_channels(*overrides.channel);

    validate(cfg);
    return cfg;
}

std::string records_csv(const std::vector<sim::ScenarioRecord>& records) {
    std::string out = "x_label,x,series,y,y_stderr\n";
    for (const auto& r : records) {
        out += r.x_label;
        out += ',';
        out += fmt_double(r.x);
        out += ',';
        out += r.series;
        out += ',';
        out += fmt_double(r.y);
        out += ',';
        if (r.y_stderr) out += fmt_double(*r.y_stderr);
        out += '\n';
    }
    return out;
}

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string manifest_text(const sim::ScenarioConfig& cfg, const std::string& csv_path,
                          const std::string& timestamp) {
    std::string out;
    auto put = [&out](const std::string& key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    put("tool_version", kVersion);
    put("scenario", std::string(sim::scenario_name(cfg.kind)));
    put("timestamp", timestamp);
    put("output_csv", csv_path);
    put("seed", std::to_string(cfg.master_seed));
    put("trials", std::to_string(cfg.trials));
    put("subcarriers", std::to_string(cfg.slot.subcarriers));
    put("prb_size", std::to_string(cfg.slot.prb_size));
    put("symbols", std::to_string(cfg.slot.symbols));
    put("noise_power", fmt_double(cfg.slot.noise_power));
    put("granularity", cfg.slot.granularity == airlink::Granularity::PRB ? "prb" : "re");
    std::string channels;
    for (auto c : cfg.channels) {
        if (!channels.empty()) channels += ',';
        channels += c == airlink::ChannelKind::Awgn ? "awgn" : "rayleigh";
    }
    put("channel", channels);
    put("snr_ue_db", fmt_double(cfg.snr_ue_db));
    put("rho", fmt_double(cfg.rho));
    put("pfa", join_doubles(cfg.pfa_grid));
    put("snr_j_db", join_doubles(cfg.snr_j_db_grid));
    put("mp", join_ints(cfg.mp_list));
    put("lp", join_ints(cfg.lp_list));
    return out;
}

int run_command(const sim::ScenarioConfig& cfg, const std::string& out_dir) {
    sim::RunResult result;
    try {
        result = sim::run_scenario(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";

    namespace fs = std::filesystem;
    try {
        fs::create_directories(out_dir);
        const fs::path csv_path =
            fs::path(out_dir) / (std::string(sim::scenario_name(cfg.kind)) + ".csv");
        const fs::path manifest_path =
            fs::path(out_dir) / (std::string(sim::scenario_name(cfg.kind)) + "_manifest.txt");
        {
            std::ofstream csv(csv_path, std::ios::binary);
            if (!csv) throw std::runtime_error("cannot open " + csv_path.string());
            csv << records_csv(result.records);
            if (!csv) throw std::runtime_error("write failed: " + csv_path.string());
        }
        {
            std::ofstream mf(manifest_path, std::ios::binary);
            if (!mf) throw std::runtime_error("cannot open " + manifest_path.string());
            mf << manifest_text(cfg, csv_path.string(), iso8601_utc_now());
            if (!mf) throw std::runtime_error("write failed: " + manifest_path.string());
        }
    } catch (const std::exception& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kIoError;
    }
    return result.ok ? kOk : kValidationFailed;
}

}  // namespace jamguard::cli
