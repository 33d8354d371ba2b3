#include "jamguard/airlink.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jamguard::airlink {

SlotConfig::SlotConfig(int subcarriers_in, int prb_size_in, int symbols_in, double noise_power_in,
                       Granularity granularity_in)
    : subcarriers(subcarriers_in),
      prb_size(prb_size_in),
      symbols(symbols_in),
      noise_power(noise_power_in),
      granularity(granularity_in) {
    if (subcarriers < 1 || prb_size < 1 || symbols < 1) {
        throw std::invalid_argument("SlotConfig: geometry must be positive");
    }
    if (subcarriers % prb_size != 0) {
        throw std::invalid_argument("SlotConfig: subcarriers must be divisible by prb_size");
    }
    if (!(noise_power > 0.0)) {
        throw std::invalid_argument("SlotConfig: noise_power must be positive");
    }
}

SlotConfig SlotConfig::default_5g(double noise_power) {
    return SlotConfig(300, 12, 14, noise_power, Granularity::PRB);
}

ChannelModel ChannelModel::awgn(double ue_gain, double jam_gain) {
    return ChannelModel{ChannelKind::Awgn, ue_gain, jam_gain, 0.0, 0.0};
}

ChannelModel ChannelModel::rayleigh(double ue_var, double jam_var) {
    if (!(ue_var > 0.0) || !(jam_var > 0.0)) {
        throw std::invalid_argument("ChannelModel: Rayleigh variances must be positive");
    }
    return ChannelModel{ChannelKind::Rayleigh, 0.0, 0.0, ue_var, jam_var};
}

double ChannelModel::avg_ue_energy() const {
    return kind == ChannelKind::Awgn ? ue_gain * ue_gain : ue_var;
}

double ChannelModel::avg_jam_energy() const {
    return kind == ChannelKind::Awgn ? jam_gain * jam_gain : jam_var;
}

PowerProfile PowerProfile::from_snr_db(const SlotConfig& cfg, double snr_ue_db, double snr_j_db) {
    const double base = cfg.subcarriers * cfg.noise_power;
    return PowerProfile{std::pow(10.0, snr_ue_db / 10.0) * base,
                        std::pow(10.0, snr_j_db / 10.0) * base};
}

double PowerProfile::snr_ue_db(const SlotConfig& cfg) const {
    return 10.0 * std::log10(ue_total / (cfg.subcarriers * cfg.noise_power));
}

double PowerProfile::snr_j_db(const SlotConfig& cfg) const {
    return 10.0 * std::log10(jam_total / (cfg.subcarriers * cfg.noise_power));
}

double PowerProfile::ue_power_per_data_subcarrier(const SlotConfig& cfg,
                                                  int blanked_per_symbol) const {
    const int data = cfg.subcarriers - blanked_per_symbol;
    return data > 0 ? ue_total / data : 0.0;
}

double PowerProfile::jam_power_per_jammed_subcarrier(int jammed_per_symbol) const {
    return jammed_per_symbol > 0 ? jam_total / jammed_per_symbol : 0.0;
}

namespace {

// Partial Fisher-Yates: uniform size-count subset of [0, pool).
std::vector<int> sample_subset(int pool, int count, RandomStream& rng) {
    std::vector<int> idx(pool);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < count; ++i) {
        const int j = i + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(pool - i)));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace

PatternSet draw_blanking(const SlotConfig& cfg, int blank_count, std::uint64_t key,
                         std::uint64_t slot_index, int symbol_index) {
    const int pool = cfg.pattern_pool();
    if (blank_count < 0 || blank_count > pool) {
        throw std::invalid_argument("draw_blanking: blank_count out of range");
    }
    const std::uint64_t sym =
        cfg.granularity == Granularity::RE ? static_cast<std::uint64_t>(symbol_index) : 0;
    RandomStream rng = RandomStream::from_ids({key, slot_index, sym});
    return PatternSet{slot_index, sample_subset(pool, blank_count, rng)};
}

PatternSet draw_jam_pattern(const SlotConfig& cfg, int jam_count, RandomStream& rng) {
    const int pool = cfg.pattern_pool();
    if (jam_count < 0 || jam_count > pool) {
        throw std::invalid_argument("draw_jam_pattern: jam_count out of range");
    }
    return PatternSet{0, sample_subset(pool, jam_count, rng)};
}

ChannelRealization realize_channel(const ChannelModel& model, const SlotConfig& cfg,
                                   RandomStream& rng) {
    const int prbs = cfg.prb_count();
    ChannelRealization out;
    out.ue_gains.reserve(prbs);
    out.jam_gains.reserve(prbs);
    if (model.kind == ChannelKind::Awgn) {
        out.ue_gains.assign(prbs, std::complex<double>(model.ue_gain, 0.0));
        out.jam_gains.assign(prbs, std::complex<double>(model.jam_gain, 0.0));
    } else {
        for (int p = 0; p < prbs; ++p) {
            out.ue_gains.push_back(rng.next_cgauss(model.ue_var));
            out.jam_gains.push_back(rng.next_cgauss(model.jam_var));
        }
    }
    return out;
}

std::vector<std::complex<double>> received_blanked_samples(
    const SlotConfig& cfg, const PatternSet& blanking, const PatternSet& jamming,
    const ChannelRealization& realization, const PowerProfile& profile, RandomStream& rng) {
    const int pool = cfg.pattern_pool();
    std::vector<char> jammed(pool, 0);
    for (int j : jamming.indices) jammed[j] = 1;

    const int jammed_per_symbol = cfg.subcarriers_per_symbol(jamming.cardinality());
    const double jam_var = profile.jam_power_per_jammed_subcarrier(jammed_per_symbol);

    std::vector<std::complex<double>> out;
    if (cfg.granularity == Granularity::PRB) {
        out.reserve(static_cast<std::size_t>(blanking.cardinality()) * cfg.prb_size * cfg.symbols);
        for (int prb : blanking.indices) {
            const bool hit = jammed[prb] != 0 && jam_var > 0.0;
            const std::complex<double> g = realization.jam_gains[prb];
            for (int n = 0; n < cfg.symbols; ++n) {
                for (int k = 0; k < cfg.prb_size; ++k) {
                    std::complex<double> s = rng.next_cgauss(cfg.noise_power);
                    if (hit) s += g * rng.next_cgauss(jam_var);
                    out.push_back(s);
                }
            }
        }
    } else {
        out.reserve(blanking.indices.size());
        for (int sc : blanking.indices) {
            const bool hit = jammed[sc] != 0 && jam_var > 0.0;
            std::complex<double> s = rng.next_cgauss(cfg.noise_power);
            if (hit) s += realization.jam_gains[sc / cfg.prb_size] * rng.next_cgauss(jam_var);
            out.push_back(s);
        }
    }
    return out;
}

int overlap_re_count(const SlotConfig& cfg, const PatternSet& blanking, const PatternSet& jamming) {
    std::vector<int> common;
    std::set_intersection(blanking.indices.begin(), blanking.indices.end(),
                          jamming.indices.begin(), jamming.indices.end(),
                          std::back_inserter(common));
    const int overlap = static_cast<int>(common.size());
    return cfg.granularity == Granularity::PRB ? overlap * cfg.prb_size * cfg.symbols : overlap;
}

}  // namespace jamguard::airlink
