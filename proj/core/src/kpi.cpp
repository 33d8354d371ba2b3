#include "jamguard/kpi.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "jamguard/parallel.hpp"
#include "jamguard/stats.hpp"

namespace jamguard::kpi {

namespace {
constexpr double kLog2eSq = std::numbers::log2e * std::numbers::log2e;
}

PacketSpec::PacketSpec(double rate_in, int channel_uses_in, int packets_per_slot_in)
    : rate(rate_in), channel_uses(channel_uses_in), packets_per_slot(packets_per_slot_in) {
    if (!(rate > 0.0)) throw std::invalid_argument("PacketSpec: rate must be > 0");
    if (channel_uses < 1) throw std::invalid_argument("PacketSpec: channel_uses must be >= 1");
    if (packets_per_slot < 1) {
        throw std::invalid_argument("PacketSpec: packets_per_slot must be >= 1");
    }
}

PacketSpec PacketSpec::default_urllc(const airlink::SlotConfig& cfg) {
    return PacketSpec(0.48, cfg.prb_size * cfg.symbols, cfg.prb_count());
}

double sinr_re(double ue_power, std::complex<double> ue_gain, double jam_power,
               std::complex<double> jam_gain, double noise_power) {
    if (!(ue_power >= 0.0) || !(jam_power >= 0.0) || !(noise_power > 0.0)) {
        throw std::invalid_argument("sinr_re: powers must be >= 0 and noise > 0");
    }
    return ue_power * std::norm(ue_gain) / (noise_power + jam_power * std::norm(jam_gain));
}

double channel_dispersion(double sinr) {
    if (!(sinr >= 0.0)) throw std::invalid_argument("channel_dispersion: sinr must be >= 0");
    const double inv = 1.0 / (1.0 + sinr);
    return kLog2eSq * (1.0 - inv * inv);
}

double bler_packet(double sinr, const PacketSpec& spec) {
    if (!(sinr >= 0.0)) throw std::invalid_argument("bler_packet: sinr must be >= 0");
    if (sinr == 0.0) return 1.0;  // zero dispersion with capacity below rate
    const double capacity = std::log2(1.0 + sinr);
    const double arg =
        (capacity - spec.rate) * std::sqrt(spec.channel_uses / channel_dispersion(sinr));
    return stats::gaussian_q(arg);
}

double sinr_packet(std::span<const double> re_sinrs) {
    if (re_sinrs.empty()) throw std::invalid_argument("sinr_packet: empty SINR set");
    double mean_cap = 0.0;
    for (double s : re_sinrs) mean_cap += std::log2(1.0 + s);
    mean_cap /= static_cast<double>(re_sinrs.size());
    return std::exp2(mean_cap) - 1.0;
}

namespace {

std::vector<char> index_mask(int pool, const airlink::PatternSet& pattern) {
    std::vector<char> mask(pool, 0);
    for (int i : pattern.indices) mask[i] = 1;
    return mask;
}

}  // namespace

double slot_spectral_efficiency(const airlink::SlotConfig& cfg, const airlink::PatternSet& blanking,
                                const airlink::PatternSet& jamming,
                                const airlink::ChannelRealization& realization,
                                const airlink::PowerProfile& profile) {
    const int pool = cfg.pattern_pool();
    const auto blanked = index_mask(pool, blanking);
    const auto jammed = index_mask(pool, jamming);
    const double ue_sc = profile.ue_power_per_data_subcarrier(
        cfg, cfg.subcarriers_per_symbol(blanking.cardinality()));
    const double jam_sc =
        profile.jam_power_per_jammed_subcarrier(cfg.subcarriers_per_symbol(jamming.cardinality()));

    double rate_sum = 0.0;  // blanked resources contribute zero
    if (cfg.granularity == airlink::Granularity::PRB) {
        for (int p = 0; p < pool; ++p) {
            if (blanked[p]) continue;
            const double s = sinr_re(ue_sc, realization.ue_gains[p], jammed[p] ? jam_sc : 0.0,
                                     realization.jam_gains[p], cfg.noise_power);
            rate_sum += cfg.prb_size * std::log2(1.0 + s);
        }
    } else {
        for (int sc = 0; sc < pool; ++sc) {
            if (blanked[sc]) continue;
            const int p = sc / cfg.prb_size;
            const double s = sinr_re(ue_sc, realization.ue_gains[p], jammed[sc] ? jam_sc : 0.0,
                                     realization.jam_gains[p], cfg.noise_power);
            rate_sum += std::log2(1.0 + s);
        }
    }
    return rate_sum / cfg.subcarriers;
}

double slot_bler(const airlink::SlotConfig& cfg, const airlink::PatternSet& blanking,
                 const airlink::PatternSet& jamming,
                 const airlink::ChannelRealization& realization,
                 const airlink::PowerProfile& profile, const PacketSpec& spec) {
    if (cfg.granularity != airlink::Granularity::PRB) {
        throw std::invalid_argument("slot_bler: packets are scheduled per PRB");
    }
    const int pool = cfg.prb_count();
    const auto blanked = index_mask(pool, blanking);
    const auto jammed = index_mask(pool, jamming);
    const double ue_sc = profile.ue_power_per_data_subcarrier(
        cfg, cfg.subcarriers_per_symbol(blanking.cardinality()));
    const double jam_sc =
        profile.jam_power_per_jammed_subcarrier(cfg.subcarriers_per_symbol(jamming.cardinality()));

    double bler_sum = 0.0;
    int packets = 0;
    for (int p = 0; p < pool; ++p) {
        if (blanked[p]) continue;  // one packet per non-blanked PRB
        const double s = sinr_re(ue_sc, realization.ue_gains[p], jammed[p] ? jam_sc : 0.0,
                                 realization.jam_gains[p], cfg.noise_power);
        bler_sum += bler_packet(s, spec);
        ++packets;
    }
    return packets > 0 ? bler_sum / packets : 0.0;
}

namespace {

KpiEstimate from_accumulator(const MeanAccumulator& acc) {
    return KpiEstimate{acc.mean(), acc.stderr_mean(), acc.n};
}

}  // namespace

KpiEstimate spectral_efficiency(const airlink::SlotConfig& cfg, int blank_count, int jam_count,
                                const airlink::ChannelModel& model,
                                const airlink::PowerProfile& profile, std::uint64_t trials,
                                std::uint64_t seed, std::uint64_t blanking_key, unsigned workers) {
    if (trials < 1) throw std::invalid_argument("spectral_efficiency: trials must be >= 1");
    if (workers == 0) workers = worker_count();
    const auto acc = run_trials<MeanAccumulator>(
        trials,
        [&](std::uint64_t t, MeanAccumulator& a) {
            RandomStream rng = RandomStream::from_ids({seed, t});
            const auto realization = realize_channel(model, cfg, rng);
            if (cfg.granularity == airlink::Granularity::PRB) {
                const auto blanking = draw_blanking(cfg, blank_count, blanking_key, t);
                const auto jamming = draw_jam_pattern(cfg, jam_count, rng);
                a.add(slot_spectral_efficiency(cfg, blanking, jamming, realization, profile));
            } else {
                double se = 0.0;
                for (int n = 0; n < cfg.symbols; ++n) {
                    const auto blanking = draw_blanking(cfg, blank_count, blanking_key, t, n);
                    const auto jamming = draw_jam_pattern(cfg, jam_count, rng);
                    se += slot_spectral_efficiency(cfg, blanking, jamming, realization, profile);
                }
                a.add(se / cfg.symbols);
            }
        },
        workers);
    return from_accumulator(acc);
}

KpiEstimate slot_bler_mc(const airlink::SlotConfig& cfg, int blank_count, int jam_count,
                         const airlink::ChannelModel& model, const airlink::PowerProfile& profile,
                         const PacketSpec& spec, std::uint64_t trials, std::uint64_t seed,
                         std::uint64_t blanking_key, unsigned workers) {
    if (trials < 1) throw std::invalid_argument("slot_bler_mc: trials must be >= 1");
    if (workers == 0) workers = worker_count();
    const auto acc = run_trials<MeanAccumulator>(
        trials,
        [&](std::uint64_t t, MeanAccumulator& a) {
            RandomStream rng = RandomStream::from_ids({seed, t});
            const auto realization = realize_channel(model, cfg, rng);
            const auto blanking = draw_blanking(cfg, blank_count, blanking_key, t);
            const auto jamming = draw_jam_pattern(cfg, jam_count, rng);
            a.add(slot_bler(cfg, blanking, jamming, realization, profile, spec));
        },
        workers);
    return from_accumulator(acc);
}

}  // namespace jamguard::kpi
