#include "jamguard/analytic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "jamguard/detector.hpp"
#include "jamguard/stats.hpp"

namespace jamguard::analytic {

GaussianJamSpec::GaussianJamSpec(double jam_total_in, int jam_count_in)
    : jam_total(jam_total_in),
      jam_count(jam_count_in),
      per_re_var(jam_count_in > 0 ? jam_total_in / jam_count_in : 0.0) {
    if (jam_count < 1) throw std::invalid_argument("GaussianJamSpec: jam_count must be >= 1");
    if (!(jam_total >= 0.0)) throw std::invalid_argument("GaussianJamSpec: jam_total must be >= 0");
}

GaussianJamSpec GaussianJamSpec::from_transmit(double jam_power, int jam_count,
                                               double avg_jam_energy) {
    return GaussianJamSpec(jam_power * avg_jam_energy, jam_count);
}

namespace {

// The listed values cover the entire support, so the law sums to one up to
// log-gamma rounding; renormalizing removes the accumulated dust.
void normalize(OverlapLaw& law) {
    const double sum = std::accumulate(law.pmf.begin(), law.pmf.end(), 0.0);
    if (sum > 0.0) {
        for (double& p : law.pmf) p /= sum;
    }
}

}  // namespace

std::pair<int, int> overlap_bounds(int subcarriers, int blanked_per_symbol, int jammed_per_symbol,
                                   int symbols) {
    if (blanked_per_symbol > subcarriers || jammed_per_symbol > subcarriers) {
        throw std::invalid_argument("overlap_bounds: counts exceed the subcarrier grid");
    }
    const int e_max = std::min(blanked_per_symbol, jammed_per_symbol) * symbols;
    const int spill = blanked_per_symbol + jammed_per_symbol - subcarriers;
    const int e_min = spill > 0 ? spill * symbols : 0;
    return {e_min, e_max};
}

OverlapLaw overlap_pmf_re(int subcarriers, int blanked_per_symbol, int jammed_per_symbol,
                          int symbols) {
    const auto [e_min, e_max] =
        overlap_bounds(subcarriers, blanked_per_symbol, jammed_per_symbol, symbols);
    const std::int64_t population = std::int64_t(subcarriers) * symbols;
    const std::int64_t draws = std::int64_t(blanked_per_symbol) * symbols;
    const std::int64_t successes = std::int64_t(jammed_per_symbol) * symbols;
    // The hypergeometric support coincides with [E_min, E_max], so the
    // intersection of the two conventions is just this range.
    OverlapLaw law;
    for (int e = e_min; e <= e_max; ++e) {
        law.overlap_res.push_back(e);
        law.pmf.push_back(stats::hypergeom_pmf(population, successes, draws, e));
    }
    normalize(law);
    return law;
}

OverlapLaw overlap_pmf_prb(int prb_count, int blanked_prbs, int jammed_prbs, int prb_size,
                           int symbols) {
    if (blanked_prbs > prb_count || jammed_prbs > prb_count) {
        throw std::invalid_argument("overlap_pmf_prb: counts exceed the PRB grid");
    }
    const int o_min = std::max(0, blanked_prbs + jammed_prbs - prb_count);
    const int o_max = std::min(blanked_prbs, jammed_prbs);
    OverlapLaw law;
    for (int o = o_min; o <= o_max; ++o) {
        law.overlap_res.push_back(o * prb_size * symbols);
        law.pmf.push_back(stats::hypergeom_pmf(prb_count, jammed_prbs, blanked_prbs, o));
    }
    normalize(law);
    return law;
}

OverlapLaw overlap_pmf(const airlink::SlotConfig& cfg, int blank_count, int jam_count) {
    if (cfg.granularity == airlink::Granularity::PRB) {
        return overlap_pmf_prb(cfg.prb_count(), blank_count, jam_count, cfg.prb_size, cfg.symbols);
    }
    return overlap_pmf_re(cfg.subcarriers, blank_count, jam_count, cfg.symbols);
}

double pmd_known_jam(double threshold, double jam_energy, int sample_count, double noise_power) {
    if (!(threshold > 0.0)) throw std::invalid_argument("pmd_known_jam: threshold must be > 0");
    if (!(jam_energy >= 0.0)) throw std::invalid_argument("pmd_known_jam: jam_energy must be >= 0");
    const stats::NoncentralChi2Params law(2 * sample_count, 2.0 * jam_energy / noise_power);
    return stats::noncentral_chi2_cdf(2.0 * sample_count * threshold / noise_power, law);
}

double conditional_md_cdf(double threshold, int overlap_res, int sample_count, double noise_power,
                          double jam_re_var) {
    if (overlap_res < 0 || overlap_res > sample_count) {
        throw std::invalid_argument("conditional_md_cdf: overlap outside [0, MN]");
    }
    const stats::TwoRateErlangMix mix(overlap_res, sample_count - overlap_res,
                                      (noise_power + jam_re_var) / sample_count,
                                      noise_power / sample_count);
    return stats::two_rate_mix_cdf(threshold, mix);
}

double pmd_gaussian_jammer(const airlink::SlotConfig& cfg, int blank_count, int jam_count,
                           double target_pfa, double jam_total_received) {
    const int mn = cfg.blanked_res_per_slot(blank_count);
    const auto cal = detector::calibrate(target_pfa, mn, cfg.noise_power);
    const int jammed_per_symbol = cfg.subcarriers_per_symbol(jam_count);
    const double jam_re_var =
        jammed_per_symbol > 0 ? jam_total_received / jammed_per_symbol : 0.0;
    // No received jamming power: every conditional law is the H0 law.
    if (jam_re_var == 0.0) {
        return conditional_md_cdf(cal.threshold, 0, mn, cfg.noise_power, 0.0);
    }
    const auto law = overlap_pmf(cfg, blank_count, jam_count);
    double pmd = 0.0;
    for (std::size_t i = 0; i < law.pmf.size(); ++i) {
        if (law.pmf[i] == 0.0) continue;
        pmd += law.pmf[i] *
               conditional_md_cdf(cal.threshold, law.overlap_res[i], mn, cfg.noise_power,
                                  jam_re_var);
    }
    return std::clamp(pmd, 0.0, 1.0);
}

}  // namespace jamguard::analytic
