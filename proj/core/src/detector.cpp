#include "jamguard/detector.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "jamguard/parallel.hpp"
#include "jamguard/stats.hpp"

namespace jamguard::detector {

DetectorCalibration calibrate(double target_pfa, int sample_count, double noise_power) {
    if (!(target_pfa > 0.0) || !(target_pfa < 1.0)) {
        throw std::domain_error("calibrate: target_pfa must be in (0,1)");
    }
    if (sample_count < 1) throw std::invalid_argument("calibrate: sample_count must be >= 1");
    if (!(noise_power > 0.0)) throw std::invalid_argument("calibrate: noise_power must be > 0");
    const stats::GammaParams h0_law(sample_count, noise_power / sample_count);
    return DetectorCalibration{target_pfa, sample_count, noise_power,
                               stats::gamma_inv_tail(target_pfa, h0_law)};
}

double test_statistic(std::span<const std::complex<double>> samples) {
    if (samples.empty()) throw std::invalid_argument("test_statistic: empty sample vector");
    double energy = 0.0;
    for (const auto& s : samples) energy += std::norm(s);
    return energy / static_cast<double>(samples.size());
}

Verdict decide(double statistic, const DetectorCalibration& cal) {
    return Verdict{statistic, statistic > cal.threshold ? Hypothesis::H1 : Hypothesis::H0};
}

double slot_statistic(const DetectionScenario& scenario, bool with_jamming,
                      std::uint64_t slot_index, RandomStream& rng) {
    const auto& cfg = scenario.cfg;
    const auto realization = realize_channel(scenario.channel, cfg, rng);

    if (cfg.granularity == airlink::Granularity::PRB) {
        const auto blanking =
            draw_blanking(cfg, scenario.blank_count, scenario.blanking_key, slot_index);
        airlink::PatternSet jamming;
        if (with_jamming) jamming = draw_jam_pattern(cfg, scenario.jam_count, rng);
        const auto samples =
            received_blanked_samples(cfg, blanking, jamming, realization, scenario.power, rng);
        return test_statistic(samples);
    }

    // RE granularity: fresh patterns per symbol, statistic over the slot.
    std::vector<std::complex<double>> samples;
    samples.reserve(static_cast<std::size_t>(scenario.blank_count) * cfg.symbols);
    for (int n = 0; n < cfg.symbols; ++n) {
        const auto blanking =
            draw_blanking(cfg, scenario.blank_count, scenario.blanking_key, slot_index, n);
        airlink::PatternSet jamming;
        if (with_jamming) jamming = draw_jam_pattern(cfg, scenario.jam_count, rng);
        const auto sym =
            received_blanked_samples(cfg, blanking, jamming, realization, scenario.power, rng);
        samples.insert(samples.end(), sym.begin(), sym.end());
    }
    return test_statistic(samples);
}

namespace {

struct RateCounts {
    std::uint64_t fa = 0;
    std::uint64_t md = 0;
    void merge(const RateCounts& o) {
        fa += o.fa;
        md += o.md;
    }
};

double binomial_stderr(double p, std::uint64_t n) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace

RateEstimate empirical_rates(const DetectionScenario& scenario, double target_pfa,
                             std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    if (trials < 1) throw std::invalid_argument("empirical_rates: trials must be >= 1");
    const int mn = scenario.cfg.blanked_res_per_slot(scenario.blank_count);
    const auto cal = calibrate(target_pfa, mn, scenario.cfg.noise_power);
    if (workers == 0) workers = worker_count();

    const auto counts = run_trials<RateCounts>(
        trials,
        [&](std::uint64_t t, RateCounts& acc) {
            RandomStream h0 = RandomStream::from_ids({seed, t, 0});
            if (decide(slot_statistic(scenario, false, t, h0), cal).decision == Hypothesis::H1) {
                ++acc.fa;
            }
            RandomStream h1 = RandomStream::from_ids({seed, t, 1});
            if (decide(slot_statistic(scenario, true, t, h1), cal).decision == Hypothesis::H0) {
                ++acc.md;
            }
        },
        workers);

    const double fa = static_cast<double>(counts.fa) / static_cast<double>(trials);
    const double md = static_cast<double>(counts.md) / static_cast<double>(trials);
    return RateEstimate{fa, binomial_stderr(fa, trials), md, binomial_stderr(md, trials), trials};
}

}  // namespace jamguard::detector
