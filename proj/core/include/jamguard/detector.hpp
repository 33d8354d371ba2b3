#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "jamguard/airlink.hpp"

// GLRT energy detector on the blanked REs: threshold calibration from the
// target FA probability, test statistic, decision, and empirical FA/MD rates.

namespace jamguard::detector {

struct DetectorCalibration {
    double target_pfa;
    int sample_count;    // M*N
    double noise_power;  // sigma_w^2
    double threshold;    // lambda', units of power
};

enum class Hypothesis { H0, H1 };

struct Verdict {
    double statistic;
    Hypothesis decision;
};

// Threshold such that P[Gamma(MN, sigma_w^2/MN) > threshold] = target_pfa.
DetectorCalibration calibrate(double target_pfa, int sample_count, double noise_power);

// ||r||^2 / sample_count over the blanked-RE samples.
double test_statistic(std::span<const std::complex<double>> samples);

// H1 iff statistic > threshold; ties resolve to H0.
Verdict decide(double statistic, const DetectorCalibration& cal);

// One slot trial with (H1) or without (H0) the jammer, patterns and channel
// drawn per slot. Exposed so scenario sweeps can batch statistics against
// several thresholds.
struct DetectionScenario {
    airlink::SlotConfig cfg;
    int blank_count;  // M_P at PRB granularity, M at RE granularity
    int jam_count;    // L_P or L
    airlink::ChannelModel channel;
    airlink::PowerProfile power;
    std::uint64_t blanking_key = 0;
};

double slot_statistic(const DetectionScenario& scenario, bool with_jamming,
                      std::uint64_t slot_index, RandomStream& rng);

struct RateEstimate {
    double fa_rate;
    double fa_stderr;
    double md_rate;
    double md_stderr;
    std::uint64_t trials;
};

// Empirical FA and MD over independent slot trials with binomial standard
// errors. Trials run in parallel on counter-derived streams; the result is
// independent of the worker count.
RateEstimate empirical_rates(const DetectionScenario& scenario, double target_pfa,
                             std::uint64_t trials, std::uint64_t seed, unsigned workers = 0);

}  // namespace jamguard::detector
