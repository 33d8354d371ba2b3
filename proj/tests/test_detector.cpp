#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "jamguard/detector.hpp"
#include "jamguard/parallel.hpp"
#include "jamguard/stats.hpp"
#include "oracles.hpp"

using namespace jamguard;
using namespace jamguard::detector;

TEST_CASE("threshold calibration") {
    CHECK(calibrate(1e-3, 1, 1.0).threshold == doctest::Approx(std::log(1000.0)).epsilon(1e-10));

    const auto median = calibrate(0.5, 14, 1.0);
    CHECK(stats::gamma_cdf(median.threshold, stats::GammaParams(14, 1.0 / 14.0)) ==
          doctest::Approx(0.5).epsilon(1e-10));

    const auto big = calibrate(1e-3, 840, 1.0);
    CHECK(stats::gamma_tail(big.threshold, stats::GammaParams(840, 1.0 / 840.0)) ==
          doctest::Approx(1e-3).epsilon(1e-8));

    // Threshold decreases as the FA target grows.
    double prev = calibrate(1e-6, 840, 1.0).threshold;
    for (double pfa : {1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
        const double t = calibrate(pfa, 840, 1.0).threshold;
        CHECK(t < prev);
        prev = t;
    }

    CHECK_THROWS_AS(calibrate(0.0, 14, 1.0), std::domain_error);
    CHECK_THROWS_AS(calibrate(1.0, 14, 1.0), std::domain_error);
    CHECK_THROWS_AS(calibrate(0.1, 0, 1.0), std::invalid_argument);
}

TEST_CASE("test statistic basics") {
    const std::vector<std::complex<double>> zeros(8, {0.0, 0.0});
    CHECK(test_statistic(zeros) == 0.0);

    const std::vector<std::complex<double>> units = {
        {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.6, 0.8}};
    CHECK(test_statistic(units) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(test_statistic(std::vector<std::complex<double>>{}), std::invalid_argument);
}

TEST_CASE("statistic is permutation invariant") {
    RandomStream rng(11);
    std::vector<std::complex<double>> samples;
    for (int i = 0; i < 64; ++i) samples.push_back(rng.next_cgauss(1.0));
    const double base = test_statistic(samples);
    std::mt19937_64 gen(3);
    for (int rep = 0; rep < 16; ++rep) {
        std::shuffle(samples.begin(), samples.end(), gen);
        CHECK(test_statistic(samples) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("H0 statistic follows the gamma law (KS test)") {
    const airlink::SlotConfig cfg(14, 1, 1, 1.0, airlink::Granularity::PRB);
    const DetectionScenario scenario{cfg, 14, 0, airlink::ChannelModel::awgn(),
                                     airlink::PowerProfile{100.0, 0.0}, 123};
    const std::uint64_t n = 1000000;
    std::vector<double> stats_sample(n);
    for (std::uint64_t t = 0; t < n; ++t) {
        RandomStream rng = RandomStream::from_ids({55, t});
        stats_sample[t] = slot_statistic(scenario, false, t, rng);
    }
    const stats::GammaParams law(14.0, 1.0 / 14.0);
    const double d = oracles::ks_distance(std::move(stats_sample), [&](double x) {
        return stats::gamma_cdf(x, law);
    });
    CHECK(d < 1.6276 / std::sqrt(double(n)));  // 1% critical value
}

TEST_CASE("decision rule and tie handling") {
    const auto cal = calibrate(1e-2, 14, 1.0);
    CHECK(decide(0.0, cal).decision == Hypothesis::H0);
    CHECK(decide(cal.threshold * 2.0, cal).decision == Hypothesis::H1);
    CHECK(decide(cal.threshold, cal).decision == Hypothesis::H0);  // tie -> H0
}

TEST_CASE("empirical FA matches the target within the 99% binomial CI") {
    const airlink::SlotConfig cfg = airlink::SlotConfig::default_5g();
    const DetectionScenario scenario{cfg, 1, 5, airlink::ChannelModel::awgn(),
                                     airlink::PowerProfile::from_snr_db(cfg, 10.0, 0.0), 9};
    const std::uint64_t trials = 1000000;
    const double pfa = 1e-2;
    const auto rates = empirical_rates(scenario, pfa, trials, 4242);
    const double ci = 2.5758 * std::sqrt(pfa * (1.0 - pfa) / double(trials));
    CHECK(std::fabs(rates.fa_rate - pfa) <= ci);
}

TEST_CASE("empirical rates behave across jammer settings") {
    const airlink::SlotConfig cfg(24, 2, 2, 1.0, airlink::Granularity::PRB);
    const double pfa = 1e-2;

    // Zero jamming power: H1 indistinguishable from H0, MD ~ 1 - pfa.
    {
        const DetectionScenario scenario{cfg, 3, 4, airlink::ChannelModel::awgn(),
                                         airlink::PowerProfile{100.0, 0.0}, 17};
        const auto rates = empirical_rates(scenario, pfa, 200000, 11);
        CHECK(std::fabs(rates.md_rate - (1.0 - pfa)) <= 3.0 * rates.md_stderr + 1e-9);
    }
    // Full-band jamming at +20 dB: overwhelming energy, MD < 1e-3.
    {
        const DetectionScenario scenario{cfg, 3, 12, airlink::ChannelModel::awgn(),
                                         airlink::PowerProfile::from_snr_db(cfg, 10.0, 20.0), 17};
        const auto rates = empirical_rates(scenario, pfa, 100000, 12);
        CHECK(rates.md_rate < 1e-3);
    }
    // FA side never sees the jammer: identical across jam settings.
    {
        const DetectionScenario weak{cfg, 3, 4, airlink::ChannelModel::awgn(),
                                     airlink::PowerProfile::from_snr_db(cfg, 10.0, -10.0), 17};
        const DetectionScenario strong{cfg, 3, 4, airlink::ChannelModel::awgn(),
                                       airlink::PowerProfile::from_snr_db(cfg, 10.0, 20.0), 17};
        const auto a = empirical_rates(weak, pfa, 50000, 99);
        const auto b = empirical_rates(strong, pfa, 50000, 99);
        CHECK(a.fa_rate == b.fa_rate);
    }
}

TEST_CASE("MD is monotone in jam power and FA target") {
    const airlink::SlotConfig cfg(24, 2, 2, 1.0, airlink::Granularity::PRB);
    const std::uint64_t trials = 150000;

    double prev_md = 1.1;
    double prev_se = 0.0;
    for (double snr_j : {-10.0, 0.0, 10.0, 20.0}) {
        const DetectionScenario scenario{cfg, 3, 6, airlink::ChannelModel::awgn(),
                                         airlink::PowerProfile::from_snr_db(cfg, 10.0, snr_j), 5};
        const auto rates = empirical_rates(scenario, 1e-2, trials, 31);
        CHECK(rates.md_rate <= prev_md + 2.0 * (rates.md_stderr + prev_se));
        prev_md = rates.md_rate;
        prev_se = rates.md_stderr;
    }

    prev_md = 1.1;
    prev_se = 0.0;
    const DetectionScenario scenario{cfg, 3, 6, airlink::ChannelModel::awgn(),
                                     airlink::PowerProfile::from_snr_db(cfg, 10.0, 0.0), 5};
    for (double pfa : {1e-3, 1e-2, 1e-1, 0.3}) {
        const auto rates = empirical_rates(scenario, pfa, trials, 37);
        CHECK(rates.md_rate <= prev_md + 2.0 * (rates.md_stderr + prev_se));
        prev_md = rates.md_rate;
        prev_se = rates.md_stderr;
    }
}

TEST_CASE("parallel rate estimation is independent of the worker count") {
    const airlink::SlotConfig cfg(24, 2, 2, 1.0, airlink::Granularity::PRB);
    const DetectionScenario scenario{cfg, 3, 6, airlink::ChannelModel::awgn(),
                                     airlink::PowerProfile::from_snr_db(cfg, 10.0, 0.0), 5};
    const auto one = empirical_rates(scenario, 1e-2, 30000, 8, 1);
    const auto four = empirical_rates(scenario, 1e-2, 30000, 8, 4);
    CHECK(one.fa_rate == four.fa_rate);
    CHECK(one.md_rate == four.md_rate);
}

TEST_CASE("RE granularity redraws patterns per symbol") {
    const airlink::SlotConfig cfg(12, 1, 2, 1.0, airlink::Granularity::RE);
    const DetectionScenario scenario{cfg, 3, 4, airlink::ChannelModel::awgn(),
                                     airlink::PowerProfile::from_snr_db(cfg, 10.0, 0.0), 21};
    RandomStream rng(2);
    const double stat = slot_statistic(scenario, true, 0, rng);
    CHECK(stat > 0.0);
    // Determinism: same ids, same statistic.
    RandomStream rng2(2);
    CHECK(slot_statistic(scenario, true, 0, rng2) == stat);
}
