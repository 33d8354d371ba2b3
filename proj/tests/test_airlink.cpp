#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "jamguard/airlink.hpp"
#include "jamguard/stats.hpp"

using namespace jamguard;
using namespace jamguard::airlink;

TEST_CASE("slot config validation and helpers") {
    CHECK_THROWS_AS(SlotConfig(300, 7, 14, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SlotConfig(300, 12, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SlotConfig(300, 12, 14, 0.0), std::invalid_argument);

    const SlotConfig cfg = SlotConfig::default_5g();
    CHECK(cfg.prb_count() == 25);
    CHECK(cfg.pattern_pool() == 25);
    CHECK(cfg.blanked_res_per_slot(5) == 840);
    CHECK(cfg.subcarriers_per_symbol(5) == 60);

    const SlotConfig re_cfg(12, 1, 2, 1.0, Granularity::RE);
    CHECK(re_cfg.pattern_pool() == 12);
    CHECK(re_cfg.blanked_res_per_slot(3) == 6);
}

TEST_CASE("blanking pattern determinism and bounds") {
    const SlotConfig cfg = SlotConfig::default_5g();
    CHECK(draw_blanking(cfg, 0, 7, 3).indices.empty());
    CHECK_THROWS_AS(draw_blanking(cfg, 26, 7, 3), std::invalid_argument);
    CHECK_THROWS_AS(draw_blanking(cfg, -1, 7, 3), std::invalid_argument);

    const auto a = draw_blanking(cfg, 5, 42, 17);
    const auto b = draw_blanking(cfg, 5, 42, 17);
    CHECK(a.indices == b.indices);
    CHECK(a.cardinality() == 5);
    CHECK(std::is_sorted(a.indices.begin(), a.indices.end()));
    CHECK(std::adjacent_find(a.indices.begin(), a.indices.end()) == a.indices.end());
    CHECK(a.indices.front() >= 0);
    CHECK(a.indices.back() < 25);

    // Different keys and slots decorrelate.
    CHECK(draw_blanking(cfg, 5, 43, 17).indices != a.indices);

    // RE granularity redraws per symbol; PRB granularity ignores the symbol.
    const SlotConfig re_cfg(300, 12, 14, 1.0, Granularity::RE);
    const auto s0 = draw_blanking(re_cfg, 30, 42, 17, 0);
    const auto s1 = draw_blanking(re_cfg, 30, 42, 17, 1);
    CHECK(s0.indices != s1.indices);
    CHECK(draw_blanking(cfg, 5, 42, 17, 3).indices == a.indices);
}

TEST_CASE("blanking subsets are uniform over all size-2 subsets of 5") {
    const SlotConfig cfg(5, 1, 1, 1.0, Granularity::PRB);
    std::map<std::pair<int, int>, std::uint64_t> freq;
    const std::uint64_t draws = 1000000;
    for (std::uint64_t slot = 0; slot < draws; ++slot) {
        const auto p = draw_blanking(cfg, 2, 99, slot);
        ++freq[{p.indices[0], p.indices[1]}];
    }
    CHECK(freq.size() == 10);
    double chi2 = 0.0;
    const double expected = draws / 10.0;
    for (const auto& [subset, count] : freq) {
        CHECK(std::fabs(double(count) / draws - 0.1) <= 0.002);
        chi2 += (count - expected) * (count - expected) / expected;
    }
    CHECK(chi2 < 27.88);  // chi-square critical value, 9 dof, alpha = 0.1%
}

TEST_CASE("jam pattern bounds and edge counts") {
    const SlotConfig cfg = SlotConfig::default_5g();
    RandomStream rng(2024);
    CHECK(draw_jam_pattern(cfg, 25, rng).cardinality() == 25);
    CHECK(draw_jam_pattern(cfg, 0, rng).indices.empty());
    CHECK_THROWS_AS(draw_jam_pattern(cfg, 26, rng), std::invalid_argument);
}

TEST_CASE("blanking/jamming overlap follows the hypergeometric law") {
    const SlotConfig cfg = SlotConfig::default_5g();
    const std::uint64_t trials = 1000000;
    RandomStream rng(5150);
    std::array<std::uint64_t, 6> bins{};
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto blank = draw_blanking(cfg, 5, 66957, t);
        const auto jam = draw_jam_pattern(cfg, 5, rng);
        std::vector<int> common;
        std::set_intersection(blank.indices.begin(), blank.indices.end(), jam.indices.begin(),
                              jam.indices.end(), std::back_inserter(common));
        ++bins[common.size()];
    }
    for (int o = 0; o <= 5; ++o) {
        const double p = stats::hypergeom_pmf(25, 5, 5, o);
        const double se = std::sqrt(p * (1.0 - p) / double(trials));
        CHECK(std::fabs(double(bins[o]) / double(trials) - p) <= 3.0 * se + 1e-9);
    }
}

TEST_CASE("channel realizations: AWGN constants and Rayleigh moments") {
    const SlotConfig cfg = SlotConfig::default_5g();
    RandomStream rng(31);
    const auto awgn = realize_channel(ChannelModel::awgn(1.0, 1.0), cfg, rng);
    for (const auto& h : awgn.ue_gains) CHECK(h == std::complex<double>(1.0, 0.0));
    for (const auto& g : awgn.jam_gains) CHECK(g == std::complex<double>(1.0, 0.0));

    const auto model = ChannelModel::rayleigh(1.0, 2.0);
    CHECK(model.avg_ue_energy() == 1.0);
    CHECK(model.avg_jam_energy() == 2.0);

    double sum_h = 0.0, sum_g = 0.0;
    const int slots = 40000;  // 10^6 PRB draws
    for (int s = 0; s < slots; ++s) {
        const auto real = realize_channel(model, cfg, rng);
        for (const auto& h : real.ue_gains) sum_h += std::norm(h);
        for (const auto& g : real.jam_gains) sum_g += std::norm(g);
    }
    const double n = double(slots) * cfg.prb_count();
    CHECK(std::fabs(sum_h / n - 1.0) <= 0.01);
    CHECK(std::fabs(sum_g / n - 2.0) <= 0.02);
}

TEST_CASE("channel gains on distinct PRBs are uncorrelated") {
    const SlotConfig cfg = SlotConfig::default_5g();
    const auto model = ChannelModel::rayleigh(1.0, 1.0);
    RandomStream rng(77);
    const int slots = 200000;
    double s0 = 0.0, s1 = 0.0, s00 = 0.0, s11 = 0.0, s01 = 0.0;
    for (int s = 0; s < slots; ++s) {
        const auto real = realize_channel(model, cfg, rng);
        const double a = std::norm(real.ue_gains[0]);
        const double b = std::norm(real.ue_gains[1]);
        s0 += a;
        s1 += b;
        s00 += a * a;
        s11 += b * b;
        s01 += a * b;
    }
    const double n = slots;
    const double cov = s01 / n - (s0 / n) * (s1 / n);
    const double corr = cov / std::sqrt((s00 / n - (s0 / n) * (s0 / n)) *
                                        (s11 / n - (s1 / n) * (s1 / n)));
    CHECK(std::fabs(corr) < 0.01);
}

TEST_CASE("received blanked samples carry noise plus overlapped jamming") {
    const SlotConfig cfg = SlotConfig::default_5g();
    RandomStream rng(8080);
    const auto realization = realize_channel(ChannelModel::awgn(1.0, 1.0), cfg, rng);
    const PowerProfile profile = PowerProfile::from_snr_db(cfg, 10.0, 0.0);  // P_J = 300

    // Disjoint patterns: pure noise on the blanked REs.
    PatternSet blank{0, {0, 1, 2, 3, 4}};
    PatternSet jam_disjoint{0, {20, 21, 22, 23, 24}};
    double energy = 0.0;
    std::uint64_t count = 0;
    for (int rep = 0; rep < 1200; ++rep) {
        const auto s =
            received_blanked_samples(cfg, blank, jam_disjoint, realization, profile, rng);
        for (const auto& v : s) energy += std::norm(v);
        count += s.size();
    }
    CHECK(count == 1200u * 840u);
    CHECK(std::fabs(energy / double(count) - 1.0) <= 0.004);

    // Full overlap with |G|^2 = 1: variance sigma_w^2 + P_J/L.
    PatternSet jam_overlap{0, {0, 1, 2, 3, 4}};
    const double jam_re = profile.jam_power_per_jammed_subcarrier(60);  // 300/60 = 5
    CHECK(jam_re == doctest::Approx(5.0));
    energy = 0.0;
    count = 0;
    for (int rep = 0; rep < 1200; ++rep) {
        const auto s =
            received_blanked_samples(cfg, blank, jam_overlap, realization, profile, rng);
        for (const auto& v : s) energy += std::norm(v);
        count += s.size();
    }
    CHECK(std::fabs(energy / double(count) - 6.0) <= 6.0 * 3.0 / std::sqrt(double(count)));

    // Zero jamming power is statistically pure noise.
    const PowerProfile quiet{profile.ue_total, 0.0};
    energy = 0.0;
    count = 0;
    for (int rep = 0; rep < 1200; ++rep) {
        const auto s = received_blanked_samples(cfg, blank, jam_overlap, realization, quiet, rng);
        for (const auto& v : s) energy += std::norm(v);
        count += s.size();
    }
    CHECK(std::fabs(energy / double(count) - 1.0) <= 0.004);
}

TEST_CASE("PRB-level overlap scales to the RE-level count") {
    const SlotConfig cfg(24, 2, 3, 1.0, Granularity::PRB);
    RandomStream rng(99);
    for (int rep = 0; rep < 200; ++rep) {
        const auto blank = draw_blanking(cfg, 4, 5, rep);
        const auto jam = draw_jam_pattern(cfg, 6, rng);
        // Expand both PRB patterns to explicit RE index sets over the slot.
        std::vector<int> blank_res, jam_res, common;
        for (int n = 0; n < cfg.symbols; ++n) {
            for (int prb : blank.indices) {
                for (int k = 0; k < cfg.prb_size; ++k) {
                    blank_res.push_back(n * cfg.subcarriers + prb * cfg.prb_size + k);
                }
            }
            for (int prb : jam.indices) {
                for (int k = 0; k < cfg.prb_size; ++k) {
                    jam_res.push_back(n * cfg.subcarriers + prb * cfg.prb_size + k);
                }
            }
        }
        std::sort(blank_res.begin(), blank_res.end());
        std::sort(jam_res.begin(), jam_res.end());
        std::set_intersection(blank_res.begin(), blank_res.end(), jam_res.begin(), jam_res.end(),
                              std::back_inserter(common));
        CHECK(overlap_re_count(cfg, blank, jam) == int(common.size()));
    }
}

TEST_CASE("UE power is redistributed, not lost") {
    const SlotConfig cfg = SlotConfig::default_5g();
    const PowerProfile profile = PowerProfile::from_snr_db(cfg, 10.0, 0.0);
    for (int mp : {0, 1, 5, 12, 24}) {
        const int blanked = cfg.subcarriers_per_symbol(mp);
        const double per_sc = profile.ue_power_per_data_subcarrier(cfg, blanked);
        CHECK(per_sc * (cfg.subcarriers - blanked) ==
              doctest::Approx(profile.ue_total).epsilon(1e-12));
    }
    CHECK(profile.snr_ue_db(cfg) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(profile.snr_j_db(cfg) == doctest::Approx(0.0).epsilon(1e-10));
}
