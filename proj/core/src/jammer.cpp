#include "jamguard/jammer.hpp"

#include <stdexcept>

#include "jamguard/analytic.hpp"

namespace jamguard::jammer {

namespace {

StrategyOutcome argmax_curve(std::vector<std::pair<int, double>> curve) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        // Ties keep the smaller count; differences at rounding level count
        // as ties so a flat objective stays deterministic.
        if (curve[i].second > curve[best].second + 1e-12) best = i;
    }
    return StrategyOutcome{curve[best].first, curve[best].second, std::move(curve)};
}

}  // namespace

StrategyOutcome optimize_md(const JammerKnowledge& knowledge) {
    const int pool = knowledge.cfg.pattern_pool();
    std::vector<std::pair<int, double>> curve;
    curve.reserve(pool);
    for (int count = 1; count <= pool; ++count) {
        const double pmd = analytic::pmd_gaussian_jammer(
            knowledge.cfg, knowledge.blank_count, count, knowledge.target_pfa,
            knowledge.jam_total * knowledge.avg_jam_energy);
        curve.emplace_back(count, pmd);
    }
    return argmax_curve(std::move(curve));
}

std::vector<double> se_min_allocation(double jam_budget, int subcarriers) {
    if (!(jam_budget >= 0.0)) throw std::invalid_argument("se_min_allocation: negative budget");
    if (subcarriers < 1) throw std::invalid_argument("se_min_allocation: subcarriers must be >= 1");
    return std::vector<double>(subcarriers, jam_budget / subcarriers);
}

StrategyOutcome optimize_bler(const JammerKnowledge& knowledge) {
    const int packets = knowledge.packet.packets_per_slot;
    const double subcarriers_per_packet =
        static_cast<double>(knowledge.cfg.subcarriers) / packets;
    const int blanked_per_symbol =
        knowledge.cfg.subcarriers_per_symbol(knowledge.blank_count);
    const int data = knowledge.cfg.subcarriers - blanked_per_symbol;
    const double ue_sc = data > 0 ? knowledge.ue_total / data : 0.0;

    std::vector<std::pair<int, double>> curve;
    curve.reserve(packets);
    for (int attacked = 1; attacked <= packets; ++attacked) {
        // Full power split over the attacked packets, spread evenly over each
        // packet's subcarriers.
        const double jam_sc = knowledge.jam_total / (attacked * subcarriers_per_packet);
        const double sinr = ue_sc * knowledge.avg_ue_energy /
                            (knowledge.cfg.noise_power + jam_sc * knowledge.avg_jam_energy);
        curve.emplace_back(attacked, attacked * kpi::bler_packet(sinr, knowledge.packet));
    }
    return argmax_curve(std::move(curve));
}

}  // namespace jamguard::jammer
