#pragma once

#include <utility>
#include <vector>

#include "jamguard/airlink.hpp"
#include "jamguard/kpi.hpp"

// Smart-jammer strategies: MD-probability maximization, SE minimization, and
// BLER maximization. The jammer knows the transmission format, large-scale
// fading, noise power, blanking count, and detector settings; never
// instantaneous CSI.

namespace jamguard::jammer {

struct JammerKnowledge {
    airlink::SlotConfig cfg;
    int blank_count;        // M_P (PRB granularity) or M (RE granularity)
    double target_pfa;      // lambda' follows from this and MN
    double avg_ue_energy;   // E_h
    double avg_jam_energy;  // E_g
    double ue_total;        // P_UE per symbol
    double jam_total;       // P_J budget per symbol
    kpi::PacketSpec packet;
};

struct StrategyOutcome {
    int chosen_count;        // L*, L_P*, or L_F*
    double objective_value;  // objective at the chosen count
    std::vector<std::pair<int, double>> objective_curve;
};

// Exhaustive search of the MD probability over the jammed-resource count;
// ties break toward the smaller count.
StrategyOutcome optimize_md(const JammerKnowledge& knowledge);

// SE-minimizing power split: uniform over all subcarriers (wide-band attack).
std::vector<double> se_min_allocation(double jam_budget, int subcarriers);

// Exhaustive search over how many of the F packets to attack, maximizing the
// expected number of lost packets L_F * BLER(P_J / L_F) at average channel
// energies.
StrategyOutcome optimize_bler(const JammerKnowledge& knowledge);

}  // namespace jamguard::jammer
