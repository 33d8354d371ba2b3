#pragma once

#include <utility>
#include <vector>

#include "jamguard/airlink.hpp"

// Closed-form detection performance: MD probability for a known received
// jamming vector, and the total-probability MD formula for a Gaussian jammer
// with a hypergeometric blanked/jammed overlap.

namespace jamguard::analytic {

// Distribution of the RE-level overlap E between blanked and jammed
// resources. At PRB granularity the underlying draw is over PRBs and each
// overlapping PRB contributes prb_size * symbols REs.
struct OverlapLaw {
    std::vector<int> overlap_res;  // RE-level overlap values E
    std::vector<double> pmf;       // P[E = overlap_res[i]], sums to 1
};

// Received-power description of the Gaussian jammer on the jammed REs.
struct GaussianJamSpec {
    double jam_total;   // received jamming power per symbol (P_J * E_g)
    int jam_count;      // jammed subcarriers per symbol (L)
    double per_re_var;  // sigma_j^2 = jam_total / jam_count

    GaussianJamSpec(double jam_total, int jam_count);
    // Transmit-power mapping: sigma_j^2 = (P_J / L) * E_g.
    static GaussianJamSpec from_transmit(double jam_power, int jam_count, double avg_jam_energy);
};

// (E_min, E_max): extreme RE-level overlaps for per-symbol counts M, L out of
// S subcarriers over N symbols.
std::pair<int, int> overlap_bounds(int subcarriers, int blanked_per_symbol, int jammed_per_symbol,
                                   int symbols);

// RE-level law: overlap of M*N blanked REs drawn over the whole S*N grid
// against L*N jammed REs.
OverlapLaw overlap_pmf_re(int subcarriers, int blanked_per_symbol, int jammed_per_symbol,
                          int symbols);

// PRB-level law: o overlapping PRBs out of (prb_count, blanked, jammed),
// each contributing prb_size * symbols REs.
OverlapLaw overlap_pmf_prb(int prb_count, int blanked_prbs, int jammed_prbs, int prb_size,
                           int symbols);

OverlapLaw overlap_pmf(const airlink::SlotConfig& cfg, int blank_count, int jam_count);

// MD probability for a deterministic received jamming vector of the given
// energy: noncentral chi-square with 2*MN degrees of freedom.
double pmd_known_jam(double threshold, double jam_energy, int sample_count, double noise_power);

// P[test statistic < threshold | E overlapping REs] for the Gaussian jammer:
// E hot exponentials at (sigma_w^2+sigma_j^2)/MN plus MN-E cold ones.
double conditional_md_cdf(double threshold, int overlap_res, int sample_count, double noise_power,
                          double jam_re_var);

// Total-probability MD for the Gaussian jammer at the calibrated threshold.
// jam_total_received = P_J * E_g; zero power returns exactly 1 - target_pfa.
double pmd_gaussian_jammer(const airlink::SlotConfig& cfg, int blank_count, int jam_count,
                           double target_pfa, double jam_total_received);

}  // namespace jamguard::analytic
