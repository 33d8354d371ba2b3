#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "jamguard/rng.hpp"

// Resource-grid model: slot geometry, pseudo-random blanking and jamming
// patterns, power allocation, and channel realizations.

namespace jamguard::airlink {

// Resource selection granularity. PRB patterns are fixed for a whole slot;
// RE patterns are drawn per OFDM symbol.
enum class Granularity { RE, PRB };

struct SlotConfig {
    int subcarriers;     // S
    int prb_size;        // S_P, divides S
    int symbols;         // N per slot
    double noise_power;  // sigma_w^2, linear
    Granularity granularity;

    SlotConfig(int subcarriers, int prb_size, int symbols, double noise_power,
               Granularity granularity = Granularity::PRB);

    // 5G numerology used throughout the experiments: S=300, S_P=12, N=14.
    static SlotConfig default_5g(double noise_power = 1.0);

    int prb_count() const { return subcarriers / prb_size; }
    // Number of selectable resources per pattern draw.
    int pattern_pool() const { return granularity == Granularity::PRB ? prb_count() : subcarriers; }
    // Subcarriers per symbol covered by a pattern of the given cardinality.
    int subcarriers_per_symbol(int pattern_count) const {
        return granularity == Granularity::PRB ? pattern_count * prb_size : pattern_count;
    }
    // Blanked REs per detection window for a pattern of the given cardinality.
    int blanked_res_per_slot(int pattern_count) const {
        return subcarriers_per_symbol(pattern_count) * symbols;
    }
};

// A per-slot (PRB) or per-symbol (RE) set of selected resource indices.
struct PatternSet {
    std::uint64_t slot_index = 0;
    std::vector<int> indices;  // sorted, unique, within [0, pool)

    int cardinality() const { return static_cast<int>(indices.size()); }
};

enum class ChannelKind { Awgn, Rayleigh };

struct ChannelModel {
    ChannelKind kind;
    double ue_gain;  // H (AWGN)
    double jam_gain;  // G (AWGN)
    double ue_var;   // sigma_h^2 (Rayleigh)
    double jam_var;  // sigma_g^2 (Rayleigh)

    static ChannelModel awgn(double ue_gain = 1.0, double jam_gain = 1.0);
    static ChannelModel rayleigh(double ue_var = 1.0, double jam_var = 1.0);

    // Average channel energies E_h, E_g seen by long-run KPIs.
    double avg_ue_energy() const;
    double avg_jam_energy() const;
};

// Per-PRB complex gains, constant over the slot (block fading). AWGN
// realizations replicate the constant gains.
struct ChannelRealization {
    std::vector<std::complex<double>> ue_gains;
    std::vector<std::complex<double>> jam_gains;
};

struct PowerProfile {
    double ue_total;   // P_UE per symbol
    double jam_total;  // P_J per symbol

    static PowerProfile from_snr_db(const SlotConfig& cfg, double snr_ue_db, double snr_j_db);

    double snr_ue_db(const SlotConfig& cfg) const;
    double snr_j_db(const SlotConfig& cfg) const;

    // The UE concentrates its symbol budget on the data subcarriers.
    double ue_power_per_data_subcarrier(const SlotConfig& cfg, int blanked_per_symbol) const;
    // The jammer splits its symbol budget evenly over the jammed subcarriers.
    double jam_power_per_jammed_subcarrier(int jammed_per_symbol) const;
};

// Pseudo-random blanking pattern, a pure function of (key, slot_index,
// symbol_index): the BS/UE shared-secret contract. symbol_index only matters
// at RE granularity, where patterns are redrawn per symbol.
PatternSet draw_blanking(const SlotConfig& cfg, int blank_count, std::uint64_t key,
                         std::uint64_t slot_index, int symbol_index = 0);

// Uniform random jamming pattern from the caller's stream, independent of the
// blanking key.
PatternSet draw_jam_pattern(const SlotConfig& cfg, int jam_count, RandomStream& rng);

ChannelRealization realize_channel(const ChannelModel& model, const SlotConfig& cfg,
                                   RandomStream& rng);

// Received samples on the blanked REs: noise everywhere, plus the jammer
// contribution where the patterns overlap. No UE contribution (blanked).
// PRB granularity covers the whole slot (cardinality * S_P * N samples);
// RE granularity covers one symbol (cardinality samples).
std::vector<std::complex<double>> received_blanked_samples(
    const SlotConfig& cfg, const PatternSet& blanking, const PatternSet& jamming,
    const ChannelRealization& realization, const PowerProfile& profile, RandomStream& rng);

// RE-level overlap count between a blanking and a jamming pattern; PRB
// patterns scale by S_P * N, RE patterns count one symbol's intersection.
int overlap_re_count(const SlotConfig& cfg, const PatternSet& blanking, const PatternSet& jamming);

}  // namespace jamguard::airlink
