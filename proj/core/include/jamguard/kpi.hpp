#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "jamguard/airlink.hpp"

// System KPIs: per-RE SINR, spectral efficiency, finite-blocklength BLER.

namespace jamguard::kpi {

struct PacketSpec {
    double rate;           // rho, bit/s/Hz
    int channel_uses;      // C, REs per packet
    int packets_per_slot;  // F

    PacketSpec(double rate, int channel_uses, int packets_per_slot = 1);
    // One packet per PRB at rho = 0.48.
    static PacketSpec default_urllc(const airlink::SlotConfig& cfg);
};

// P_ue * |h|^2 / (sigma_w^2 + P_jam * |g|^2), powers per subcarrier.
double sinr_re(double ue_power, std::complex<double> ue_gain, double jam_power,
               std::complex<double> jam_gain, double noise_power);

// V = (log2 e)^2 * (1 - (1 + SINR)^-2).
double channel_dispersion(double sinr);

// Normal approximation of the finite-blocklength error probability:
// Q([log2(1+SINR) - rate] * sqrt(C/V)). SINR = 0 gives 1.
double bler_packet(double sinr, const PacketSpec& spec);

// Mean-capacity-equivalent SINR of a packet: 2^mean(log2(1+SINR_i)) - 1.
double sinr_packet(std::span<const double> re_sinrs);

// Single-slot evaluations for fixed patterns and a fixed channel realization.
// At RE granularity the patterns describe one OFDM symbol.
double slot_spectral_efficiency(const airlink::SlotConfig& cfg, const airlink::PatternSet& blanking,
                                const airlink::PatternSet& jamming,
                                const airlink::ChannelRealization& realization,
                                const airlink::PowerProfile& profile);
double slot_bler(const airlink::SlotConfig& cfg, const airlink::PatternSet& blanking,
                 const airlink::PatternSet& jamming,
                 const airlink::ChannelRealization& realization,
                 const airlink::PowerProfile& profile, const PacketSpec& spec);

struct KpiEstimate {
    double value;
    double stderr_value;
    std::uint64_t trials;
};

// Monte Carlo averages with blanking, jamming, and channel redrawn per slot.
KpiEstimate spectral_efficiency(const airlink::SlotConfig& cfg, int blank_count, int jam_count,
                                const airlink::ChannelModel& model,
                                const airlink::PowerProfile& profile, std::uint64_t trials,
                                std::uint64_t seed, std::uint64_t blanking_key = 0,
                                unsigned workers = 0);
KpiEstimate slot_bler_mc(const airlink::SlotConfig& cfg, int blank_count, int jam_count,
                         const airlink::ChannelModel& model, const airlink::PowerProfile& profile,
                         const PacketSpec& spec, std::uint64_t trials, std::uint64_t seed,
                         std::uint64_t blanking_key = 0, unsigned workers = 0);

}  // namespace jamguard::kpi
