// SPDX-License-Identifier: Apache-2.0

#ifndef RANSCOPE_SCENARIO_HPP
#define RANSCOPE_SCENARIO_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ranscope/frame_timing.hpp"
#include "ranscope/types.hpp"

namespace ranscope {

/// Cross-traffic / added-queuing waveform at the wired bottleneck. All
/// shapes are low-frequency by contract (congestion dynamics live well
/// below the BSR-driven band).
struct CongestionProfile {
    enum class Kind { kNone, kSine, kStep, kOnOff };

    Kind kind = Kind::kNone;
    double amplitude_us = 0.0; // peak added queuing delay
    double freq_hz = 0.0;      // sine / on-off frequency, <= 1 Hz
    double duty = 0.5;         // on-off duty cycle
    MicrosT t_on_us = 0;       // step window start
    MicrosT t_off_us = 0;      // step window end; 0 = never ends
    bool apply_dl = true;
    bool apply_ul = false;

    /// Added queuing delay seen by a packet entering the bottleneck at t.
    [[nodiscard]] double added_delay_us(MicrosT t) const;
};

/// Open-loop application traffic for one direction.
struct AppTraffic {
    double rate_mbps = 0.0; // 0 = no open-loop source
    int pkt_bytes = 1400;

    enum class Gap { kUniform, kExponential };
    Gap gap = Gap::kUniform;
    double gap_spread = 0.5; // uniform: gap = mean * (1 +/- spread)
};

/// Full description of one UE <-> base-station link run.
struct LinkScenario {
    FrameConfig frame = FrameConfig::lte();
    RetxTimingTable timing = RetxTimingTable::lte();

    // MAC PDU error probabilities per transmission.
    double p_mac_dl = 0.0554;
    double p_mac_ul = 0.08;

    // RLC retransmission events: Poisson arrivals, uniform duration.
    double rlc_event_rate_dl_per_s = 0.2;
    double rlc_event_rate_ul_per_s = 0.2;
    MicrosT rlc_delay_min_us = 60000;
    MicrosT rlc_delay_max_us = 100000;

    // Uplink scheduling.
    MicrosT t_bsr_us = 5000;
    double grant_target_frac = 1.5;  // nominal (t_r + K2) as fraction of T_bsr
    double grant_jitter_frac = 0.0;  // +/- fraction of T_bsr, clamped in band
    double overalloc_prob = 0.05;

    // Wired path.
    double capacity_pps = 100000.0; // bottleneck service rate, MSS-sized packets
    int mss_bytes = 1400;           // reference size for capacity normalization
    MicrosT prop_delay_us = 10000;  // one-way wired propagation
    CongestionProfile congestion;

    // Traffic.
    AppTraffic app_dl;
    AppTraffic app_ul;
    bool acks_enabled = false; // receiver answers DL data with UL acks
    int ack_bytes = 40;

    // Run control.
    std::uint64_t seed = 1;
    double duration_s = 30.0;

    /// Throws ConfigError when any invariant fails; returns *this otherwise.
    const LinkScenario& validate() const;

    /// Integer TTI in microseconds (validated).
    [[nodiscard]] MicrosT tti() const;

    /// First uplink-capable slot boundary; anchor of the BSR grid.
    [[nodiscard]] MicrosT bsr_epoch_us() const;

    /// Stable fingerprint of every field that shapes the trace; used to
    /// reject replay against the wrong scenario.
    [[nodiscard]] std::uint64_t fingerprint() const;
};

/// Pure form of the uplink scheduling law: buffer residence time for a
/// packet entering the UE MAC queue at arrival_us given the BSR grid
/// (epoch + period) and a fixed grant latency x = t_r + K2 in microseconds.
/// Continuous-transmission regime without over-allocation.
[[nodiscard]] MicrosT uplink_buffer_delay(MicrosT arrival_us, MicrosT bsr_epoch_us,
                                          MicrosT t_bsr_us, MicrosT grant_latency_us);

/// Sectioned key=value scenario files ([link], [mac], [rlc], [bsr],
/// [congestion], [run]); '#' comments. Unknown keys are errors.
LinkScenario load_scenario(std::istream& in, const std::string& origin);
LinkScenario load_scenario_file(const std::string& path);
void save_scenario(const LinkScenario& scenario, std::ostream& out);

/// Built-in named scenarios (documented in the README):
///   fig10-lte, fig10-5g, copa-static, pcc-static, gcc-jitter
[[nodiscard]] LinkScenario builtin_scenario(const std::string& name);
[[nodiscard]] std::vector<std::string> builtin_scenario_names();

/// Resolves a CLI argument: built-in name first, then filesystem path.
[[nodiscard]] LinkScenario resolve_scenario(const std::string& name_or_path);

} // namespace ranscope

#endif // RANSCOPE_SCENARIO_HPP
