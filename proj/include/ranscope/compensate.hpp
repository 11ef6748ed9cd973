// SPDX-License-Identifier: Apache-2.0

#ifndef RANSCOPE_COMPENSATE_HPP
#define RANSCOPE_COMPENSATE_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ranscope/delay_series.hpp"
#include "ranscope/link_sim.hpp"
#include "ranscope/types.hpp"

namespace ranscope {

struct CompensateOptions {
    /// Burst membership window around an event's release instant. One TTI
    /// absorbs timestamp quantization; deliveries are exact in simulation.
    MicrosT burst_tol_us = 1000;
    /// Optional lower bound for corrected delays (e.g. propagation floor).
    std::optional<MicrosT> floor_us;
};

struct CompensationResult {
    DelaySeries series;
    /// Events skipped because no packet sent before the event start was
    /// delivered at its end.
    std::vector<std::int64_t> unmatched_event_ids;
};

/// Removes retransmission-event delay inflation from a series.
///
/// Per event: the error packet (delivered at the event end, transmitted
/// before the event start; the earliest-sent such packet) has the event
/// duration subtracted from its delay, and every other packet released in
/// the same instant is set to that corrected delay. Packets outside events
/// are untouched; ordering is preserved. Unmatched events are reported and
/// skipped.
///
/// Events must be non-overlapping per layer and direction, with timestamps
/// on the same clock as the series (run synchronize() first otherwise).
[[nodiscard]] CompensationResult compensate_retx(const DelaySeries& series,
                                                 const std::vector<RetxEvent>& events,
                                                 const CompensateOptions& options = {});

/// A retransmission signature found from packet timing alone: an idle
/// period followed by a burst of near-simultaneous arrivals whose first
/// packet carries roughly one retransmission delay of extra latency.
struct CandidateEvent {
    MicrosT gap_start_us = 0; // last arrival before the idle period
    MicrosT burst_us = 0;     // release instant
    MicrosT est_duration_us = 0;
    std::vector<std::int64_t> member_pkt_ids;
};

struct DetectOptions {
    /// Idle-period threshold as a fraction of the expected delay.
    double gap_frac = 0.8;
    /// Burst window after the gap; also the minimum-arrivals window.
    MicrosT burst_window_us = 1000;
    /// Local-median window used as the delay baseline.
    MicrosT median_window_us = 200000;
};

/// Packet-side candidate detection. Deterministic; an empty result is
/// valid. False positives are tolerated downstream (synchronization needs
/// only enough true matches).
[[nodiscard]] std::vector<CandidateEvent> detect_candidate_events(const DelaySeries& series,
                                                                  MicrosT expected_tm_us,
                                                                  MicrosT tol_us,
                                                                  const DetectOptions& options = {});

/// Result of aligning packet-identified candidates with reported events.
struct SyncResult {
    MicrosT shift_us = 0;
    double match_ratio = 0.0;
    /// (candidate index, reported-event index) pairs at the best shift.
    std::vector<std::pair<std::size_t, std::size_t>> matched_pairs;
};

struct SyncOptions {
    MicrosT max_shift_us = 500000;
    MicrosT granularity_us = 1000;
    MicrosT match_tol_us = 2000;
    double min_usable_ratio = 0.2;
};

/// Exhaustive shift scan maximizing the ratio of reported events matched by
/// candidates; ties broken by smallest |shift|, then smallest shift. Throws
/// NoOverlapError when the best ratio is below min_usable_ratio (caller
/// falls back to uncompensated handling).
[[nodiscard]] SyncResult synchronize(const std::vector<CandidateEvent>& candidates,
                                     const std::vector<RetxEvent>& reported,
                                     const SyncOptions& options = {});

} // namespace ranscope

#endif // RANSCOPE_COMPENSATE_HPP
