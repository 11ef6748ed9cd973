// SPDX-License-Identifier: Apache-2.0

#ifndef RANSCOPE_LINK_SIM_HPP
#define RANSCOPE_LINK_SIM_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "ranscope/bsr.hpp"
#include "ranscope/rng.hpp"
#include "ranscope/scenario.hpp"
#include "ranscope/types.hpp"

namespace ranscope {

/// Per-packet lifecycle timestamps. For downlink packets t_mac_enqueue
/// equals t_app_send (there is no UE-side uplink queue on that path).
struct PacketRecord {
    std::int64_t pkt_id = 0;
    Direction direction = Direction::kDownlink;
    int size_bytes = 0;
    MicrosT t_app_send = 0;
    MicrosT t_mac_enqueue = 0;
    MicrosT t_phy_first_tx = 0;
    MicrosT t_delivered = 0;

    [[nodiscard]] MicrosT owd_us() const { return t_delivered - t_app_send; }
    /// Uplink scheduling-buffer residence (T_U).
    [[nodiscard]] MicrosT t_u_us() const { return t_phy_first_tx - t_mac_enqueue; }
};

/// One retransmission event. Timestamps are referenced to the delivery
/// point: start_us is when the errored PDU would have been handed up, and
/// end_us is when the buffer actually released, so duration_us is exactly
/// T_M (MAC) or the drawn T_R (RLC).
struct RetxEvent {
    enum class Layer { kMac, kRlc };

    std::int64_t id = 0;
    Layer layer = Layer::kMac;
    Direction direction = Direction::kDownlink;
    MicrosT start_us = 0;
    MicrosT end_us = 0;

    [[nodiscard]] MicrosT duration_us() const { return end_us - start_us; }
};

[[nodiscard]] constexpr const char* to_string(RetxEvent::Layer layer) noexcept {
    return layer == RetxEvent::Layer::kMac ? "mac" : "rlc";
}

/// Counters accumulated over one run. MAC ratios are per eligible
/// transmission: PDUs sent while a hold is open cannot start a new event
/// and therefore draw no error.
struct SimStats {
    std::int64_t pdu_tx_dl = 0;
    std::int64_t pdu_tx_ul = 0;
    std::int64_t mac_draws_dl = 0;
    std::int64_t mac_draws_ul = 0;
    std::int64_t mac_errors_dl = 0;
    std::int64_t mac_errors_ul = 0;
    std::int64_t rlc_events_dl = 0;
    std::int64_t rlc_events_ul = 0;
    std::int64_t grants = 0;
    std::int64_t overalloc_grants = 0;

    [[nodiscard]] double mper_dl() const {
        return mac_draws_dl > 0 ? static_cast<double>(mac_errors_dl) / mac_draws_dl : 0.0;
    }
    [[nodiscard]] double mper_ul() const {
        return mac_draws_ul > 0 ? static_cast<double>(mac_errors_ul) / mac_draws_ul : 0.0;
    }
};

/// Everything one run produces. Packets are ordered by pkt_id, events by
/// start time, BSR entries by report time.
struct TraceBundle {
    std::vector<PacketRecord> packets;
    std::vector<RetxEvent> events;
    std::vector<BsrLogEntry> bsr_log;
    SimStats stats;
    std::uint64_t scenario_fingerprint = 0;
    bool events_suppressed = false;
};

/// A completed delivery surfaced to a closed-loop driver. ack_of carries
/// the data packet a 40-byte ack acknowledges, when applicable.
struct Delivery {
    PacketRecord record;
    std::optional<std::int64_t> ack_of;
};

/// TTI-stepped deterministic simulator of one UE <-> base-station link:
/// MAC HARQ and RLC ARQ with in-order release on both directions, the
/// BSR-driven uplink scheduling buffer, and a wired FIFO bottleneck.
///
/// A run is strictly single-threaded; distinct instances are independent.
class LinkSimulator {
public:
    struct Options {
        /// Replay mode: identical arrivals and scheduling, but no MAC or
        /// RLC events ever open (error draws forced to miss).
        bool suppress_events = false;
        /// Disable the built-in open-loop sources (closed-loop drivers
        /// inject traffic themselves).
        bool open_loop_sources = true;
    };

    explicit LinkSimulator(LinkScenario scenario, Options options = {});

    /// Advances exactly one TTI. Returns the slot start time processed.
    MicrosT step();

    /// Start of the next unprocessed TTI.
    [[nodiscard]] MicrosT now() const { return next_tti_start_; }

    /// True once every injected packet has been delivered and no open-loop
    /// arrival remains.
    [[nodiscard]] bool drained() const;

    /// Queue an application packet. t_send must be >= now().
    void inject(Direction dir, int size_bytes, MicrosT t_send);

    /// Deliveries finalized since the previous call, ordered by delivery
    /// time (ties by pkt_id).
    std::vector<Delivery> drain_deliveries();

    /// Events completed (end_us reached) since the previous call.
    std::vector<RetxEvent> drain_completed_events();

    [[nodiscard]] const LinkScenario& scenario() const { return scenario_; }
    [[nodiscard]] const SimStats& stats() const { return stats_; }

    /// Runs the scenario's open-loop traffic to completion.
    TraceBundle run();

private:
    struct Packet {
        std::int64_t pkt_id = 0;
        Direction direction = Direction::kDownlink;
        int size_bytes = 0;
        MicrosT t_app_send = 0;
        MicrosT t_mac_enqueue = 0;
        MicrosT t_phy_first_tx = -1;
        std::optional<std::int64_t> ack_of;
    };

    struct Grant {
        MicrosT exec_us = 0;
        std::int64_t amount_bytes = 0;
    };

    struct DirState {
        // Receiver-side retransmission buffer: open hold window.
        bool hold_open = false;
        MicrosT hold_start = 0;
        MicrosT hold_end = 0;
        RetxEvent::Layer hold_layer = RetxEvent::Layer::kMac;
        std::vector<Packet> held;
        MicrosT last_release_end = -1;
        // Next pending RLC trigger instant.
        MicrosT next_rlc_trigger = 0;
        bool rlc_enabled = false;
    };

    // Wired FIFO bottleneck; service time scales with packet size relative
    // to mss_bytes. Added-queuing waveforms fold into the virtual finish
    // time so FIFO order is preserved.
    struct FluidQueue {
        double virtual_done_us = 0.0;
        double service_us_per_mss = 0.0;

        MicrosT admit(MicrosT arrival_us, int size_bytes, int mss_bytes, double extra_us);
    };

    void generate_arrivals(MicrosT horizon);
    void ensure_next_arrival(Direction dir);
    void process_enqueues(MicrosT until);
    void bsr_tick(MicrosT t);
    void exec_grants(MicrosT slot_start, int slot_index);
    void serve_downlink(MicrosT slot_start, int slot_index);
    void ran_arrival(Direction dir, Packet pkt, MicrosT arrival_us);
    void release_hold(Direction dir);
    void deliver(Direction dir, Packet pkt, MicrosT ran_release_us);
    void open_mac_hold(Direction dir, MicrosT would_deliver, MicrosT t_m_us);
    bool maybe_open_rlc_hold(Direction dir, MicrosT arrival_us);
    void flush_due_releases(MicrosT until);
    [[nodiscard]] int slot_of(MicrosT t) const;
    [[nodiscard]] bool data_capable(Direction dir, int slot_index) const;
    [[nodiscard]] MicrosT choose_drain_slot(MicrosT bsr_us);

    LinkScenario scenario_;
    Options options_;
    MicrosT tti_ = 0;
    MicrosT frame_us_ = 0;
    MicrosT duration_us_ = 0;
    MicrosT bsr_epoch_ = 0;
    MicrosT next_tti_start_ = 0;

    RngStream arrivals_dl_;
    RngStream arrivals_ul_;
    RngStream mac_dl_;
    RngStream mac_ul_;
    RngStream rlc_dl_;
    RngStream rlc_ul_;
    RngStream grant_rng_;
    RngStream overalloc_rng_;

    std::int64_t next_pkt_id_ = 0;
    std::int64_t next_event_id_ = 0;

    // Open-loop generators.
    std::optional<MicrosT> next_arrival_dl_;
    std::optional<MicrosT> next_arrival_ul_;

    // Injected-but-not-yet-enqueued packets, ordered by send time.
    std::deque<Packet> pending_sends_;

    // Downlink: wired queue then base-station MAC queue.
    FluidQueue wired_dl_;
    std::deque<std::pair<MicrosT, Packet>> bs_queue_; // (ready time, packet)

    // Uplink: UE MAC buffer, granted amounts, wired queue to the server.
    std::deque<Packet> ue_queue_;
    std::int64_t ue_buffer_bytes_ = 0;
    std::int64_t pending_grant_bytes_ = 0;
    std::deque<Grant> grants_;
    FluidQueue wired_ul_;
    MicrosT next_bsr_ = 0;

    DirState dl_state_;
    DirState ul_state_;

    // Finalized deliveries not yet drained.
    std::vector<Delivery> finished_;
    std::vector<RetxEvent> completed_events_;

    SimStats stats_;
    std::vector<RetxEvent> event_log_;
    std::vector<BsrLogEntry> bsr_log_;
    std::int64_t undelivered_ = 0;
};

/// Full deterministic run of a validated scenario.
[[nodiscard]] TraceBundle run_trace(const LinkScenario& scenario);

/// Re-runs the trace's scenario with every retransmission event suppressed,
/// yielding each packet's no-error delay. Requires an open-loop scenario
/// (closed-loop ack timing would change arrivals); throws ReplayMismatchError
/// when the trace does not match the scenario.
[[nodiscard]] std::vector<PacketRecord> counterfactual_replay(const LinkScenario& scenario,
                                                              const TraceBundle& trace);

} // namespace ranscope

#endif // RANSCOPE_LINK_SIM_HPP
