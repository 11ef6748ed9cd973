// SPDX-License-Identifier: Apache-2.0

#include "ranscope/link_sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ranscope {

namespace {

// Release buffered deliveries to a driver only once simulation time has
// passed them; holds back nothing in batch runs.
struct DeliveryOrder {
    bool operator()(const Delivery& a, const Delivery& b) const {
        if (a.record.t_delivered != b.record.t_delivered) {
            return a.record.t_delivered < b.record.t_delivered;
        }
        return a.record.pkt_id < b.record.pkt_id;
    }
};

} // namespace

MicrosT LinkSimulator::FluidQueue::admit(MicrosT arrival_us, int size_bytes, int mss_bytes,
                                         double extra_us) {
    const double service =
        service_us_per_mss * static_cast<double>(size_bytes) / static_cast<double>(mss_bytes);
    const double begin = std::max(static_cast<double>(arrival_us), virtual_done_us);
    const double exit = begin + service + extra_us;
    virtual_done_us = exit;
    return static_cast<MicrosT>(std::llround(exit));
}

LinkSimulator::LinkSimulator(LinkScenario scenario, Options options)
    : scenario_(std::move(scenario)),
      options_(options),
      arrivals_dl_(scenario_.seed, rng_tag::kArrivalsDl),
      arrivals_ul_(scenario_.seed, rng_tag::kArrivalsUl),
      mac_dl_(scenario_.seed, rng_tag::kMacErrorDl),
      mac_ul_(scenario_.seed, rng_tag::kMacErrorUl),
      rlc_dl_(scenario_.seed, rng_tag::kRlcDl),
      rlc_ul_(scenario_.seed, rng_tag::kRlcUl),
      grant_rng_(scenario_.seed, rng_tag::kGrant),
      overalloc_rng_(scenario_.seed, rng_tag::kOveralloc) {
    scenario_.validate();
    tti_ = scenario_.tti();
    frame_us_ = tti_ * scenario_.frame.slots_per_frame();
    duration_us_ = static_cast<MicrosT>(std::llround(scenario_.duration_s * 1e6));
    bsr_epoch_ = scenario_.bsr_epoch_us();
    next_bsr_ = bsr_epoch_;

    const double service_mss_us = 1e6 / scenario_.capacity_pps;
    wired_dl_.service_us_per_mss = service_mss_us;
    wired_ul_.service_us_per_mss = service_mss_us;

    dl_state_.rlc_enabled =
        scenario_.rlc_event_rate_dl_per_s > 0.0 && !options_.suppress_events;
    ul_state_.rlc_enabled =
        scenario_.rlc_event_rate_ul_per_s > 0.0 && !options_.suppress_events;
    if (dl_state_.rlc_enabled) {
        dl_state_.next_rlc_trigger = static_cast<MicrosT>(
            std::llround(rlc_dl_.exponential(1e6 / scenario_.rlc_event_rate_dl_per_s)));
    }
    if (ul_state_.rlc_enabled) {
        ul_state_.next_rlc_trigger = static_cast<MicrosT>(
            std::llround(rlc_ul_.exponential(1e6 / scenario_.rlc_event_rate_ul_per_s)));
    }
    if (options_.open_loop_sources) {
        ensure_next_arrival(Direction::kDownlink);
        ensure_next_arrival(Direction::kUplink);
    }
}

int LinkSimulator::slot_of(MicrosT t) const {
    return static_cast<int>((t / tti_) % static_cast<MicrosT>(scenario_.frame.slots_per_frame()));
}

bool LinkSimulator::data_capable(Direction dir, int slot_index) const {
    if (scenario_.frame.rat() == Rat::kLte) return true;
    const SlotRole role = scenario_.frame.slot_role(slot_index);
    if (dir == Direction::kDownlink) {
        return role == SlotRole::kDownlink || role == SlotRole::kFlexible;
    }
    return role == SlotRole::kUplink;
}

void LinkSimulator::ensure_next_arrival(Direction dir) {
    const AppTraffic& app =
        dir == Direction::kDownlink ? scenario_.app_dl : scenario_.app_ul;
    auto& next = dir == Direction::kDownlink ? next_arrival_dl_ : next_arrival_ul_;
    auto& rng = dir == Direction::kDownlink ? arrivals_dl_ : arrivals_ul_;
    if (app.rate_mbps <= 0.0) {
        next.reset();
        return;
    }
    const double mean_gap_us = static_cast<double>(app.pkt_bytes) * 8.0 / app.rate_mbps;
    double gap_us;
    if (app.gap == AppTraffic::Gap::kUniform) {
        gap_us = mean_gap_us * (1.0 + app.gap_spread * (2.0 * rng.uniform01() - 1.0));
    } else {
        gap_us = rng.exponential(mean_gap_us);
    }
    const MicrosT base = next.value_or(0);
    const MicrosT t = base + std::max<MicrosT>(1, static_cast<MicrosT>(std::llround(gap_us)));
    if (t >= duration_us_) {
        next.reset();
        return;
    }
    next = t;
}

void LinkSimulator::generate_arrivals(MicrosT horizon) {
    if (!options_.open_loop_sources) return;
    for (const Direction dir : {Direction::kDownlink, Direction::kUplink}) {
        auto& next = dir == Direction::kDownlink ? next_arrival_dl_ : next_arrival_ul_;
        const AppTraffic& app =
            dir == Direction::kDownlink ? scenario_.app_dl : scenario_.app_ul;
        while (next && *next <= horizon) {
            Packet pkt;
            pkt.direction = dir;
            pkt.size_bytes = app.pkt_bytes;
            pkt.t_app_send = *next;
            pending_sends_.push_back(pkt);
            ++undelivered_;
            ensure_next_arrival(dir);
        }
    }
    std::stable_sort(pending_sends_.begin(), pending_sends_.end(),
                     [](const Packet& a, const Packet& b) { return a.t_app_send < b.t_app_send; });
}

void LinkSimulator::inject(Direction dir, int size_bytes, MicrosT t_send) {
    if (t_send < next_tti_start_) {
        throw ConfigError("inject before current simulation time");
    }
    Packet pkt;
    pkt.direction = dir;
    pkt.size_bytes = size_bytes;
    pkt.t_app_send = t_send;
    pending_sends_.push_back(pkt);
    std::stable_sort(pending_sends_.begin(), pending_sends_.end(),
                     [](const Packet& a, const Packet& b) { return a.t_app_send < b.t_app_send; });
    ++undelivered_;
}

void LinkSimulator::process_enqueues(MicrosT until) {
    while (!pending_sends_.empty() && pending_sends_.front().t_app_send <= until) {
        Packet pkt = pending_sends_.front();
        pending_sends_.pop_front();
        pkt.pkt_id = next_pkt_id_++;
        if (pkt.direction == Direction::kDownlink) {
            pkt.t_mac_enqueue = pkt.t_app_send;
            const double extra = scenario_.congestion.apply_dl
                                     ? scenario_.congestion.added_delay_us(pkt.t_app_send)
                                     : 0.0;
            const MicrosT exit =
                wired_dl_.admit(pkt.t_app_send, pkt.size_bytes, scenario_.mss_bytes, extra);
            bs_queue_.emplace_back(exit + scenario_.prop_delay_us, pkt);
        } else {
            pkt.t_mac_enqueue = pkt.t_app_send;
            ue_queue_.push_back(pkt);
            ue_buffer_bytes_ += pkt.size_bytes;
        }
    }
}

void LinkSimulator::open_mac_hold(Direction dir, MicrosT would_deliver, MicrosT t_m_us) {
    DirState& st = dir == Direction::kDownlink ? dl_state_ : ul_state_;
    st.hold_open = true;
    st.hold_start = would_deliver;
    st.hold_end = would_deliver + t_m_us;
    st.hold_layer = RetxEvent::Layer::kMac;
    RetxEvent ev;
    ev.id = next_event_id_++;
    ev.layer = RetxEvent::Layer::kMac;
    ev.direction = dir;
    ev.start_us = st.hold_start;
    ev.end_us = st.hold_end;
    event_log_.push_back(ev);
    auto& errors = dir == Direction::kDownlink ? stats_.mac_errors_dl : stats_.mac_errors_ul;
    ++errors;
}

bool LinkSimulator::maybe_open_rlc_hold(Direction dir, MicrosT arrival_us) {
    DirState& st = dir == Direction::kDownlink ? dl_state_ : ul_state_;
    if (!st.rlc_enabled || st.hold_open) return false;
    if (st.next_rlc_trigger > arrival_us) return false;
    // Never chain a new hold onto a release instant: the packets arriving
    // there were already buffered once.
    if (arrival_us == st.last_release_end) return false;
    auto& rng = dir == Direction::kDownlink ? rlc_dl_ : rlc_ul_;
    const double rate = dir == Direction::kDownlink ? scenario_.rlc_event_rate_dl_per_s
                                                    : scenario_.rlc_event_rate_ul_per_s;
    const MicrosT duration = static_cast<MicrosT>(
        std::llround(rng.uniform(static_cast<double>(scenario_.rlc_delay_min_us),
                                 static_cast<double>(scenario_.rlc_delay_max_us))));
    st.hold_open = true;
    st.hold_start = arrival_us;
    st.hold_end = arrival_us + duration;
    st.hold_layer = RetxEvent::Layer::kRlc;
    st.next_rlc_trigger += static_cast<MicrosT>(std::llround(rng.exponential(1e6 / rate)));
    RetxEvent ev;
    ev.id = next_event_id_++;
    ev.layer = RetxEvent::Layer::kRlc;
    ev.direction = dir;
    ev.start_us = st.hold_start;
    ev.end_us = st.hold_end;
    event_log_.push_back(ev);
    auto& count = dir == Direction::kDownlink ? stats_.rlc_events_dl : stats_.rlc_events_ul;
    ++count;
    return true;
}

void LinkSimulator::ran_arrival(Direction dir, Packet pkt, MicrosT arrival_us) {
    DirState& st = dir == Direction::kDownlink ? dl_state_ : ul_state_;
    if (st.hold_open && arrival_us >= st.hold_start && arrival_us < st.hold_end) {
        st.held.push_back(pkt);
        return;
    }
    if (maybe_open_rlc_hold(dir, arrival_us)) {
        st.held.push_back(pkt);
        return;
    }
    deliver(dir, pkt, arrival_us);
}

void LinkSimulator::release_hold(Direction dir) {
    DirState& st = dir == Direction::kDownlink ? dl_state_ : ul_state_;
    const MicrosT end = st.hold_end;
    std::vector<Packet> held;
    held.swap(st.held);
    st.hold_open = false;
    st.last_release_end = end;
    // In-order: buffered PDUs go up together, lowest pkt_id first.
    std::sort(held.begin(), held.end(),
              [](const Packet& a, const Packet& b) { return a.pkt_id < b.pkt_id; });
    for (auto& pkt : held) {
        deliver(dir, pkt, end);
    }
    for (auto& ev : event_log_) {
        if (ev.end_us == end && ev.direction == dir) {
            completed_events_.push_back(ev);
        }
    }
}

void LinkSimulator::flush_due_releases(MicrosT until) {
    // Two holds at most (one per direction); close them in end order.
    while (true) {
        DirState* next_st = nullptr;
        Direction next_dir = Direction::kDownlink;
        for (const Direction dir : {Direction::kDownlink, Direction::kUplink}) {
            DirState& st = dir == Direction::kDownlink ? dl_state_ : ul_state_;
            if (st.hold_open && st.hold_end <= until) {
                if (next_st == nullptr || st.hold_end < next_st->hold_end) {
                    next_st = &st;
                    next_dir = dir;
                }
            }
        }
        if (next_st == nullptr) break;
        release_hold(next_dir);
    }
}

void LinkSimulator::deliver(Direction dir, Packet pkt, MicrosT ran_release_us) {
    PacketRecord rec;
    rec.pkt_id = pkt.pkt_id;
    rec.direction = dir;
    rec.size_bytes = pkt.size_bytes;
    rec.t_app_send = pkt.t_app_send;
    rec.t_mac_enqueue = pkt.t_mac_enqueue;
    rec.t_phy_first_tx = pkt.t_phy_first_tx;
    if (dir == Direction::kDownlink) {
        // The UE application sits right above the RAN release point.
        rec.t_delivered = ran_release_us;
    } else {
        const double extra = scenario_.congestion.apply_ul
                                 ? scenario_.congestion.added_delay_us(ran_release_us)
                                 : 0.0;
        const MicrosT exit =
            wired_ul_.admit(ran_release_us, pkt.size_bytes, scenario_.mss_bytes, extra);
        rec.t_delivered = exit + scenario_.prop_delay_us;
    }
    Delivery delivery{rec, pkt.ack_of};
    finished_.push_back(delivery);
    --undelivered_;

    if (scenario_.acks_enabled && dir == Direction::kDownlink && !pkt.ack_of.has_value()) {
        Packet ack;
        ack.direction = Direction::kUplink;
        ack.size_bytes = scenario_.ack_bytes;
        ack.t_app_send = rec.t_delivered;
        ack.ack_of = rec.pkt_id;
        pending_sends_.push_back(ack);
        std::stable_sort(
            pending_sends_.begin(), pending_sends_.end(),
            [](const Packet& a, const Packet& b) { return a.t_app_send < b.t_app_send; });
        ++undelivered_;
    }
}

MicrosT LinkSimulator::choose_drain_slot(MicrosT bsr_us) {
    const MicrosT t_bsr = scenario_.t_bsr_us;
    const double jitter =
        scenario_.grant_jitter_frac * (2.0 * grant_rng_.uniform01() - 1.0);
    double target_frac = scenario_.grant_target_frac + jitter;
    // Keep t_r + K2 strictly inside [T_bsr, 2*T_bsr) so interval-i traffic
    // departs in interval i+2.
    double target_us = target_frac * static_cast<double>(t_bsr);
    target_us = std::clamp(target_us, static_cast<double>(t_bsr),
                           static_cast<double>(2 * t_bsr - tti_));
    const MicrosT lo = bsr_us + t_bsr;
    const MicrosT hi = bsr_us + 2 * t_bsr - tti_;
    const double want = static_cast<double>(bsr_us) + target_us;
    MicrosT best = -1;
    double best_dist = 0.0;
    for (MicrosT t = lo; t <= hi; t += tti_) {
        if (!data_capable(Direction::kUplink, slot_of(t))) continue;
        const double dist = std::abs(static_cast<double>(t) - want);
        if (best < 0 || dist < best_dist) {
            best = t;
            best_dist = dist;
        }
    }
    if (best < 0) {
        throw ConfigError("no uplink slot in the grant window (validated scenario?)");
    }
    return best;
}

void LinkSimulator::bsr_tick(MicrosT t) {
    // Ground-truth entry for every report while traffic is in the window.
    const std::int64_t buffer = ue_buffer_bytes_;
    const BsrQuant quant = quantize_bsr(buffer);
    if (t <= duration_us_ || buffer > 0) {
        BsrLogEntry entry;
        entry.t_report_us = t;
        entry.index = quant.index;
        entry.range_low_bytes = quant.range_low_bytes;
        entry.range_high_bytes = quant.range_high_bytes;
        entry.true_buffer_bytes = buffer;
        bsr_log_.push_back(entry);
    }
    if (buffer <= 0) return;

    const bool overalloc =
        scenario_.overalloc_prob > 0.0 && overalloc_rng_.bernoulli(scenario_.overalloc_prob);
    std::int64_t amount;
    if (overalloc) {
        // The grant follows the report's upper range bound instead of the
        // scheduler's running estimate, flushing the buffer.
        const std::int64_t cap = buffer + (1 << 20);
        amount = std::min(quant.range_high_bytes, cap) - pending_grant_bytes_;
    } else {
        amount = buffer - pending_grant_bytes_;
    }
    if (amount <= 0) return;
    Grant grant;
    grant.exec_us = choose_drain_slot(t);
    grant.amount_bytes = amount;
    pending_grant_bytes_ += amount;
    grants_.push_back(grant);
    std::sort(grants_.begin(), grants_.end(),
              [](const Grant& a, const Grant& b) { return a.exec_us < b.exec_us; });
    ++stats_.grants;
    if (overalloc) ++stats_.overalloc_grants;
}

void LinkSimulator::exec_grants(MicrosT slot_start, int slot_index) {
    std::int64_t budget = 0;
    while (!grants_.empty() && grants_.front().exec_us == slot_start) {
        budget += grants_.front().amount_bytes;
        pending_grant_bytes_ -= grants_.front().amount_bytes;
        grants_.pop_front();
    }
    if (pending_grant_bytes_ < 0) pending_grant_bytes_ = 0;
    if (budget <= 0) return;

    std::vector<Packet> batch;
    while (!ue_queue_.empty() && ue_queue_.front().size_bytes <= budget) {
        Packet pkt = ue_queue_.front();
        ue_queue_.pop_front();
        budget -= pkt.size_bytes;
        ue_buffer_bytes_ -= pkt.size_bytes;
        pkt.t_phy_first_tx = slot_start;
        batch.push_back(pkt);
    }
    if (batch.empty()) return;

    // The whole drain ships as one MAC PDU in this TTI.
    ++stats_.pdu_tx_ul;
    const MicrosT arrival = slot_start + tti_;
    bool error = false;
    if (!ul_state_.hold_open && !options_.suppress_events &&
        scenario_.timing.has_entry(Direction::kUplink, slot_index)) {
        ++stats_.mac_draws_ul;
        if (mac_ul_.bernoulli(scenario_.p_mac_ul)) {
            error = true;
            const int t_m =
                mac_retx_delay(scenario_.frame, scenario_.timing, Direction::kUplink, slot_index);
            open_mac_hold(Direction::kUplink, arrival, static_cast<MicrosT>(t_m) * tti_);
        }
    }
    (void)error;
    for (auto& pkt : batch) {
        ran_arrival(Direction::kUplink, pkt, arrival);
    }
}

void LinkSimulator::serve_downlink(MicrosT slot_start, int slot_index) {
    if (bs_queue_.empty()) return;
    const auto& [ready, front] = bs_queue_.front();
    if (ready > slot_start) return;
    Packet pkt = front;
    bs_queue_.pop_front();
    pkt.t_phy_first_tx = slot_start;

    ++stats_.pdu_tx_dl;
    const MicrosT arrival = slot_start + tti_;
    if (!dl_state_.hold_open && !options_.suppress_events &&
        scenario_.timing.has_entry(Direction::kDownlink, slot_index)) {
        ++stats_.mac_draws_dl;
        if (mac_dl_.bernoulli(scenario_.p_mac_dl)) {
            const int t_m =
                mac_retx_delay(scenario_.frame, scenario_.timing, Direction::kDownlink, slot_index);
            open_mac_hold(Direction::kDownlink, arrival, static_cast<MicrosT>(t_m) * tti_);
        }
    }
    ran_arrival(Direction::kDownlink, pkt, arrival);
}

MicrosT LinkSimulator::step() {
    const MicrosT t = next_tti_start_;
    const int slot = slot_of(t);

    generate_arrivals(t + tti_);
    process_enqueues(t);
    flush_due_releases(t + tti_);
    if (t == next_bsr_) {
        // Drains scheduled for this slot go out first; the report then sees
        // the post-drain buffer, which is what makes over-allocation show up
        // as a BSR drop to zero.
        exec_grants(t, slot);
        bsr_tick(t);
        next_bsr_ += scenario_.t_bsr_us;
    } else if (data_capable(Direction::kUplink, slot)) {
        exec_grants(t, slot);
    }
    if (data_capable(Direction::kDownlink, slot)) {
        serve_downlink(t, slot);
    }
    next_tti_start_ = t + tti_;
    return t;
}

bool LinkSimulator::drained() const {
    return undelivered_ == 0 && !next_arrival_dl_.has_value() && !next_arrival_ul_.has_value();
}

std::vector<Delivery> LinkSimulator::drain_deliveries() {
    std::sort(finished_.begin(), finished_.end(), DeliveryOrder{});
    std::vector<Delivery> out;
    std::vector<Delivery> keep;
    for (auto& d : finished_) {
        if (d.record.t_delivered < next_tti_start_) {
            out.push_back(d);
        } else {
            keep.push_back(d);
        }
    }
    finished_.swap(keep);
    return out;
}

std::vector<RetxEvent> LinkSimulator::drain_completed_events() {
    std::vector<RetxEvent> out;
    out.swap(completed_events_);
    return out;
}

TraceBundle LinkSimulator::run() {
    const MicrosT guard = duration_us_ * 4 + 60'000'000;
    std::vector<Delivery> delivered;
    while (next_tti_start_ <= duration_us_ || !drained()) {
        step();
        if (next_tti_start_ > guard) {
            throw RanscopeError("simulation failed to drain; internal scheduling bug");
        }
        // Collect eagerly to keep the pending buffer small.
        auto ready = drain_deliveries();
        delivered.insert(delivered.end(), ready.begin(), ready.end());
    }
    // Everything still buffered has a finalized timestamp by now.
    for (auto& d : finished_) delivered.push_back(d);
    finished_.clear();

    TraceBundle trace;
    trace.packets.reserve(delivered.size());
    for (const auto& d : delivered) trace.packets.push_back(d.record);
    std::sort(trace.packets.begin(), trace.packets.end(),
              [](const PacketRecord& a, const PacketRecord& b) { return a.pkt_id < b.pkt_id; });
    trace.events = event_log_;
    std::sort(trace.events.begin(), trace.events.end(),
              [](const RetxEvent& a, const RetxEvent& b) { return a.start_us < b.start_us; });
    trace.bsr_log = bsr_log_;
    trace.stats = stats_;
    trace.scenario_fingerprint = scenario_.fingerprint();
    trace.events_suppressed = options_.suppress_events;
    return trace;
}

TraceBundle run_trace(const LinkScenario& scenario) {
    LinkSimulator sim(scenario);
    return sim.run();
}

std::vector<PacketRecord> counterfactual_replay(const LinkScenario& scenario,
                                                const TraceBundle& trace) {
    if (trace.scenario_fingerprint != scenario.fingerprint()) {
        throw ReplayMismatchError("trace was not produced by this scenario");
    }
    if (scenario.acks_enabled) {
        throw ReplayMismatchError(
            "closed-loop (ack-coupled) traces cannot be replayed: suppressing events would "
            "change ack arrival times");
    }
    LinkSimulator::Options opts;
    opts.suppress_events = true;
    LinkSimulator sim(scenario, opts);
    TraceBundle replay = sim.run();
    if (replay.packets.size() != trace.packets.size()) {
        throw ReplayMismatchError("replay produced a different packet count");
    }
    for (std::size_t i = 0; i < replay.packets.size(); ++i) {
        if (replay.packets[i].pkt_id != trace.packets[i].pkt_id ||
            replay.packets[i].t_app_send != trace.packets[i].t_app_send) {
            throw ReplayMismatchError("replay arrivals diverged from the trace");
        }
    }
    return replay.packets;
}

} // namespace ranscope
