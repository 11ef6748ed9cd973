// SPDX-License-Identifier: Apache-2.0

#include "ranscope/compensate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ranscope {

namespace {

// (arrival, sample index) pairs sorted by arrival; bursts make raw series
// order unusable for release-instant lookups.
std::vector<std::pair<MicrosT, std::size_t>> arrival_index(const DelaySeries& series) {
    std::vector<std::pair<MicrosT, std::size_t>> idx;
    idx.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        idx.emplace_back(series.samples[i].t_arrival_us(), i);
    }
    std::sort(idx.begin(), idx.end());
    return idx;
}

MicrosT median_of(std::vector<MicrosT> values) {
    const auto mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                     values.end());
    return values[mid];
}

} // namespace

CompensationResult compensate_retx(const DelaySeries& series, const std::vector<RetxEvent>& events,
                                   const CompensateOptions& options) {
    CompensationResult result;
    result.series = series;
    if (events.empty() || series.empty()) {
        return result;
    }

    const auto arrivals = arrival_index(series);
    auto& samples = result.series.samples;

    std::vector<RetxEvent> sorted = events;
    std::sort(sorted.begin(), sorted.end(),
              [](const RetxEvent& a, const RetxEvent& b) { return a.end_us < b.end_us; });

    for (const auto& ev : sorted) {
        const MicrosT lo = ev.end_us - options.burst_tol_us;
        const MicrosT hi = ev.end_us + options.burst_tol_us;
        auto it = std::lower_bound(arrivals.begin(), arrivals.end(),
                                   std::make_pair(lo, std::size_t{0}));
        std::vector<std::size_t> burst;
        for (; it != arrivals.end() && it->first <= hi; ++it) {
            burst.push_back(it->second);
        }
        // The error packet: released with the burst but transmitted before
        // the event started, i.e. the earliest-sent member.
        std::size_t error_idx = 0;
        bool found = false;
        for (const std::size_t i : burst) {
            if (series.samples[i].t_send_us >= ev.start_us) continue;
            if (!found || series.samples[i].t_send_us < series.samples[error_idx].t_send_us ||
                (series.samples[i].t_send_us == series.samples[error_idx].t_send_us &&
                 series.samples[i].pkt_id < series.samples[error_idx].pkt_id)) {
                error_idx = i;
                found = true;
            }
        }
        if (!found) {
            result.unmatched_event_ids.push_back(ev.id);
            continue;
        }
        MicrosT corrected = series.samples[error_idx].delay_us - ev.duration_us();
        if (options.floor_us && corrected < *options.floor_us) {
            corrected = *options.floor_us;
        }
        for (const std::size_t i : burst) {
            samples[i].delay_us = corrected;
        }
    }
    return result;
}

std::vector<CandidateEvent> detect_candidate_events(const DelaySeries& series,
                                                    MicrosT expected_tm_us, MicrosT tol_us,
                                                    const DetectOptions& options) {
    std::vector<CandidateEvent> candidates;
    if (series.size() < 3 || series.span_us() < 1'000'000) {
        return candidates;
    }
    const auto arrivals = arrival_index(series);
    const MicrosT gap_threshold =
        static_cast<MicrosT>(std::llround(options.gap_frac * static_cast<double>(expected_tm_us)));

    for (std::size_t i = 1; i < arrivals.size(); ++i) {
        const MicrosT gap = arrivals[i].first - arrivals[i - 1].first;
        if (gap < gap_threshold) continue;

        // (b) at least two packets released nearly together after the gap.
        const MicrosT burst_end = arrivals[i].first + options.burst_window_us;
        std::vector<std::int64_t> members;
        for (std::size_t j = i; j < arrivals.size() && arrivals[j].first <= burst_end; ++j) {
            members.push_back(series.samples[arrivals[j].second].pkt_id);
        }
        if (members.size() < 2) continue;

        // (c) the first post-gap packet carries ~expected_tm of extra delay
        // over the local pre-gap median.
        const MicrosT window_lo = arrivals[i - 1].first - options.median_window_us;
        std::vector<MicrosT> local;
        for (std::size_t j = i; j-- > 0;) {
            if (arrivals[j].first < window_lo) break;
            local.push_back(series.samples[arrivals[j].second].delay_us);
        }
        if (local.empty()) continue;
        const MicrosT baseline = median_of(std::move(local));
        const MicrosT excess = series.samples[arrivals[i].second].delay_us - baseline;
        if (std::llabs(excess - expected_tm_us) > tol_us) continue;

        CandidateEvent cand;
        cand.gap_start_us = arrivals[i - 1].first;
        cand.burst_us = arrivals[i].first;
        cand.est_duration_us = excess;
        cand.member_pkt_ids = std::move(members);
        candidates.push_back(std::move(cand));
    }
    return candidates;
}

SyncResult synchronize(const std::vector<CandidateEvent>& candidates,
                       const std::vector<RetxEvent>& reported, const SyncOptions& options) {
    if (candidates.empty() || reported.empty()) {
        throw NoOverlapError("synchronize needs non-empty candidate and reported lists");
    }
    if (options.granularity_us <= 0 || options.max_shift_us < 0) {
        throw ConfigError("invalid synchronization scan parameters");
    }

    std::vector<std::pair<MicrosT, std::size_t>> bursts;
    bursts.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        bursts.emplace_back(candidates[i].burst_us, i);
    }
    std::sort(bursts.begin(), bursts.end());
    const MicrosT cand_lo = bursts.front().first;
    const MicrosT cand_hi = bursts.back().first;

    SyncResult best;
    bool have_best = false;

    for (MicrosT shift = -options.max_shift_us; shift <= options.max_shift_us;
         shift += options.granularity_us) {
        std::size_t in_window = 0;
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t r = 0; r < reported.size(); ++r) {
            const MicrosT target = reported[r].end_us + shift;
            if (target < cand_lo - options.match_tol_us || target > cand_hi + options.match_tol_us) {
                continue;
            }
            ++in_window;
            auto it = std::lower_bound(bursts.begin(), bursts.end(),
                                       std::make_pair(target, std::size_t{0}));
            MicrosT best_dist = std::numeric_limits<MicrosT>::max();
            std::size_t best_cand = 0;
            if (it != bursts.end()) {
                best_dist = std::llabs(it->first - target);
                best_cand = it->second;
            }
            if (it != bursts.begin()) {
                const auto prev = std::prev(it);
                const MicrosT d = std::llabs(prev->first - target);
                if (d < best_dist) {
                    best_dist = d;
                    best_cand = prev->second;
                }
            }
            if (best_dist <= options.match_tol_us) {
                pairs.emplace_back(best_cand, r);
            }
        }
        if (in_window == 0) continue;
        const double ratio = static_cast<double>(pairs.size()) / static_cast<double>(in_window);
        const bool better =
            !have_best || ratio > best.match_ratio ||
            (ratio == best.match_ratio && std::llabs(shift) < std::llabs(best.shift_us)) ||
            (ratio == best.match_ratio && std::llabs(shift) == std::llabs(best.shift_us) &&
             shift < best.shift_us);
        if (better) {
            best.shift_us = shift;
            best.match_ratio = ratio;
            best.matched_pairs = std::move(pairs);
            have_best = true;
        }
    }

    if (!have_best || best.match_ratio < options.min_usable_ratio) {
        throw NoOverlapError("no usable alignment: best match ratio " +
                             std::to_string(have_best ? best.match_ratio : 0.0));
    }
    return best;
}

} // namespace ranscope
