// SPDX-License-Identifier: Apache-2.0

#include "ranscope/pipeline.hpp"

#include <algorithm>

namespace ranscope {

AblationMode parse_ablation_mode(const std::string& name) {
    if (name == "off" || name == "raw") return AblationMode::kOff;
    if (name == "dl-retx") return AblationMode::kDlRetxOnly;
    if (name == "ul-retx") return AblationMode::kUlRetxOnly;
    if (name == "filter") return AblationMode::kFilterOnly;
    if (name == "full") return AblationMode::kFull;
    throw ConfigError("unknown ablation mode '" + name +
                      "' (expected full|dl-retx|ul-retx|filter|off)");
}

const char* to_string(AblationMode mode) noexcept {
    switch (mode) {
    case AblationMode::kOff: return "off";
    case AblationMode::kDlRetxOnly: return "dl-retx";
    case AblationMode::kUlRetxOnly: return "ul-retx";
    case AblationMode::kFilterOnly: return "filter";
    case AblationMode::kFull: return "full";
    }
    return "off";
}

std::vector<AblationMode> all_ablation_modes() {
    return {AblationMode::kOff, AblationMode::kDlRetxOnly, AblationMode::kUlRetxOnly,
            AblationMode::kFilterOnly, AblationMode::kFull};
}

DelaySeries pipeline(const DelaySeries& raw, const std::vector<RetxEvent>& events,
                     const FilterConfig& cfg, AblationMode mode, const CompensateOptions& comp) {
    if (mode == AblationMode::kOff) {
        return raw;
    }
    DelaySeries current = raw;
    std::vector<RetxEvent> selected;
    for (const auto& ev : events) {
        if (mode_compensates(mode, ev.direction)) selected.push_back(ev);
    }
    if (!selected.empty()) {
        current = compensate_retx(current, selected, comp).series;
    }
    if (mode_filters(mode)) {
        current = ran_aware_filter(current, cfg);
    }
    return current;
}

void StreamingCompensator::on_event(const RetxEvent& event) {
    events_.push_back({event, std::nullopt});
}

MicrosT StreamingCompensator::push(const DelaySample& sample) {
    const MicrosT arrival = sample.t_arrival_us();
    // Events far in the past can no longer match any sample.
    while (!events_.empty() &&
           events_.front().event.end_us + options_.burst_tol_us + 1'000'000 < arrival) {
        events_.pop_front();
    }
    for (auto& tracked : events_) {
        const auto& ev = tracked.event;
        if (arrival < ev.end_us - options_.burst_tol_us ||
            arrival > ev.end_us + options_.burst_tol_us) {
            continue;
        }
        if (sample.t_send_us < ev.start_us && !tracked.corrected.has_value()) {
            MicrosT corrected = sample.delay_us - ev.duration_us();
            if (options_.floor_us && corrected < *options_.floor_us) {
                corrected = *options_.floor_us;
            }
            tracked.corrected = corrected;
        }
        if (tracked.corrected.has_value()) {
            return *tracked.corrected;
        }
        return sample.delay_us; // burst seen before any error packet: leave as-is
    }
    return sample.delay_us;
}

} // namespace ranscope
