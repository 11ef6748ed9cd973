// SPDX-License-Identifier: Apache-2.0

#ifndef RANSCOPE_PIPELINE_HPP
#define RANSCOPE_PIPELINE_HPP

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "ranscope/compensate.hpp"
#include "ranscope/spectral.hpp"

namespace ranscope {

/// Which parts of the mitigation pipeline run. The names mirror the
/// ablation variants: downlink retransmission compensation only, uplink
/// only, filtering only, everything, or nothing.
enum class AblationMode { kOff, kDlRetxOnly, kUlRetxOnly, kFilterOnly, kFull };

[[nodiscard]] AblationMode parse_ablation_mode(const std::string& name);
[[nodiscard]] const char* to_string(AblationMode mode) noexcept;
[[nodiscard]] std::vector<AblationMode> all_ablation_modes();

[[nodiscard]] constexpr bool mode_compensates(AblationMode mode, Direction dir) noexcept {
    switch (mode) {
    case AblationMode::kFull: return true;
    case AblationMode::kDlRetxOnly: return dir == Direction::kDownlink;
    case AblationMode::kUlRetxOnly: return dir == Direction::kUplink;
    default: return false;
    }
}

[[nodiscard]] constexpr bool mode_filters(AblationMode mode) noexcept {
    return mode == AblationMode::kFull || mode == AblationMode::kFilterOnly;
}

/// Batch pipeline: retransmission compensation (directions per mode) then
/// RAN-aware filtering (if the mode includes it). Off is the identity.
[[nodiscard]] DelaySeries pipeline(const DelaySeries& raw, const std::vector<RetxEvent>& events,
                                   const FilterConfig& cfg, AblationMode mode,
                                   const CompensateOptions& comp = {});

/// Streaming compensator: equivalent to compensate_retx sample-by-sample
/// when events are fed at their completion times and samples arrive in
/// delivery order (ties by pkt_id).
class StreamingCompensator {
public:
    explicit StreamingCompensator(CompensateOptions options = {}) : options_(options) {}

    void on_event(const RetxEvent& event);

    /// Returns the (possibly corrected) delay for this sample.
    MicrosT push(const DelaySample& sample);

private:
    struct Tracked {
        RetxEvent event;
        std::optional<MicrosT> corrected;
    };

    CompensateOptions options_;
    std::deque<Tracked> events_;
};

} // namespace ranscope

#endif // RANSCOPE_PIPELINE_HPP
