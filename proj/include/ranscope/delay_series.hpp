// SPDX-License-Identifier: Apache-2.0

#ifndef RANSCOPE_DELAY_SERIES_HPP
#define RANSCOPE_DELAY_SERIES_HPP

#include <cstdint>
#include <vector>

#include "ranscope/link_sim.hpp"
#include "ranscope/types.hpp"

namespace ranscope {

/// One delay measurement: send timestamp, measured delay, packet identity.
struct DelaySample {
    MicrosT t_send_us = 0;
    MicrosT delay_us = 0;
    std::int64_t pkt_id = 0;

    [[nodiscard]] MicrosT t_arrival_us() const { return t_send_us + delay_us; }
};

/// Timestamped one-way-delay or RTT samples, strictly increasing in send
/// time. The substrate of filtering and congestion signals.
struct DelaySeries {
    enum class Kind { kOwd, kRtt };

    Kind kind = Kind::kOwd;
    std::vector<DelaySample> samples;

    [[nodiscard]] bool empty() const { return samples.empty(); }
    [[nodiscard]] std::size_t size() const { return samples.size(); }
    [[nodiscard]] MicrosT span_us() const {
        return samples.empty() ? 0 : samples.back().t_send_us - samples.front().t_send_us;
    }
};

/// One-way-delay series for one direction of a trace.
[[nodiscard]] DelaySeries owd_series(const std::vector<PacketRecord>& packets, Direction dir);

} // namespace ranscope

#endif // RANSCOPE_DELAY_SERIES_HPP
