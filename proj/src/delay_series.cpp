// SPDX-License-Identifier: Apache-2.0

#include "ranscope/delay_series.hpp"

#include <algorithm>

namespace ranscope {

DelaySeries owd_series(const std::vector<PacketRecord>& packets, Direction dir) {
    DelaySeries series;
    series.kind = DelaySeries::Kind::kOwd;
    for (const auto& pkt : packets) {
        if (pkt.direction != dir) continue;
        series.samples.push_back({pkt.t_app_send, pkt.owd_us(), pkt.pkt_id});
    }
    std::sort(series.samples.begin(), series.samples.end(),
              [](const DelaySample& a, const DelaySample& b) {
                  if (a.t_send_us != b.t_send_us) return a.t_send_us < b.t_send_us;
                  return a.pkt_id < b.pkt_id;
              });
    return series;
}

} // namespace ranscope
