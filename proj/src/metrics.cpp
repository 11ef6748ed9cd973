// SPDX-License-Identifier: Apache-2.0

#include "ranscope/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace ranscope {

namespace {
constexpr std::size_t kMinSamples = 20;
}

MicrosT nearest_rank_percentile(std::vector<MicrosT> values, double percentile) {
    if (values.empty()) {
        throw InsufficientDataError("percentile of an empty set");
    }
    if (percentile <= 0.0 || percentile > 100.0) {
        throw ConfigError("percentile must lie in (0, 100]");
    }
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    auto rank = static_cast<std::size_t>(std::ceil(percentile / 100.0 * n));
    if (rank < 1) rank = 1;
    return values[rank - 1];
}

MicrosT variation_range(const DelaySeries& series) {
    if (series.size() < kMinSamples) {
        throw InsufficientDataError("variation_range needs at least 20 samples, got " +
                                    std::to_string(series.size()));
    }
    std::vector<MicrosT> delays;
    delays.reserve(series.size());
    for (const auto& s : series.samples) delays.push_back(s.delay_us);
    const MicrosT p95 = nearest_rank_percentile(delays, 95.0);
    const MicrosT p5 = nearest_rank_percentile(delays, 5.0);
    return p95 - p5;
}

DelayStats delay_stats(const DelaySeries& series) {
    if (series.size() < kMinSamples) {
        throw InsufficientDataError("delay_stats needs at least 20 samples");
    }
    std::vector<MicrosT> delays;
    delays.reserve(series.size());
    for (const auto& s : series.samples) delays.push_back(s.delay_us);
    DelayStats stats;
    stats.p5_us = nearest_rank_percentile(delays, 5.0);
    stats.p50_us = nearest_rank_percentile(delays, 50.0);
    stats.p95_us = nearest_rank_percentile(delays, 95.0);
    return stats;
}

} // namespace ranscope
