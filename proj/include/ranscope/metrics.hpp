// SPDX-License-Identifier: Apache-2.0

#ifndef RANSCOPE_METRICS_HPP
#define RANSCOPE_METRICS_HPP

#include <vector>

#include "ranscope/delay_series.hpp"
#include "ranscope/types.hpp"

namespace ranscope {

/// Nearest-rank percentile: the ceil(p/100 * N)-th smallest value
/// (1-indexed). No interpolation by design.
[[nodiscard]] MicrosT nearest_rank_percentile(std::vector<MicrosT> values, double percentile);

/// p95 - p5 of the series' delays. Requires at least 20 samples
/// (InsufficientDataError otherwise).
[[nodiscard]] MicrosT variation_range(const DelaySeries& series);

/// Summary block the harness reports per trial.
struct DelayStats {
    MicrosT p5_us = 0;
    MicrosT p50_us = 0;
    MicrosT p95_us = 0;

    [[nodiscard]] MicrosT variation_range_us() const { return p95_us - p5_us; }
};

[[nodiscard]] DelayStats delay_stats(const DelaySeries& series);

} // namespace ranscope

#endif // RANSCOPE_METRICS_HPP
