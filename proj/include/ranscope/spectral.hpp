// SPDX-License-Identifier: Apache-2.0

#ifndef RANSCOPE_SPECTRAL_HPP
#define RANSCOPE_SPECTRAL_HPP

#include <deque>
#include <vector>

#include "ranscope/delay_series.hpp"
#include "ranscope/types.hpp"

namespace ranscope {

/// RAN-aware filter parameters. The uplink scheduling buffer injects a
/// periodic delay component at f_u = 1/T_bsr; the cutoff sits between that
/// band and the much slower congestion dynamics.
struct FilterConfig {
    MicrosT t_bsr_us = 5000;
    double cutoff_hz = 0.0;            // 0 selects the default f_u / 4
    MicrosT window_us = 1'000'000;
    MicrosT resample_step_us = 1000;
    MicrosT hop_us = 100000;           // streaming recompute interval

    [[nodiscard]] double f_u_hz() const { return 1e6 / static_cast<double>(t_bsr_us); }
    [[nodiscard]] double effective_cutoff_hz() const {
        return cutoff_hz > 0.0 ? cutoff_hz : f_u_hz() / 4.0;
    }

    /// Enforces 0 < cutoff < f_u and a window of at least 8 cutoff cycles.
    void validate() const;
};

/// Low-pass filters the series below cfg.cutoff_hz, removing the
/// BSR-periodic uplink-buffer component while preserving congestion-band
/// variations.
///
/// The series is linearly resampled onto a uniform grid; each sliding
/// window is detrended, transformed, has every bin at or above the cutoff
/// zeroed, and is inverted; windows are cross-faded back together and the
/// result is interpolated at the original sample times. Retransmission
/// delays must already be removed (pipeline order).
///
/// Throws InsufficientDataError when the series spans less than one window.
[[nodiscard]] DelaySeries ran_aware_filter(const DelaySeries& series, const FilterConfig& cfg);

/// One periodogram bin.
struct SpectrumPoint {
    double frequency_hz = 0.0;
    double power_db = 0.0;
};

/// Periodogram of the uniformly resampled, mean-removed series. Same
/// preconditions as ran_aware_filter.
[[nodiscard]] std::vector<SpectrumPoint> spectrum(const DelaySeries& series,
                                                  const FilterConfig& cfg);

/// Processed output for one input sample.
struct ProcessedSample {
    MicrosT t_send_us = 0;
    MicrosT raw_delay_us = 0;
    MicrosT processed_delay_us = 0;
    bool warm = false; // false while the first window is still filling
};

/// Streaming variant for live controller integration: window of window_us,
/// recomputed every hop_us, latest-sample emission held between hops.
/// Shares the batch kernel. Raw values pass through until the first full
/// window. Per-flow state; not thread-safe across flows.
class StreamingRanFilter {
public:
    explicit StreamingRanFilter(FilterConfig cfg);

    ProcessedSample push(MicrosT t_send_us, MicrosT delay_us);

private:
    FilterConfig cfg_;
    std::deque<std::pair<MicrosT, MicrosT>> buffer_;
    MicrosT last_hop_us_ = 0;
    bool have_level_ = false;
    MicrosT level_us_ = 0;
};

} // namespace ranscope

#endif // RANSCOPE_SPECTRAL_HPP
