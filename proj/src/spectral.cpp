// SPDX-License-Identifier: Apache-2.0

#include "ranscope/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace ranscope {

namespace {

// FFTW plan creation is not thread-safe; execution on distinct buffers is.
std::mutex g_plan_mutex;

/// Real low-pass kernel: zero every bin at or above cutoff_hz, keep DC and
/// everything below. Operates in place on a uniform grid.
class LowPassKernel {
public:
    LowPassKernel(std::size_t n, double step_s)
        : n_(n), step_s_(step_s), time_(fftw_alloc_real(n)),
          freq_(fftw_alloc_complex(n / 2 + 1)) {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), time_, freq_, FFTW_ESTIMATE);
        inv_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), freq_, time_, FFTW_ESTIMATE);
    }

    LowPassKernel(const LowPassKernel&) = delete;
    LowPassKernel& operator=(const LowPassKernel&) = delete;

    ~LowPassKernel() {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(inv_);
        fftw_free(time_);
        fftw_free(freq_);
    }

    void lowpass(std::vector<double>& window, double cutoff_hz) {
        // Linear detrend through a least-squares line keeps the circular
        // continuation smooth at the window edges; the trend itself is
        // below any practical cutoff and is added back afterwards.
        const auto n = static_cast<double>(n_);
        double sum_y = 0.0, sum_xy = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            sum_y += window[i];
            sum_xy += static_cast<double>(i) * window[i];
        }
        const double mean_x = (n - 1.0) / 2.0;
        const double mean_y = sum_y / n;
        const double sxx = n * (n * n - 1.0) / 12.0;
        const double sxy = sum_xy - mean_x * sum_y;
        const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            time_[i] = window[i] - (mean_y + slope * (static_cast<double>(i) - mean_x));
        }

        fftw_execute(fwd_);
        const double bin_hz = 1.0 / (n * step_s_);
        for (std::size_t k = 0; k <= n_ / 2; ++k) {
            if (static_cast<double>(k) * bin_hz >= cutoff_hz) {
                freq_[k][0] = 0.0;
                freq_[k][1] = 0.0;
            }
        }
        fftw_execute(inv_);
        for (std::size_t i = 0; i < n_; ++i) {
            window[i] = time_[i] / n + mean_y + slope * (static_cast<double>(i) - mean_x);
        }
    }

    void forward_power(const std::vector<double>& values, std::vector<double>& power) {
        for (std::size_t i = 0; i < n_; ++i) time_[i] = values[i];
        fftw_execute(fwd_);
        power.resize(n_ / 2 + 1);
        const auto n = static_cast<double>(n_);
        for (std::size_t k = 0; k <= n_ / 2; ++k) {
            const double re = freq_[k][0];
            const double im = freq_[k][1];
            power[k] = (re * re + im * im) / (n * n);
        }
    }

private:
    std::size_t n_;
    double step_s_;
    double* time_;
    fftw_complex* freq_;
    fftw_plan fwd_;
    fftw_plan inv_;
};

std::vector<double> resample(const DelaySeries& series, MicrosT t0, std::size_t n, MicrosT step) {
    std::vector<double> grid(n);
    const auto& s = series.samples;
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const MicrosT t = t0 + static_cast<MicrosT>(i) * step;
        while (j + 1 < s.size() && s[j + 1].t_send_us <= t) ++j;
        if (t <= s.front().t_send_us) {
            grid[i] = static_cast<double>(s.front().delay_us);
        } else if (j + 1 >= s.size()) {
            grid[i] = static_cast<double>(s.back().delay_us);
        } else {
            const auto& a = s[j];
            const auto& b = s[j + 1];
            const double frac = static_cast<double>(t - a.t_send_us) /
                                static_cast<double>(b.t_send_us - a.t_send_us);
            grid[i] = static_cast<double>(a.delay_us) +
                      frac * static_cast<double>(b.delay_us - a.delay_us);
        }
    }
    return grid;
}

} // namespace

void FilterConfig::validate() const {
    if (t_bsr_us <= 0) throw ConfigError("t_bsr_us must be positive");
    if (resample_step_us <= 0) throw ConfigError("resample_step_us must be positive");
    if (window_us <= 0) throw ConfigError("window_us must be positive");
    if (hop_us <= 0) throw ConfigError("hop_us must be positive");
    const double cutoff = effective_cutoff_hz();
    if (cutoff <= 0.0 || cutoff >= f_u_hz()) {
        throw ConfigError("cutoff must lie strictly between 0 and f_u = 1/T_bsr");
    }
    if (static_cast<double>(window_us) < 8.0 * 1e6 / cutoff) {
        throw ConfigError("window must cover at least 8 cycles of the cutoff frequency");
    }
    if (window_us / resample_step_us < 8) {
        throw ConfigError("window too short for the resampling step");
    }
}

DelaySeries ran_aware_filter(const DelaySeries& series, const FilterConfig& cfg) {
    cfg.validate();
    if (series.span_us() < cfg.window_us) {
        throw InsufficientDataError("series spans " + std::to_string(series.span_us()) +
                                    " us, below one window of " + std::to_string(cfg.window_us));
    }
    const MicrosT step = cfg.resample_step_us;
    const MicrosT t0 = series.samples.front().t_send_us;
    const MicrosT t_end = series.samples.back().t_send_us;
    const auto n_grid = static_cast<std::size_t>((t_end - t0) / step) + 1;
    const auto w = static_cast<std::size_t>(cfg.window_us / step);
    std::vector<double> grid = resample(series, t0, n_grid, step);

    LowPassKernel kernel(w, static_cast<double>(step) * 1e-6);
    const double cutoff = cfg.effective_cutoff_hz();

    // Half-window hops with Hann cross-fade; start weight floored so the
    // series edges (covered by a single window) stay defined.
    std::vector<double> out(n_grid, 0.0);
    std::vector<double> wsum(n_grid, 0.0);
    std::vector<double> fade(w);
    for (std::size_t i = 0; i < w; ++i) {
        fade[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) /
                                       static_cast<double>(w - 1)) +
                  1e-9;
    }
    const std::size_t hop = std::max<std::size_t>(1, w / 2);
    std::vector<double> window(w);
    for (std::size_t start = 0;; start += hop) {
        if (start + w > n_grid) start = n_grid - w;
        std::copy(grid.begin() + static_cast<std::ptrdiff_t>(start),
                  grid.begin() + static_cast<std::ptrdiff_t>(start + w), window.begin());
        kernel.lowpass(window, cutoff);
        for (std::size_t i = 0; i < w; ++i) {
            out[start + i] += window[i] * fade[i];
            wsum[start + i] += fade[i];
        }
        if (start + w >= n_grid) break;
    }
    for (std::size_t i = 0; i < n_grid; ++i) out[i] /= wsum[i];

    // Back to the original sample times.
    DelaySeries filtered = series;
    for (auto& sample : filtered.samples) {
        const MicrosT t = sample.t_send_us;
        const auto idx = static_cast<std::size_t>((t - t0) / step);
        double v;
        if (idx + 1 >= n_grid) {
            v = out[n_grid - 1];
        } else {
            const MicrosT ta = t0 + static_cast<MicrosT>(idx) * step;
            const double frac = static_cast<double>(t - ta) / static_cast<double>(step);
            v = out[idx] + frac * (out[idx + 1] - out[idx]);
        }
        sample.delay_us = static_cast<MicrosT>(std::llround(v));
    }
    return filtered;
}

std::vector<SpectrumPoint> spectrum(const DelaySeries& series, const FilterConfig& cfg) {
    cfg.validate();
    if (series.span_us() < cfg.window_us) {
        throw InsufficientDataError("series too short for a spectrum");
    }
    const MicrosT step = cfg.resample_step_us;
    const MicrosT t0 = series.samples.front().t_send_us;
    const MicrosT t_end = series.samples.back().t_send_us;
    auto n = static_cast<std::size_t>((t_end - t0) / step) + 1;
    if (n % 2 == 1) --n; // even length keeps the bin layout simple
    if (n < 2) throw InsufficientDataError("series too short for a spectrum");
    std::vector<double> grid = resample(series, t0, n, step);
    const double mean = std::accumulate(grid.begin(), grid.end(), 0.0) / static_cast<double>(n);
    for (auto& v : grid) v -= mean;

    LowPassKernel kernel(n, static_cast<double>(step) * 1e-6);
    std::vector<double> power;
    kernel.forward_power(grid, power);

    std::vector<SpectrumPoint> points;
    points.reserve(power.size());
    const double bin_hz = 1e6 / (static_cast<double>(n) * static_cast<double>(step));
    for (std::size_t k = 0; k < power.size(); ++k) {
        SpectrumPoint p;
        p.frequency_hz = static_cast<double>(k) * bin_hz;
        p.power_db = 10.0 * std::log10(power[k] + 1e-30);
        points.push_back(p);
    }
    return points;
}

StreamingRanFilter::StreamingRanFilter(FilterConfig cfg) : cfg_(cfg) {
    cfg_.validate();
}

ProcessedSample StreamingRanFilter::push(MicrosT t_send_us, MicrosT delay_us) {
    buffer_.emplace_back(t_send_us, delay_us);
    while (!buffer_.empty() && buffer_.front().first < t_send_us - cfg_.window_us) {
        buffer_.pop_front();
    }

    ProcessedSample out;
    out.t_send_us = t_send_us;
    out.raw_delay_us = delay_us;

    const bool full_window =
        !buffer_.empty() && buffer_.back().first - buffer_.front().first >= cfg_.window_us;
    if (full_window && (!have_level_ || t_send_us - last_hop_us_ >= cfg_.hop_us)) {
        // Rebuild a batch series over the trailing window and emit the
        // filtered value at the newest sample.
        DelaySeries window_series;
        window_series.samples.reserve(buffer_.size());
        MicrosT prev = std::numeric_limits<MicrosT>::min();
        for (const auto& [t, v] : buffer_) {
            if (t <= prev) continue; // interpolation needs strict monotonicity
            window_series.samples.push_back({t, v, 0});
            prev = t;
        }
        if (window_series.span_us() >= cfg_.window_us) {
            const DelaySeries filtered = ran_aware_filter(window_series, cfg_);
            level_us_ = filtered.samples.back().delay_us;
            have_level_ = true;
            last_hop_us_ = t_send_us;
        }
    }

    out.warm = have_level_;
    out.processed_delay_us = have_level_ ? level_us_ : delay_us;
    return out;
}

} // namespace ranscope
