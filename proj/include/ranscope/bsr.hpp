// SPDX-License-Identifier: Apache-2.0

#ifndef RANSCOPE_BSR_HPP
#define RANSCOPE_BSR_HPP

#include <cstdint>

#include "ranscope/types.hpp"

namespace ranscope {

/// One buffer status report as logged by the simulator. range_* is what the
/// report conveys to the base station; true_buffer_bytes is ground truth the
/// real system never sees.
struct BsrLogEntry {
    MicrosT t_report_us = 0;
    int index = 0;
    std::int64_t range_low_bytes = 0;
    std::int64_t range_high_bytes = 0;
    std::int64_t true_buffer_bytes = 0;
};

/// Quantized buffer level: index plus the byte range it represents.
struct BsrQuant {
    int index = 0;
    std::int64_t range_low_bytes = 0;
    std::int64_t range_high_bytes = 0;
};

/// 64-level exponential BSR quantizer.
///
/// Index 0 represents an empty buffer with range [0, B_min). For k >= 1 the
/// range is [B_min * g^(k-1), B_min * g^k) with B_min = 10 bytes and
/// g = (3e6 / 10)^(1/63), so level 63 starts just below 3 MB. Buffers at or
/// above the top boundary stay at index 63 with an open upper range (real
/// BSR tables likewise saturate with a ">=" bucket).
///
/// Monotone non-decreasing in buffer_bytes by construction (thresholds are
/// precomputed once and binary-searched).
[[nodiscard]] BsrQuant quantize_bsr(std::int64_t buffer_bytes);

namespace bsr_detail {
inline constexpr int kLevels = 64;
inline constexpr double kBMinBytes = 10.0;
inline constexpr double kBMaxBytes = 3.0e6;
} // namespace bsr_detail

} // namespace ranscope

#endif // RANSCOPE_BSR_HPP
