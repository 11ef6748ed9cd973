// SPDX-License-Identifier: Apache-2.0

#include "ranscope/bsr.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace ranscope {

namespace {

using bsr_detail::kBMaxBytes;
using bsr_detail::kBMinBytes;
using bsr_detail::kLevels;

// thresholds[k] = B_min * g^k for k = 0..63; thresholds[0] = 10 and
// thresholds[63] = 3e6 up to rounding. Level k >= 1 covers
// [thresholds[k-1], thresholds[k]).
std::array<double, kLevels> make_thresholds() {
    std::array<double, kLevels> t{};
    const double g = std::pow(kBMaxBytes / kBMinBytes, 1.0 / (kLevels - 1));
    double v = kBMinBytes;
    for (int k = 0; k < kLevels; ++k) {
        t[static_cast<std::size_t>(k)] = v;
        v *= g;
    }
    return t;
}

const std::array<double, kLevels>& thresholds() {
    static const std::array<double, kLevels> t = make_thresholds();
    return t;
}

std::int64_t int_low(int index) {
    if (index == 0) return 0;
    return static_cast<std::int64_t>(std::ceil(thresholds()[static_cast<std::size_t>(index - 1)]));
}

std::int64_t int_high(int index) {
    if (index >= kLevels - 1) return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(std::ceil(thresholds()[static_cast<std::size_t>(index)]));
}

} // namespace

BsrQuant quantize_bsr(std::int64_t buffer_bytes) {
    if (buffer_bytes < 0) {
        throw ConfigError("buffer_bytes must be non-negative");
    }
    if (buffer_bytes == 0) {
        return {0, 0, static_cast<std::int64_t>(kBMinBytes)};
    }
    const auto& t = thresholds();
    const double b = static_cast<double>(buffer_bytes);
    // Largest k with thresholds[k] <= b, then index = k + 1; sub-B_min
    // buffers land on index 1 (real reports have no empty-but-nonzero code).
    const auto it = std::upper_bound(t.begin(), t.end(), b);
    int index = static_cast<int>(it - t.begin());
    index = std::clamp(index, 1, kLevels - 1);
    return {index, int_low(index), int_high(index)};
}

} // namespace ranscope
