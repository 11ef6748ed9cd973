// SPDX-License-Identifier: Apache-2.0

#ifndef RANSCOPE_FRAME_TIMING_HPP
#define RANSCOPE_FRAME_TIMING_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ranscope/types.hpp"

namespace ranscope {

enum class Rat { kLte, kNr };

enum class SlotRole { kDownlink, kUplink, kFlexible };

/// The two TDD uplink-downlink patterns measured from commercial 5G SA
/// deployments, both with 0.5 ms slots (SCS index 1).
enum class TddProfile { kConfig1, kConfig2 };

[[nodiscard]] const char* to_string(Rat rat) noexcept;
[[nodiscard]] const char* to_string(TddProfile profile) noexcept;

/// Cellular time base: RAT, numerology, and (for NR) the TDD slot pattern.
/// Immutable after construction; safe to share across threads.
class FrameConfig {
public:
    /// LTE: 1 ms subframes, 10 per system frame, every subframe carries
    /// data in both directions (FDD).
    static FrameConfig lte();

    /// NR with the given subcarrier-spacing index (0..6). TDD profiles are
    /// only defined for scs_index 1 (0.5 ms slots); other numerologies are
    /// valid time bases but carry no slot pattern.
    static FrameConfig nr(int scs_index, std::optional<TddProfile> profile);

    [[nodiscard]] Rat rat() const noexcept { return rat_; }
    [[nodiscard]] int scs_index() const noexcept { return scs_index_; }
    [[nodiscard]] double tti_us() const noexcept { return tti_us_; }
    [[nodiscard]] int slots_per_frame() const noexcept { return slots_per_frame_; }
    [[nodiscard]] std::optional<TddProfile> tdd_profile() const noexcept { return tdd_profile_; }

    /// Empty for LTE and for NR numerologies without a shipped profile.
    [[nodiscard]] const std::vector<SlotRole>& tdd_pattern() const noexcept { return tdd_pattern_; }

    /// Slot role for slot_index in [0, slots_per_frame). LTE reports
    /// kFlexible for every subframe (both directions legal).
    [[nodiscard]] SlotRole slot_role(int slot_index) const;

private:
    FrameConfig() = default;

    Rat rat_ = Rat::kLte;
    int scs_index_ = 0;
    double tti_us_ = 1000.0;
    int slots_per_frame_ = 10;
    std::optional<TddProfile> tdd_profile_;
    std::vector<SlotRole> tdd_pattern_;
};

/// TTI duration in microseconds for a valid FrameConfig.
[[nodiscard]] double tti_duration(const FrameConfig& cfg) noexcept;

/// Slot-indexed MAC retransmission timing parameters. Downlink rows hold
/// (K0, K1, Kd), uplink rows hold (K2, Ku); a row exists only for slots
/// whose role permits a transmission in that direction. Unlisted slots are
/// invalid by construction.
class RetxTimingTable {
public:
    struct DlEntry {
        int k0 = 0;
        int k1 = 0;
        int kd = 0;
    };
    struct UlEntry {
        int k2 = 0;
        int ku = 0;
    };

    RetxTimingTable(std::string name, int slots_per_frame);

    /// LTE: K0=0, K1=4, Kd=4, K2=4, Ku=4 on every subframe (fixed 8 ms).
    static RetxTimingTable lte();
    /// Measured 5G SA tables for the two commercial TDD configurations.
    static RetxTimingTable nr_config1();
    static RetxTimingTable nr_config2();

    /// Built-in lookup by name: "lte", "nr-config1", "nr-config2".
    static RetxTimingTable builtin(const std::string& name);

    /// Line-oriented text format:
    ///   [downlink]
    ///   slot_index,k0,k1,kd
    ///   [uplink]
    ///   slot_index,k2,ku
    /// '#' starts a comment. Throws ConfigError on malformed input.
    static RetxTimingTable load(std::istream& in, std::string name, int slots_per_frame);
    static RetxTimingTable load_file(const std::string& path, int slots_per_frame);
    void save(std::ostream& out) const;

    void set_dl(int slot_index, DlEntry entry);
    void set_ul(int slot_index, UlEntry entry);

    [[nodiscard]] std::optional<DlEntry> dl(int slot_index) const;
    [[nodiscard]] std::optional<UlEntry> ul(int slot_index) const;
    [[nodiscard]] bool has_entry(Direction dir, int slot_index) const;

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] int slots_per_frame() const noexcept { return slots_per_frame_; }

private:
    std::string name_;
    int slots_per_frame_ = 0;
    std::vector<std::optional<DlEntry>> dl_;
    std::vector<std::optional<UlEntry>> ul_;
};

/// MAC retransmission delay T_M in TTIs for a transmission that started in
/// slot_index: K0+K1+Kd for downlink, K2+Ku for uplink. Pure; throws
/// InvalidSlotError when the slot has no timing row in that direction
/// (wrong-role slots and the rows the measurements never defined).
[[nodiscard]] int mac_retx_delay(const FrameConfig& cfg, const RetxTimingTable& tbl,
                                 Direction dir, int slot_index);

/// Matching RetxTimingTable for a FrameConfig's shipped profile.
[[nodiscard]] RetxTimingTable default_timing_table(const FrameConfig& cfg);

} // namespace ranscope

#endif // RANSCOPE_FRAME_TIMING_HPP
