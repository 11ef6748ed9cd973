// SPDX-License-Identifier: Apache-2.0

#include "ranscope/frame_timing.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ranscope {

namespace {

// Subcarrier-spacing numerology: slots per 10 ms system frame and slot
// duration for SCS index 0..6.
constexpr std::array<int, 7> kNrSlotsPerFrame = {10, 20, 40, 80, 160, 320, 640};
constexpr std::array<double, 7> kNrTtiUs = {1000.0, 500.0, 250.0, 125.0, 62.5, 31.25, 15.625};

constexpr int kLteSlotsPerFrame = 10;
constexpr double kLteTtiUs = 1000.0;

std::vector<SlotRole> make_pattern(TddProfile profile) {
    // Half-frame patterns repeat at 5 ms. Config1 leaves slots 8/18 with no
    // measured downlink timing row; they are flexible. Config2 defines rows
    // for every downlink slot.
    std::vector<SlotRole> half;
    if (profile == TddProfile::kConfig1) {
        half = {SlotRole::kDownlink, SlotRole::kDownlink, SlotRole::kDownlink,
                SlotRole::kDownlink, SlotRole::kUplink,   SlotRole::kDownlink,
                SlotRole::kDownlink, SlotRole::kDownlink, SlotRole::kFlexible,
                SlotRole::kUplink};
    } else {
        half = {SlotRole::kDownlink, SlotRole::kDownlink, SlotRole::kDownlink,
                SlotRole::kDownlink, SlotRole::kDownlink, SlotRole::kDownlink,
                SlotRole::kDownlink, SlotRole::kDownlink, SlotRole::kUplink,
                SlotRole::kUplink};
    }
    std::vector<SlotRole> full = half;
    full.insert(full.end(), half.begin(), half.end());
    return full;
}

} // namespace

const char* to_string(Rat rat) noexcept {
    return rat == Rat::kLte ? "lte" : "nr";
}

const char* to_string(TddProfile profile) noexcept {
    return profile == TddProfile::kConfig1 ? "config1" : "config2";
}

FrameConfig FrameConfig::lte() {
    FrameConfig cfg;
    cfg.rat_ = Rat::kLte;
    cfg.scs_index_ = 0;
    cfg.tti_us_ = kLteTtiUs;
    cfg.slots_per_frame_ = kLteSlotsPerFrame;
    return cfg;
}

FrameConfig FrameConfig::nr(int scs_index, std::optional<TddProfile> profile) {
    if (scs_index < 0 || scs_index > 6) {
        throw ConfigError("NR scs_index must be in 0..6, got " + std::to_string(scs_index));
    }
    if (profile.has_value() && scs_index != 1) {
        throw ConfigError("TDD profiles are defined only for scs_index 1 (0.5 ms slots)");
    }
    FrameConfig cfg;
    cfg.rat_ = Rat::kNr;
    cfg.scs_index_ = scs_index;
    cfg.tti_us_ = kNrTtiUs[static_cast<std::size_t>(scs_index)];
    cfg.slots_per_frame_ = kNrSlotsPerFrame[static_cast<std::size_t>(scs_index)];
    cfg.tdd_profile_ = profile;
    if (profile.has_value()) {
        cfg.tdd_pattern_ = make_pattern(*profile);
    }
    return cfg;
}

SlotRole FrameConfig::slot_role(int slot_index) const {
    if (slot_index < 0 || slot_index >= slots_per_frame_) {
        throw InvalidSlotError("slot_index " + std::to_string(slot_index) + " outside frame");
    }
    if (tdd_pattern_.empty()) {
        return SlotRole::kFlexible;
    }
    return tdd_pattern_[static_cast<std::size_t>(slot_index)];
}

double tti_duration(const FrameConfig& cfg) noexcept {
    return cfg.tti_us();
}

RetxTimingTable::RetxTimingTable(std::string name, int slots_per_frame)
    : name_(std::move(name)), slots_per_frame_(slots_per_frame) {
    if (slots_per_frame <= 0) {
        throw ConfigError("timing table needs a positive slot count");
    }
    dl_.resize(static_cast<std::size_t>(slots_per_frame));
    ul_.resize(static_cast<std::size_t>(slots_per_frame));
}

RetxTimingTable RetxTimingTable::lte() {
    RetxTimingTable tbl("lte", kLteSlotsPerFrame);
    for (int i = 0; i < kLteSlotsPerFrame; ++i) {
        tbl.set_dl(i, {0, 4, 4});
        tbl.set_ul(i, {4, 4});
    }
    return tbl;
}

RetxTimingTable RetxTimingTable::nr_config1() {
    RetxTimingTable tbl("nr-config1", 20);
    // K1 varies per slot, Kd is 6 throughout, K0 is 0 throughout.
    struct Row {
        int slot;
        int k1;
    };
    constexpr Row kDl[] = {{0, 4}, {1, 8}, {2, 7}, {3, 6}, {5, 4}, {6, 8}, {7, 7}};
    for (const auto& row : kDl) {
        tbl.set_dl(row.slot, {0, row.k1, 6});
        tbl.set_dl(row.slot + 10, {0, row.k1, 6});
    }
    tbl.set_ul(4, {4, 6});
    tbl.set_ul(14, {4, 6});
    tbl.set_ul(9, {3, 7});
    tbl.set_ul(19, {3, 7});
    return tbl;
}

RetxTimingTable RetxTimingTable::nr_config2() {
    RetxTimingTable tbl("nr-config2", 20);
    struct Row {
        int slot;
        int k1;
    };
    constexpr Row kDl[] = {{0, 8}, {1, 7}, {2, 7}, {3, 6}, {4, 5}, {5, 4}, {6, 12}, {7, 11}};
    for (const auto& row : kDl) {
        tbl.set_dl(row.slot, {0, row.k1, 5});
        tbl.set_dl(row.slot + 10, {0, row.k1, 5});
    }
    tbl.set_ul(8, {3, 7});
    tbl.set_ul(18, {3, 7});
    tbl.set_ul(9, {3, 6});
    tbl.set_ul(19, {3, 6});
    return tbl;
}

RetxTimingTable RetxTimingTable::builtin(const std::string& name) {
    if (name == "lte") return lte();
    if (name == "nr-config1") return nr_config1();
    if (name == "nr-config2") return nr_config2();
    throw ConfigError("unknown built-in timing table: " + name);
}

RetxTimingTable RetxTimingTable::load(std::istream& in, std::string name, int slots_per_frame) {
    RetxTimingTable tbl(std::move(name), slots_per_frame);
    enum class Section { kNone, kDownlink, kUplink };
    Section section = Section::kNone;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        if (line == "[downlink]") {
            section = Section::kDownlink;
            continue;
        }
        if (line == "[uplink]") {
            section = Section::kUplink;
            continue;
        }
        if (section == Section::kNone) {
            throw ConfigError("timing table line " + std::to_string(lineno) +
                              ": row before [downlink]/[uplink] section");
        }
        std::istringstream row(line);
        std::vector<long> fields;
        std::string tok;
        while (std::getline(row, tok, ',')) {
            try {
                fields.push_back(std::stol(tok));
            } catch (const std::exception&) {
                throw ConfigError("timing table line " + std::to_string(lineno) +
                                  ": non-numeric field '" + tok + "'");
            }
        }
        const std::size_t want = section == Section::kDownlink ? 4 : 3;
        if (fields.size() != want) {
            throw ConfigError("timing table line " + std::to_string(lineno) + ": expected " +
                              std::to_string(want) + " fields");
        }
        for (std::size_t i = 1; i < fields.size(); ++i) {
            if (fields[i] < 0) {
                throw ConfigError("timing table line " + std::to_string(lineno) +
                                  ": K values must be non-negative");
            }
        }
        const int slot = static_cast<int>(fields[0]);
        if (section == Section::kDownlink) {
            tbl.set_dl(slot, {static_cast<int>(fields[1]), static_cast<int>(fields[2]),
                              static_cast<int>(fields[3])});
        } else {
            tbl.set_ul(slot, {static_cast<int>(fields[1]), static_cast<int>(fields[2])});
        }
    }
    return tbl;
}

RetxTimingTable RetxTimingTable::load_file(const std::string& path, int slots_per_frame) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open timing table file: " + path);
    }
    return load(in, path, slots_per_frame);
}

void RetxTimingTable::save(std::ostream& out) const {
    out << "[downlink]\n";
    for (int i = 0; i < slots_per_frame_; ++i) {
        if (const auto& e = dl_[static_cast<std::size_t>(i)]) {
            out << i << ',' << e->k0 << ',' << e->k1 << ',' << e->kd << '\n';
        }
    }
    out << "[uplink]\n";
    for (int i = 0; i < slots_per_frame_; ++i) {
        if (const auto& e = ul_[static_cast<std::size_t>(i)]) {
            out << i << ',' << e->k2 << ',' << e->ku << '\n';
        }
    }
}

void RetxTimingTable::set_dl(int slot_index, DlEntry entry) {
    if (slot_index < 0 || slot_index >= slots_per_frame_) {
        throw ConfigError("downlink timing row slot " + std::to_string(slot_index) +
                          " outside frame of " + std::to_string(slots_per_frame_));
    }
    dl_[static_cast<std::size_t>(slot_index)] = entry;
}

void RetxTimingTable::set_ul(int slot_index, UlEntry entry) {
    if (slot_index < 0 || slot_index >= slots_per_frame_) {
        throw ConfigError("uplink timing row slot " + std::to_string(slot_index) +
                          " outside frame of " + std::to_string(slots_per_frame_));
    }
    ul_[static_cast<std::size_t>(slot_index)] = entry;
}

std::optional<RetxTimingTable::DlEntry> RetxTimingTable::dl(int slot_index) const {
    if (slot_index < 0 || slot_index >= slots_per_frame_) return std::nullopt;
    return dl_[static_cast<std::size_t>(slot_index)];
}

std::optional<RetxTimingTable::UlEntry> RetxTimingTable::ul(int slot_index) const {
    if (slot_index < 0 || slot_index >= slots_per_frame_) return std::nullopt;
    return ul_[static_cast<std::size_t>(slot_index)];
}

bool RetxTimingTable::has_entry(Direction dir, int slot_index) const {
    return dir == Direction::kDownlink ? dl(slot_index).has_value() : ul(slot_index).has_value();
}

int mac_retx_delay(const FrameConfig& cfg, const RetxTimingTable& tbl, Direction dir,
                   int slot_index) {
    if (slot_index < 0 || slot_index >= cfg.slots_per_frame()) {
        throw InvalidSlotError("slot_index " + std::to_string(slot_index) + " outside frame");
    }
    if (dir == Direction::kDownlink) {
        const auto entry = tbl.dl(slot_index);
        if (!entry) {
            throw InvalidSlotError("no downlink timing row for slot " +
                                   std::to_string(slot_index) + " in table " + tbl.name());
        }
        return entry->k0 + entry->k1 + entry->kd;
    }
    const auto entry = tbl.ul(slot_index);
    if (!entry) {
        throw InvalidSlotError("no uplink timing row for slot " + std::to_string(slot_index) +
                               " in table " + tbl.name());
    }
    return entry->k2 + entry->ku;
}

RetxTimingTable default_timing_table(const FrameConfig& cfg) {
    if (cfg.rat() == Rat::kLte) {
        return RetxTimingTable::lte();
    }
    if (!cfg.tdd_profile().has_value()) {
        throw ConfigError("NR FrameConfig has no TDD profile; no default timing table");
    }
    return *cfg.tdd_profile() == TddProfile::kConfig1 ? RetxTimingTable::nr_config1()
                                                      : RetxTimingTable::nr_config2();
}

} // namespace ranscope
