// SPDX-License-Identifier: Apache-2.0

#include "ranscope/scenario.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace ranscope {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr MicrosT kMinTbsrUs = 5000;
constexpr double kMaxCongestionHz = 1.0;

bool is_data_capable(const FrameConfig& frame, Direction dir, int slot) {
    if (frame.rat() == Rat::kLte) return true;
    const SlotRole role = frame.slot_role(slot);
    if (dir == Direction::kDownlink) {
        // Flexible slots carry downlink data in the measured patterns.
        return role == SlotRole::kDownlink || role == SlotRole::kFlexible;
    }
    return role == SlotRole::kUplink;
}

std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t hash_double(double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    return bits;
}

} // namespace

double CongestionProfile::added_delay_us(MicrosT t) const {
    switch (kind) {
    case Kind::kNone:
        return 0.0;
    case Kind::kSine:
        // Starts at zero and stays non-negative.
        return amplitude_us * 0.5 * (1.0 - std::cos(2.0 * kPi * freq_hz * 1e-6 * static_cast<double>(t)));
    case Kind::kStep:
        if (t >= t_on_us && (t_off_us <= 0 || t < t_off_us)) return amplitude_us;
        return 0.0;
    case Kind::kOnOff: {
        if (freq_hz <= 0.0) return 0.0;
        const double phase = std::fmod(static_cast<double>(t) * 1e-6 * freq_hz, 1.0);
        return phase < duty ? amplitude_us : 0.0;
    }
    }
    return 0.0;
}

const LinkScenario& LinkScenario::validate() const {
    auto check = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError(what);
    };
    check(p_mac_dl >= 0.0 && p_mac_dl <= 1.0, "p_mac_dl outside [0,1]");
    check(p_mac_ul >= 0.0 && p_mac_ul <= 1.0, "p_mac_ul outside [0,1]");
    check(overalloc_prob >= 0.0 && overalloc_prob <= 1.0, "overalloc_prob outside [0,1]");
    check(rlc_event_rate_dl_per_s >= 0.0 && rlc_event_rate_ul_per_s >= 0.0,
          "RLC event rates must be non-negative");
    check(rlc_delay_min_us > 0 && rlc_delay_min_us <= rlc_delay_max_us,
          "RLC delay range must satisfy 0 < min <= max");
    check(t_bsr_us >= kMinTbsrUs, "t_bsr_us below 5000 (configured values start at 5 ms)");
    check(duration_s > 0.0, "duration_s must be positive");
    check(capacity_pps > 0.0, "capacity_pps must be positive");
    check(mss_bytes > 0, "mss_bytes must be positive");
    check(prop_delay_us >= 0, "prop_delay_us must be non-negative");
    check(app_dl.rate_mbps >= 0.0 && app_ul.rate_mbps >= 0.0, "app rates must be non-negative");
    check(app_dl.pkt_bytes > 0 && app_ul.pkt_bytes > 0, "packet sizes must be positive");
    check(app_dl.gap_spread >= 0.0 && app_dl.gap_spread < 1.0 && app_ul.gap_spread >= 0.0 &&
              app_ul.gap_spread < 1.0,
          "gap_spread must lie in [0,1)");
    check(ack_bytes > 0, "ack_bytes must be positive");
    check(grant_target_frac >= 1.0 && grant_target_frac <= 2.0,
          "grant_target_frac must keep t_r + K2 within [T_bsr, 2*T_bsr]");
    check(grant_jitter_frac >= 0.0 && grant_jitter_frac <= 1.0, "grant_jitter_frac outside [0,1]");
    if (congestion.kind == CongestionProfile::Kind::kSine ||
        congestion.kind == CongestionProfile::Kind::kOnOff) {
        check(congestion.freq_hz > 0.0 && congestion.freq_hz <= kMaxCongestionHz,
              "congestion waveform frequency must lie in (0, 1] Hz");
    }
    check(congestion.amplitude_us >= 0.0, "congestion amplitude must be non-negative");

    // Integer-microsecond TTI grid.
    const double tti_f = frame.tti_us();
    check(tti_f == std::floor(tti_f),
          "simulation requires an integer-microsecond TTI (LTE or NR scs_index <= 3)");
    const auto tti_i = static_cast<MicrosT>(tti_f);
    check(t_bsr_us % tti_i == 0, "t_bsr_us must be a multiple of the TTI");

    if (frame.rat() == Rat::kNr) {
        check(frame.tdd_profile().has_value(),
              "NR simulation needs a TDD profile (config1 or config2)");
    }

    // The BSR grid must land on uplink-capable slots, and every grant window
    // [b + T_bsr, b + 2*T_bsr) must contain one. Checked over one hyperperiod.
    const MicrosT frame_us = tti_i * frame.slots_per_frame();
    const MicrosT hyper = std::lcm(t_bsr_us, frame_us);
    const MicrosT epoch = bsr_epoch_us();
    for (MicrosT b = epoch; b < epoch + hyper; b += t_bsr_us) {
        const int slot =
            static_cast<int>((b / tti_i) % static_cast<MicrosT>(frame.slots_per_frame()));
        check(is_data_capable(frame, Direction::kUplink, slot),
              "BSR instant " + std::to_string(b) + " us does not land on an uplink slot");
        bool window_ok = false;
        for (MicrosT t = b + t_bsr_us; t < b + 2 * t_bsr_us; t += tti_i) {
            const int s =
                static_cast<int>((t / tti_i) % static_cast<MicrosT>(frame.slots_per_frame()));
            if (is_data_capable(frame, Direction::kUplink, s)) {
                window_ok = true;
                break;
            }
        }
        check(window_ok, "no uplink slot inside the grant window after BSR at " +
                             std::to_string(b) + " us");
    }
    return *this;
}

MicrosT LinkScenario::tti() const {
    const double tti_f = frame.tti_us();
    if (tti_f != std::floor(tti_f)) {
        throw ConfigError("non-integer TTI");
    }
    return static_cast<MicrosT>(tti_f);
}

MicrosT LinkScenario::bsr_epoch_us() const {
    const MicrosT tti_i = tti();
    for (int slot = 0; slot < frame.slots_per_frame(); ++slot) {
        if (is_data_capable(frame, Direction::kUplink, slot)) {
            return tti_i * slot;
        }
    }
    throw ConfigError("frame has no uplink-capable slot");
}

std::uint64_t LinkScenario::fingerprint() const {
    std::uint64_t h = 0xC0FFEE;
    h = hash_mix(h, static_cast<std::uint64_t>(frame.rat()));
    h = hash_mix(h, static_cast<std::uint64_t>(frame.scs_index()));
    h = hash_mix(h, frame.tdd_profile() ? 1 + static_cast<std::uint64_t>(*frame.tdd_profile()) : 0);
    h = hash_mix(h, std::hash<std::string>{}(timing.name()));
    h = hash_mix(h, hash_double(p_mac_dl));
    h = hash_mix(h, hash_double(p_mac_ul));
    h = hash_mix(h, hash_double(rlc_event_rate_dl_per_s));
    h = hash_mix(h, hash_double(rlc_event_rate_ul_per_s));
    h = hash_mix(h, static_cast<std::uint64_t>(rlc_delay_min_us));
    h = hash_mix(h, static_cast<std::uint64_t>(rlc_delay_max_us));
    h = hash_mix(h, static_cast<std::uint64_t>(t_bsr_us));
    h = hash_mix(h, hash_double(grant_target_frac));
    h = hash_mix(h, hash_double(grant_jitter_frac));
    h = hash_mix(h, hash_double(overalloc_prob));
    h = hash_mix(h, hash_double(capacity_pps));
    h = hash_mix(h, static_cast<std::uint64_t>(mss_bytes));
    h = hash_mix(h, static_cast<std::uint64_t>(prop_delay_us));
    h = hash_mix(h, static_cast<std::uint64_t>(congestion.kind));
    h = hash_mix(h, hash_double(congestion.amplitude_us));
    h = hash_mix(h, hash_double(congestion.freq_hz));
    h = hash_mix(h, hash_double(congestion.duty));
    h = hash_mix(h, static_cast<std::uint64_t>(congestion.t_on_us));
    h = hash_mix(h, static_cast<std::uint64_t>(congestion.t_off_us));
    h = hash_mix(h, congestion.apply_dl ? 1 : 0);
    h = hash_mix(h, congestion.apply_ul ? 1 : 0);
    for (const AppTraffic* app : {&app_dl, &app_ul}) {
        h = hash_mix(h, hash_double(app->rate_mbps));
        h = hash_mix(h, static_cast<std::uint64_t>(app->pkt_bytes));
        h = hash_mix(h, static_cast<std::uint64_t>(app->gap));
        h = hash_mix(h, hash_double(app->gap_spread));
    }
    h = hash_mix(h, acks_enabled ? 1 : 0);
    h = hash_mix(h, static_cast<std::uint64_t>(ack_bytes));
    h = hash_mix(h, seed);
    h = hash_mix(h, hash_double(duration_s));
    return h;
}

MicrosT uplink_buffer_delay(MicrosT arrival_us, MicrosT bsr_epoch_us, MicrosT t_bsr_us,
                            MicrosT grant_latency_us) {
    if (t_bsr_us <= 0) throw ConfigError("t_bsr_us must be positive");
    if (grant_latency_us < t_bsr_us || grant_latency_us > 2 * t_bsr_us) {
        throw ConfigError("grant latency violates T_bsr <= t_r + K2 <= 2*T_bsr");
    }
    // Arrivals exactly on a BSR instant are covered by that report (t_b = 0).
    MicrosT next_bsr = bsr_epoch_us;
    if (arrival_us > bsr_epoch_us) {
        const MicrosT k = (arrival_us - bsr_epoch_us + t_bsr_us - 1) / t_bsr_us;
        next_bsr = bsr_epoch_us + k * t_bsr_us;
    }
    const MicrosT t_b = next_bsr - arrival_us;
    return t_b + grant_latency_us;
}

// --- scenario file I/O ------------------------------------------------------

namespace {

using KvMap = std::map<std::string, std::map<std::string, std::string>>;

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

KvMap parse_sections(std::istream& in, const std::string& origin) {
    KvMap out;
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            out[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || section.empty()) {
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value' inside a section");
        }
        out[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

class SectionReader {
public:
    SectionReader(const KvMap& kv, std::string origin) : kv_(kv), origin_(std::move(origin)) {}

    template <typename Fn>
    void take(const std::string& section, const std::string& key, Fn&& fn) {
        const auto sit = kv_.find(section);
        if (sit == kv_.end()) return;
        const auto kit = sit->second.find(key);
        if (kit == sit->second.end()) return;
        try {
            fn(kit->second);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(origin_ + ": [" + section + "] " + key + ": " + e.what());
        }
        seen_[section].insert(key);
    }

    void reject_unknown() const {
        for (const auto& [section, keys] : kv_) {
            const auto sit = seen_.find(section);
            for (const auto& [key, value] : keys) {
                (void)value;
                if (sit == seen_.end() || !sit->second.count(key)) {
                    throw ConfigError(origin_ + ": unknown key [" + section + "] " + key);
                }
            }
        }
    }

private:
    const KvMap& kv_;
    std::string origin_;
    std::map<std::string, std::set<std::string>> seen_;
};

double to_double(const std::string& s) { return std::stod(s); }
MicrosT to_micros(const std::string& s) { return static_cast<MicrosT>(std::stoll(s)); }
int to_int(const std::string& s) { return std::stoi(s); }

bool to_bool(const std::string& s) {
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    throw ConfigError("expected a boolean, got '" + s + "'");
}

} // namespace

LinkScenario load_scenario(std::istream& in, const std::string& origin) {
    const KvMap kv = parse_sections(in, origin);
    SectionReader reader(kv, origin);
    LinkScenario sc;

    std::string rat = "lte";
    std::string profile = "config1";
    int scs_index = 1;
    std::string timing_file;
    reader.take("link", "rat", [&](const std::string& v) { rat = v; });
    reader.take("link", "tdd_profile", [&](const std::string& v) { profile = v; });
    reader.take("link", "scs_index", [&](const std::string& v) { scs_index = to_int(v); });
    reader.take("link", "timing_table", [&](const std::string& v) { timing_file = v; });
    reader.take("link", "prop_delay_us",
                [&](const std::string& v) { sc.prop_delay_us = to_micros(v); });
    reader.take("link", "capacity_pps",
                [&](const std::string& v) { sc.capacity_pps = to_double(v); });
    reader.take("link", "mss_bytes", [&](const std::string& v) { sc.mss_bytes = to_int(v); });

    if (rat == "lte") {
        sc.frame = FrameConfig::lte();
    } else if (rat == "nr") {
        TddProfile p;
        if (profile == "config1") {
            p = TddProfile::kConfig1;
        } else if (profile == "config2") {
            p = TddProfile::kConfig2;
        } else {
            throw ConfigError(origin + ": unknown tdd_profile '" + profile + "'");
        }
        sc.frame = FrameConfig::nr(scs_index, p);
    } else {
        throw ConfigError(origin + ": unknown rat '" + rat + "'");
    }
    sc.timing = timing_file.empty()
                    ? default_timing_table(sc.frame)
                    : RetxTimingTable::load_file(timing_file, sc.frame.slots_per_frame());

    reader.take("mac", "p_dl", [&](const std::string& v) { sc.p_mac_dl = to_double(v); });
    reader.take("mac", "p_ul", [&](const std::string& v) { sc.p_mac_ul = to_double(v); });

    reader.take("rlc", "event_rate_per_s", [&](const std::string& v) {
        sc.rlc_event_rate_dl_per_s = to_double(v);
        sc.rlc_event_rate_ul_per_s = sc.rlc_event_rate_dl_per_s;
    });
    reader.take("rlc", "event_rate_dl_per_s",
                [&](const std::string& v) { sc.rlc_event_rate_dl_per_s = to_double(v); });
    reader.take("rlc", "event_rate_ul_per_s",
                [&](const std::string& v) { sc.rlc_event_rate_ul_per_s = to_double(v); });
    reader.take("rlc", "delay_min_us",
                [&](const std::string& v) { sc.rlc_delay_min_us = to_micros(v); });
    reader.take("rlc", "delay_max_us",
                [&](const std::string& v) { sc.rlc_delay_max_us = to_micros(v); });

    reader.take("bsr", "t_bsr_us", [&](const std::string& v) { sc.t_bsr_us = to_micros(v); });
    reader.take("bsr", "grant_target_frac",
                [&](const std::string& v) { sc.grant_target_frac = to_double(v); });
    reader.take("bsr", "grant_jitter_frac",
                [&](const std::string& v) { sc.grant_jitter_frac = to_double(v); });
    reader.take("bsr", "overalloc_prob",
                [&](const std::string& v) { sc.overalloc_prob = to_double(v); });

    reader.take("congestion", "waveform", [&](const std::string& v) {
        if (v == "none") {
            sc.congestion.kind = CongestionProfile::Kind::kNone;
        } else if (v == "sine") {
            sc.congestion.kind = CongestionProfile::Kind::kSine;
        } else if (v == "step") {
            sc.congestion.kind = CongestionProfile::Kind::kStep;
        } else if (v == "onoff") {
            sc.congestion.kind = CongestionProfile::Kind::kOnOff;
        } else {
            throw ConfigError("unknown congestion waveform '" + v + "'");
        }
    });
    reader.take("congestion", "amplitude_us",
                [&](const std::string& v) { sc.congestion.amplitude_us = to_double(v); });
    reader.take("congestion", "freq_hz",
                [&](const std::string& v) { sc.congestion.freq_hz = to_double(v); });
    reader.take("congestion", "duty",
                [&](const std::string& v) { sc.congestion.duty = to_double(v); });
    reader.take("congestion", "t_on_us",
                [&](const std::string& v) { sc.congestion.t_on_us = to_micros(v); });
    reader.take("congestion", "t_off_us",
                [&](const std::string& v) { sc.congestion.t_off_us = to_micros(v); });
    reader.take("congestion", "direction", [&](const std::string& v) {
        if (v == "dl") {
            sc.congestion.apply_dl = true;
            sc.congestion.apply_ul = false;
        } else if (v == "ul") {
            sc.congestion.apply_dl = false;
            sc.congestion.apply_ul = true;
        } else if (v == "both") {
            sc.congestion.apply_dl = true;
            sc.congestion.apply_ul = true;
        } else {
            throw ConfigError("congestion direction must be dl, ul, or both");
        }
    });

    auto gap_from = [](const std::string& v) {
        if (v == "uniform") return AppTraffic::Gap::kUniform;
        if (v == "exponential") return AppTraffic::Gap::kExponential;
        throw ConfigError("gap model must be uniform or exponential");
    };
    reader.take("run", "seed", [&](const std::string& v) { sc.seed = std::stoull(v); });
    reader.take("run", "duration_s", [&](const std::string& v) { sc.duration_s = to_double(v); });
    reader.take("run", "dl_rate_mbps",
                [&](const std::string& v) { sc.app_dl.rate_mbps = to_double(v); });
    reader.take("run", "dl_pkt_bytes",
                [&](const std::string& v) { sc.app_dl.pkt_bytes = to_int(v); });
    reader.take("run", "ul_rate_mbps",
                [&](const std::string& v) { sc.app_ul.rate_mbps = to_double(v); });
    reader.take("run", "ul_pkt_bytes",
                [&](const std::string& v) { sc.app_ul.pkt_bytes = to_int(v); });
    reader.take("run", "gap_model", [&](const std::string& v) {
        sc.app_dl.gap = gap_from(v);
        sc.app_ul.gap = sc.app_dl.gap;
    });
    reader.take("run", "gap_spread", [&](const std::string& v) {
        sc.app_dl.gap_spread = to_double(v);
        sc.app_ul.gap_spread = sc.app_dl.gap_spread;
    });
    reader.take("run", "acks", [&](const std::string& v) { sc.acks_enabled = to_bool(v); });
    reader.take("run", "ack_bytes", [&](const std::string& v) { sc.ack_bytes = to_int(v); });

    reader.reject_unknown();
    sc.validate();
    return sc;
}

LinkScenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    return load_scenario(in, path);
}

void save_scenario(const LinkScenario& sc, std::ostream& out) {
    out << "[link]\n";
    out << "rat = " << to_string(sc.frame.rat()) << "\n";
    if (sc.frame.rat() == Rat::kNr) {
        out << "scs_index = " << sc.frame.scs_index() << "\n";
        if (sc.frame.tdd_profile()) {
            out << "tdd_profile = " << to_string(*sc.frame.tdd_profile()) << "\n";
        }
    }
    out << "prop_delay_us = " << sc.prop_delay_us << "\n";
    out << "capacity_pps = " << sc.capacity_pps << "\n";
    out << "mss_bytes = " << sc.mss_bytes << "\n";
    out << "\n[mac]\n";
    out << "p_dl = " << sc.p_mac_dl << "\n";
    out << "p_ul = " << sc.p_mac_ul << "\n";
    out << "\n[rlc]\n";
    out << "event_rate_dl_per_s = " << sc.rlc_event_rate_dl_per_s << "\n";
    out << "event_rate_ul_per_s = " << sc.rlc_event_rate_ul_per_s << "\n";
    out << "delay_min_us = " << sc.rlc_delay_min_us << "\n";
    out << "delay_max_us = " << sc.rlc_delay_max_us << "\n";
    out << "\n[bsr]\n";
    out << "t_bsr_us = " << sc.t_bsr_us << "\n";
    out << "grant_target_frac = " << sc.grant_target_frac << "\n";
    out << "grant_jitter_frac = " << sc.grant_jitter_frac << "\n";
    out << "overalloc_prob = " << sc.overalloc_prob << "\n";
    out << "\n[congestion]\n";
    const char* wf = "none";
    switch (sc.congestion.kind) {
    case CongestionProfile::Kind::kNone: wf = "none"; break;
    case CongestionProfile::Kind::kSine: wf = "sine"; break;
    case CongestionProfile::Kind::kStep: wf = "step"; break;
    case CongestionProfile::Kind::kOnOff: wf = "onoff"; break;
    }
    out << "waveform = " << wf << "\n";
    out << "amplitude_us = " << sc.congestion.amplitude_us << "\n";
    out << "freq_hz = " << sc.congestion.freq_hz << "\n";
    out << "duty = " << sc.congestion.duty << "\n";
    out << "t_on_us = " << sc.congestion.t_on_us << "\n";
    out << "t_off_us = " << sc.congestion.t_off_us << "\n";
    out << "direction = "
        << (sc.congestion.apply_dl && sc.congestion.apply_ul ? "both"
            : sc.congestion.apply_ul                         ? "ul"
                                                             : "dl")
        << "\n";
    out << "\n[run]\n";
    out << "seed = " << sc.seed << "\n";
    out << "duration_s = " << sc.duration_s << "\n";
    out << "dl_rate_mbps = " << sc.app_dl.rate_mbps << "\n";
    out << "dl_pkt_bytes = " << sc.app_dl.pkt_bytes << "\n";
    out << "ul_rate_mbps = " << sc.app_ul.rate_mbps << "\n";
    out << "ul_pkt_bytes = " << sc.app_ul.pkt_bytes << "\n";
    out << "gap_model = "
        << (sc.app_dl.gap == AppTraffic::Gap::kUniform ? "uniform" : "exponential") << "\n";
    out << "gap_spread = " << sc.app_dl.gap_spread << "\n";
    out << "acks = " << (sc.acks_enabled ? 1 : 0) << "\n";
    out << "ack_bytes = " << sc.ack_bytes << "\n";
}

LinkScenario builtin_scenario(const std::string& name) {
    LinkScenario sc;
    if (name == "fig10-lte" || name == "fig10-5g") {
        // RTT jitter reproduction: 2 Mbps downlink probe traffic with random
        // gaps, 40-byte acks on the uplink, no congestion.
        if (name == "fig10-lte") {
            sc.frame = FrameConfig::lte();
            sc.timing = RetxTimingTable::lte();
            sc.rlc_delay_max_us = 100000;
        } else {
            sc.frame = FrameConfig::nr(1, TddProfile::kConfig1);
            sc.timing = RetxTimingTable::nr_config1();
            sc.rlc_delay_max_us = 120000;
        }
        sc.app_dl.rate_mbps = 2.0;
        sc.app_dl.pkt_bytes = 1400;
        sc.acks_enabled = true;
        sc.duration_s = 30.0;
        sc.grant_jitter_frac = 0.2;
    } else if (name == "copa-static" || name == "pcc-static") {
        // Controller-driven downlink over a constrained wired bottleneck;
        // the RAN jitter rides on the ack path.
        sc.frame = FrameConfig::lte();
        sc.timing = RetxTimingTable::lte();
        sc.capacity_pps = 800.0;
        sc.app_dl.rate_mbps = 0.0;
        sc.acks_enabled = true;
        sc.duration_s = 30.0;
    } else if (name == "gcc-jitter") {
        // Uplink media-like flow; the overuse detector watches one-way delay.
        sc.frame = FrameConfig::nr(1, TddProfile::kConfig1);
        sc.timing = RetxTimingTable::nr_config1();
        sc.rlc_delay_max_us = 120000;
        sc.app_ul.rate_mbps = 0.0;
        sc.app_ul.pkt_bytes = 1200;
        sc.duration_s = 60.0;
    } else {
        throw ConfigError("unknown built-in scenario: " + name);
    }
    sc.validate();
    return sc;
}

std::vector<std::string> builtin_scenario_names() {
    return {"fig10-lte", "fig10-5g", "copa-static", "pcc-static", "gcc-jitter"};
}

LinkScenario resolve_scenario(const std::string& name_or_path) {
    for (const auto& name : builtin_scenario_names()) {
        if (name == name_or_path) return builtin_scenario(name);
    }
    return load_scenario_file(name_or_path);
}

} // namespace ranscope
