// SPDX-License-Identifier: Apache-2.0

#ifndef RANSCOPE_TYPES_HPP
#define RANSCOPE_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ranscope {

/// Simulation time in integer microseconds. All TTI boundaries are exact
/// multiples, which keeps event matching free of float drift.
using MicrosT = std::int64_t;

enum class Direction { kDownlink, kUplink };

[[nodiscard]] constexpr const char* to_string(Direction dir) noexcept {
    return dir == Direction::kDownlink ? "dl" : "ul";
}

/// Base class for all ranscope errors.
class RanscopeError : public std::runtime_error {
public:
    explicit RanscopeError(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario or configuration violates an invariant.
class ConfigError : public RanscopeError {
public:
    explicit ConfigError(const std::string& what) : RanscopeError(what) {}
};

/// Slot cannot carry data in the requested direction (or has no timing row).
class InvalidSlotError : public RanscopeError {
public:
    explicit InvalidSlotError(const std::string& what) : RanscopeError(what) {}
};

/// Input series is too short for the requested analysis.
class InsufficientDataError : public RanscopeError {
public:
    explicit InsufficientDataError(const std::string& what) : RanscopeError(what) {}
};

/// Trace metadata does not match the scenario it claims to come from.
class ReplayMismatchError : public RanscopeError {
public:
    explicit ReplayMismatchError(const std::string& what) : RanscopeError(what) {}
};

/// Event-list synchronization found no usable alignment.
class NoOverlapError : public RanscopeError {
public:
    explicit NoOverlapError(const std::string& what) : RanscopeError(what) {}
};

/// A probing decision was requested before all monitor intervals finished.
class IncompleteTrialsError : public RanscopeError {
public:
    explicit IncompleteTrialsError(const std::string& what) : RanscopeError(what) {}
};

} // namespace ranscope

#endif // RANSCOPE_TYPES_HPP
