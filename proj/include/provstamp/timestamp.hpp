// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace provstamp {

/// A UTC instant with nanosecond resolution.
///
/// Accepts ISO 8601 extended date-time text with a mandatory offset
/// ("Z", "+hh:mm", "-hh:mm" or "+hhmm") and optional fractional seconds.
/// Offsets are folded into UTC on ingest; `to_string()` always renders
/// the "Z" form with trailing zeros of the fraction removed.
class Timestamp {
public:
    using Clock = std::chrono::system_clock;
    using TimePoint = std::chrono::sys_time<std::chrono::nanoseconds>;

    Timestamp() = default;
    explicit Timestamp(TimePoint tp) : tp_(tp) {}

    /// Throws Error(InvalidTimestamp) on malformed input.
    static Timestamp parse(std::string_view text);
    static std::optional<Timestamp> try_parse(std::string_view text) noexcept;

    static Timestamp now();

    TimePoint time_point() const noexcept { return tp_; }
    std::string to_string() const;

    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;

private:
    TimePoint tp_{};
};

}  // namespace provstamp
