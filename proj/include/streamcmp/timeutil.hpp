#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace streamcmp {

using Timestamp = std::chrono::sys_seconds;
using Seconds = std::chrono::seconds;

/// Parses `YYYY-MM-DDTHH:MM:SS[.fff](Z|+00:00)`. Fractional seconds are
/// truncated; non-UTC offsets are rejected.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

/// Durations like `15m`, `90s`, `1h`, `2d`, or bare seconds.
std::optional<Seconds> parse_duration(std::string_view text);
std::string format_duration(Seconds d);

// Floor to a multiple of `width` counted from the epoch.
inline Timestamp floor_to(Timestamp t, Seconds width) {
    auto c = t.time_since_epoch().count();
    auto w = width.count();
    auto q = c / w;
    if (c % w != 0 && c < 0) --q;
    return Timestamp{Seconds{q * w}};
}

}  // namespace streamcmp
