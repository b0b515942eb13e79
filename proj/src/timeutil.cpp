#include "streamcmp/timeutil.hpp"

#include <charconv>

#include <fmt/format.h>

namespace streamcmp {

namespace {

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    for (std::size_t i = pos; i < pos + len; ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
    return ec == std::errc{} && ptr == s.data() + pos + len;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view s) {
    int y, mo, d, h, mi, sec;
    if (s.size() < 19) return std::nullopt;
    if (!read_int(s, 0, 4, y) || s[4] != '-' || !read_int(s, 5, 2, mo) || s[7] != '-' ||
        !read_int(s, 8, 2, d) || (s[10] != 'T' && s[10] != ' ') || !read_int(s, 11, 2, h) ||
        s[13] != ':' || !read_int(s, 14, 2, mi) || s[16] != ':' || !read_int(s, 17, 2, sec))
        return std::nullopt;
    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == start) return std::nullopt;
    }
    auto rest = s.substr(pos);
    if (rest != "Z" && rest != "+00:00" && rest != "+0000") return std::nullopt;
    if (h > 23 || mi > 59 || sec > 60) return std::nullopt;

    using namespace std::chrono;
    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return Timestamp{sys_days{ymd}.time_since_epoch() + hours{h} + minutes{mi} + seconds{sec}};
}

std::string format_timestamp(Timestamp t) {
    using namespace std::chrono;
    auto days = floor<std::chrono::days>(t);
    year_month_day ymd{days};
    hh_mm_ss hms{t - days};
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                       hms.hours().count(), hms.minutes().count(), hms.seconds().count());
}

std::optional<Seconds> parse_duration(std::string_view s) {
    if (s.empty()) return std::nullopt;
    long long mult = 1;
    switch (s.back()) {
        case 's': mult = 1; s.remove_suffix(1); break;
        case 'm': mult = 60; s.remove_suffix(1); break;
        case 'h': mult = 3600; s.remove_suffix(1); break;
        case 'd': mult = 86400; s.remove_suffix(1); break;
        default: break;
    }
    long long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || value < 0) return std::nullopt;
    return Seconds{value * mult};
}

std::string format_duration(Seconds d) {
    auto c = d.count();
    if (c != 0 && c % 86400 == 0) return fmt::format("{}d", c / 86400);
    if (c != 0 && c % 3600 == 0) return fmt::format("{}h", c / 3600);
    if (c != 0 && c % 60 == 0) return fmt::format("{}m", c / 60);
    return fmt::format("{}s", c);
}

}  // namespace streamcmp
