#include "evgrid/timestamp.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace evgrid {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

bool read_int(std::string_view text, std::size_t pos, std::size_t width, int& out) {
    if (pos + width > text.size()) return false;
    for (std::size_t i = pos; i < pos + width; ++i) {
        if (text[i] < '0' || text[i] > '9') return false;
    }
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + width, out);
    return ec == std::errc{} && ptr == text.data() + pos + width;
}

}  // namespace

Timestamp Timestamp::from_civil(int year, unsigned month, unsigned day, int hour, int minute) {
    using namespace std::chrono;
    const sys_days days{year_month_day{std::chrono::year{year}, std::chrono::month{month},
                                       std::chrono::day{day}}};
    return Timestamp{static_cast<std::int64_t>(days.time_since_epoch().count()) * kMinutesPerDay +
                     hour * 60 + minute};
}

std::optional<Timestamp> Timestamp::parse_iso(std::string_view text) {
    int year = 0, month = 0, day = 0, hour = 0, minute = 0;
    if (!read_int(text, 0, 4, year) || text.size() < 10 || text[4] != '-' ||
        !read_int(text, 5, 2, month) || text[7] != '-' || !read_int(text, 8, 2, day)) {
        return std::nullopt;
    }
    if (text.size() > 10) {
        if (text.size() != 16 && text.size() != 19) return std::nullopt;
        if (text[10] != 'T' && text[10] != ' ') return std::nullopt;
        if (!read_int(text, 11, 2, hour) || text[13] != ':' || !read_int(text, 14, 2, minute)) {
            return std::nullopt;
        }
        if (text.size() == 19) {
            int seconds = 0;
            if (text[16] != ':' || !read_int(text, 17, 2, seconds) || seconds != 0) {
                return std::nullopt;
            }
        }
    }
    using namespace std::chrono;
    const year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                             std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok() || hour > 23 || minute > 59) return std::nullopt;
    return from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day), hour, minute);
}

std::int64_t Timestamp::day_number() const { return floor_div(minutes, kMinutesPerDay); }

int Timestamp::minute_of_day() const {
    return static_cast<int>(minutes - day_number() * kMinutesPerDay);
}

std::string Timestamp::to_iso() const {
    using namespace std::chrono;
    const year_month_day ymd{sys_days{days{day_number()}}};
    const int mod = minute_of_day();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), mod / 60,
                  mod % 60);
    return buf;
}

}  // namespace evgrid
