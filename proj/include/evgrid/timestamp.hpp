#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace evgrid {

/// Calendar instant at minute resolution, counted from 1970-01-01T00:00.
struct Timestamp {
    std::int64_t minutes = 0;

    static Timestamp from_civil(int year, unsigned month, unsigned day,
                                int hour = 0, int minute = 0);

    /// Accepts `YYYY-MM-DD`, `YYYY-MM-DDTHH:MM`, `YYYY-MM-DD HH:MM` and an
    /// optional `:00` seconds field. Returns nullopt on any malformed input.
    static std::optional<Timestamp> parse_iso(std::string_view text);

    /// `YYYY-MM-DDTHH:MM`
    std::string to_iso() const;

    int minute_of_day() const;
    std::int64_t day_number() const;

    auto operator<=>(const Timestamp&) const = default;
};

inline constexpr int kMinutesPerDay = 1440;

}  // namespace evgrid
