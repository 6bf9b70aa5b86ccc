#pragma once

// House appliance ratings and the duty-fraction load model.

#include "evgrid/random_stream.hpp"
#include "evgrid/scenario_config.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace evgrid {

enum class HouseProfile { Type1, Type2 };

std::string_view to_string(HouseProfile profile);

inline constexpr std::size_t kApplianceCount = 8;

/// Canonical appliance order shared by both profiles:
/// lights, dishwasher, water_heater, clothes_washer, miscellaneous,
/// compressor, oven, dryer.
std::span<const std::string_view, kApplianceCount> profile_appliance_names();

struct ApplianceRating {
    std::string_view name;
    double rated_kw = 0.0;
};

enum class ThermalIntegrity { Normal, AboveAverage };

/// One house type. Only `appliances` enters the load equation; the rest is
/// descriptive metadata with no thermal model behind it.
struct HouseProfileSpec {
    HouseProfile profile;
    std::array<ApplianceRating, kApplianceCount> appliances;
    int stories;
    double floor_area_sqft;
    int occupants;
    ThermalIntegrity thermal_integrity;
    double heating_setpoint_f;
    double cooling_setpoint_f;
    double water_tank_gal;
    double oven_setpoint_f;
    bool gas_heating;

    double total_rated_kw() const;
};

const HouseProfileSpec& house_profile_spec(HouseProfile profile);

/// Schedules in canonical appliance order.
using ApplianceSchedules = std::array<ScheduleSpec, kApplianceCount>;

ApplianceSchedules resolve_schedules(const ScenarioBundle& bundle);

/// Per-appliance multiplicative factors for one house and one day.
struct DailyLoadInstance {
    int house_id = 0;
    std::int64_t day_index = 0;
    std::array<double, kApplianceCount> multipliers{};
};

inline constexpr double kMaxMultiplier = 2.0;

/// Draws one factor per appliance, N(1, jitter_cv) clamped to [0, 2], in
/// canonical order. `rng` should be the (ApplianceJitter, house, day)
/// substream.
DailyLoadInstance draw_daily_multipliers(int house_id, std::int64_t day_index,
                                         const ApplianceSchedules& schedules, RandomStream& rng);

/// rated_kw * duty[hour] * multiplier. Throws std::out_of_range for a
/// minute outside [0, 1440).
double appliance_load(const ApplianceRating& rating, const ScheduleSpec& schedule,
                      double multiplier, int minute_of_day);

double house_load(HouseProfile profile, const DailyLoadInstance& instance,
                  const ApplianceSchedules& schedules, int minute_of_day);

}  // namespace evgrid
