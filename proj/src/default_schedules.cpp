#include "evgrid/scenario_config.hpp"

namespace evgrid {

namespace {

// Keep in sync with data/schedules_winter.csv and data/schedules_summer.csv.
// Evening-peaked fixtures: lighting and cooking dominate 17:00-22:00, water
// heating has a morning and an evening peak, and the summer set shifts load
// onto the compressor in the afternoon.

constexpr std::string_view kWinter = R"(lights,0.05,0.04,0.04,0.04,0.05,0.1,0.3,0.4,0.3,0.12,0.1,0.1,0.1,0.1,0.1,0.12,0.2,0.45,0.7,0.9,0.85,0.7,0.45,0.2,0.15
dishwasher,0.01,0,0,0,0,0.01,0.02,0.05,0.06,0.04,0.03,0.03,0.04,0.03,0.03,0.03,0.04,0.05,0.08,0.12,0.14,0.1,0.05,0.02,0.15
water_heater,0.03,0.02,0.02,0.02,0.03,0.06,0.15,0.2,0.16,0.08,0.06,0.05,0.05,0.05,0.05,0.05,0.06,0.08,0.1,0.12,0.11,0.09,0.06,0.04,0.15
clothes_washer,0,0,0,0,0,0.01,0.03,0.05,0.06,0.06,0.06,0.05,0.05,0.05,0.04,0.04,0.05,0.06,0.07,0.08,0.07,0.05,0.03,0.01,0.15
miscellaneous,0.25,0.22,0.2,0.2,0.2,0.22,0.3,0.35,0.3,0.25,0.25,0.25,0.25,0.25,0.25,0.28,0.32,0.4,0.45,0.5,0.5,0.45,0.38,0.3,0.15
compressor,0.05,0.05,0.05,0.05,0.05,0.05,0.05,0.05,0.05,0.05,0.06,0.06,0.07,0.07,0.07,0.07,0.06,0.06,0.06,0.06,0.05,0.05,0.05,0.05,0.15
oven,0,0,0,0,0,0,0.02,0.04,0.03,0.01,0.01,0.02,0.04,0.03,0.01,0.02,0.05,0.12,0.15,0.09,0.04,0.02,0.01,0,0.15
dryer,0,0,0,0,0,0,0.01,0.02,0.03,0.04,0.04,0.04,0.04,0.04,0.04,0.04,0.05,0.06,0.07,0.08,0.07,0.05,0.03,0.01,0.15
)";

constexpr std::string_view kSummer = R"(lights,0.04,0.03,0.03,0.03,0.03,0.05,0.12,0.18,0.12,0.06,0.05,0.05,0.05,0.05,0.05,0.06,0.08,0.15,0.3,0.55,0.8,0.75,0.5,0.2,0.15
dishwasher,0.01,0,0,0,0,0.01,0.02,0.05,0.06,0.04,0.03,0.03,0.04,0.03,0.03,0.03,0.04,0.05,0.08,0.12,0.14,0.1,0.05,0.02,0.15
water_heater,0.02,0.02,0.02,0.02,0.02,0.05,0.12,0.16,0.13,0.06,0.05,0.04,0.04,0.04,0.04,0.04,0.05,0.07,0.09,0.1,0.09,0.07,0.05,0.03,0.15
clothes_washer,0,0,0,0,0,0.01,0.03,0.05,0.06,0.06,0.06,0.05,0.05,0.05,0.04,0.04,0.05,0.06,0.07,0.08,0.07,0.05,0.03,0.01,0.15
miscellaneous,0.25,0.22,0.2,0.2,0.2,0.22,0.3,0.35,0.3,0.25,0.25,0.25,0.25,0.25,0.25,0.28,0.32,0.4,0.45,0.5,0.5,0.45,0.38,0.3,0.15
compressor,0.2,0.15,0.12,0.1,0.1,0.1,0.12,0.15,0.2,0.28,0.35,0.42,0.5,0.58,0.65,0.7,0.72,0.72,0.68,0.6,0.5,0.4,0.32,0.25,0.15
oven,0,0,0,0,0,0,0.02,0.04,0.03,0.01,0.01,0.02,0.04,0.03,0.01,0.02,0.05,0.1,0.13,0.08,0.04,0.02,0.01,0,0.15
dryer,0,0,0,0,0,0,0.01,0.02,0.03,0.04,0.04,0.04,0.04,0.04,0.04,0.04,0.05,0.06,0.07,0.08,0.07,0.05,0.03,0.01,0.15
)";

}  // namespace

std::string_view default_schedule_csv(Season season) {
    return season == Season::Summer ? kSummer : kWinter;
}

}  // namespace evgrid
