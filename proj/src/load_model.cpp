#include "evgrid/load_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace evgrid {

namespace {

constexpr std::array<std::string_view, kApplianceCount> kApplianceNames{
    "lights", "dishwasher", "water_heater", "clothes_washer",
    "miscellaneous", "compressor", "oven", "dryer"};

constexpr std::array<double, kApplianceCount> kType1Kw{1.2, 1.0, 3.0, 0.8, 0.7, 0.5, 2.4, 2.0};
constexpr std::array<double, kApplianceCount> kType2Kw{1.5, 1.5, 4.0, 1.0, 0.8, 0.6, 3.0, 3.0};

std::array<ApplianceRating, kApplianceCount> ratings(const std::array<double, kApplianceCount>& kw) {
    std::array<ApplianceRating, kApplianceCount> out{};
    for (std::size_t i = 0; i < kApplianceCount; ++i) out[i] = {kApplianceNames[i], kw[i]};
    return out;
}

const HouseProfileSpec kType1{HouseProfile::Type1, ratings(kType1Kw), 1, 2100.0, 3,
                              ThermalIntegrity::Normal, 68.0, 72.0, 40.0, 500.0, true};
const HouseProfileSpec kType2{HouseProfile::Type2, ratings(kType2Kw), 2, 2500.0, 5,
                              ThermalIntegrity::AboveAverage, 68.0, 72.0, 50.0, 500.0, true};

}  // namespace

std::string_view to_string(HouseProfile profile) {
    return profile == HouseProfile::Type2 ? "type2" : "type1";
}

std::span<const std::string_view, kApplianceCount> profile_appliance_names() {
    return kApplianceNames;
}

double HouseProfileSpec::total_rated_kw() const {
    double sum = 0.0;
    for (const auto& a : appliances) sum += a.rated_kw;
    return sum;
}

const HouseProfileSpec& house_profile_spec(HouseProfile profile) {
    return profile == HouseProfile::Type2 ? kType2 : kType1;
}

ApplianceSchedules resolve_schedules(const ScenarioBundle& bundle) {
    ApplianceSchedules out;
    for (std::size_t i = 0; i < kApplianceCount; ++i) out[i] = bundle.schedule_for(kApplianceNames[i]);
    return out;
}

DailyLoadInstance draw_daily_multipliers(int house_id, std::int64_t day_index,
                                         const ApplianceSchedules& schedules, RandomStream& rng) {
    DailyLoadInstance inst{house_id, day_index, {}};
    for (std::size_t i = 0; i < kApplianceCount; ++i) {
        const double m = rng.gaussian(1.0, schedules[i].jitter_cv);
        inst.multipliers[i] = std::clamp(m, 0.0, kMaxMultiplier);
    }
    return inst;
}

double appliance_load(const ApplianceRating& rating, const ScheduleSpec& schedule,
                      double multiplier, int minute_of_day) {
    if (minute_of_day < 0 || minute_of_day >= kMinutesPerDay) {
        throw std::out_of_range("appliance_load: minute_of_day " + std::to_string(minute_of_day) +
                                " outside [0,1440)");
    }
    return rating.rated_kw * schedule.hourly_duty[static_cast<std::size_t>(minute_of_day / 60)] *
           multiplier;
}

double house_load(HouseProfile profile, const DailyLoadInstance& instance,
                  const ApplianceSchedules& schedules, int minute_of_day) {
    const auto& spec = house_profile_spec(profile);
    double total = 0.0;
    for (std::size_t i = 0; i < kApplianceCount; ++i) {
        total += appliance_load(spec.appliances[i], schedules[i], instance.multipliers[i], minute_of_day);
    }
    return total;
}

}  // namespace evgrid
