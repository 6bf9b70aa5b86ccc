#pragma once

#include "evgrid/ev_fleet.hpp"

namespace evgrid {

inline constexpr int kMaxEvseAmps = 30;
inline constexpr double kEvseVoltage = 240.0;

/// Home charger with a whole-ampere current command in [0, 30].
struct Evse {
    int id = 0;
    int house_id = 0;
    int commanded_amps = 0;
    double voltage = kEvseVoltage;

    bool operator==(const Evse&) const = default;
};

/// Throws std::out_of_range unless 0 <= amps <= 30.
Evse set_amperage(Evse evse, int amps);

/// voltage * commanded_amps / 1000 while the EV is CHARGING, otherwise 0.
double delivered_power(const Evse& evse, EvMode ev_mode);

/// power_kw * tick_minutes / 60
double energy_per_tick(double power_kw, int tick_minutes);

/// What the EVSE reads back from its EV.
struct EvseStatus {
    int evse_id = 0;
    EvMode mode = EvMode::Away;
    double soc = 0.0;                  // percent
    double battery_size_kwh = 0.0;
    int next_departure = 0;            // minute of day
    double next_trip_distance = 0.0;   // miles
    double miles_classification = 0.0;
    bool plugged = false;
    double current_rate_kw = 0.0;
};

EvseStatus report_status(const Evse& evse, const EvState& ev, const EvSpec& spec);

}  // namespace evgrid
