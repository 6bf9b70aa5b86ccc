#pragma once

// EV battery, daily trip profile and the home/away state machine.

#include "evgrid/load_model.hpp"
#include "evgrid/random_stream.hpp"
#include "evgrid/scenario_config.hpp"

#include <string_view>

namespace evgrid {

struct EvSpec {
    double battery_size_kwh = 0.0;
    double miles_classification = 0.0;
    double soc_arrival_mean = 0.0;   // percent
    int max_current_a = 30;
    double charge_voltage = 240.0;

    /// miles per kWh: miles_classification / battery_size_kwh.
    double mileage_efficiency() const { return miles_classification / battery_size_kwh; }
};

/// Type 1 houses own a 25 kWh / 75 mile EV arriving at 20 % SOC on
/// average; Type 2 a 40 kWh / 140 mile EV arriving at 25 %.
const EvSpec& ev_spec_for(HouseProfile profile);

enum class EvMode { Away, Charging, IdleFull, IdleStopped };

std::string_view to_string(EvMode mode);

inline bool is_plugged(EvMode mode) { return mode != EvMode::Away; }

/// Plugged and not full: the population the fair-sharing controller
/// divides headroom among.
inline bool is_charging_eligible(EvMode mode) {
    return mode == EvMode::Charging || mode == EvMode::IdleStopped;
}

/// Raw Gaussian draws before any clamping.
struct TripDraw {
    double departure = 0.0;
    double arrival = 0.0;
    double distance = 0.0;
    double arrival_soc = 0.0;
};

struct TripProfile {
    int arrival = 0;      // minute of day
    int departure = 0;    // minute of day, always < arrival
    double distance = 0.0;
    double arrival_soc = 0.0;  // percent
};

inline constexpr double kMinArrivalSoc = 5.0;
inline constexpr double kMaxArrivalSoc = 95.0;

/// Draws departure, arrival, distance and arrival SOC, in that order.
TripDraw draw_trip(const EvSpec& spec, const ScenarioConfig& cfg, RandomStream& rng);

/// Rounds times to whole minutes; departure to [0, 1438], arrival to
/// [departure + 1, 1439]; distance floored at 0; SOC to [5, 95].
TripProfile clamp_trip(const TripDraw& draw);

TripProfile sample_trip_profile(const EvSpec& spec, const ScenarioConfig& cfg, RandomStream& rng);

/// min(100, (charge + energy_in * efficiency) / battery_size * 100)
double soc_after_charge(double charge_kwh, double energy_in_kwh, double efficiency,
                        double battery_size_kwh);

/// max(0, (charge - distance / (2 * mileage_eff)) / battery_size * 100)
double soc_after_drive(double charge_kwh, double distance_miles, double mileage_eff,
                       double battery_size_kwh);

struct EvState {
    EvMode mode = EvMode::Away;
    double charge_kwh = 0.0;
    int today_arrival = 0;
    int today_departure = 0;
    double today_distance = 0.0;
    double today_arrival_soc = 0.0;

    double soc_percent(const EvSpec& spec) const { return charge_kwh / spec.battery_size_kwh * 100.0; }
    bool operator==(const EvState&) const = default;
};

/// State at simulation start: home, charge drawn from the arrival-SOC
/// distribution, CHARGING (or IDLE_FULL if that draw saturates).
EvState initial_ev_state(const EvSpec& spec, const ScenarioConfig& cfg, RandomStream& rng);

/// Installs a new day's trip; mode and charge are unchanged.
EvState begin_day(EvState state, const TripProfile& trip);

/// Latches an EVSE command: a plugged, not-full EV is CHARGING under a
/// non-zero command and IDLE_STOPPED under zero.
EvState apply_command(EvState state, int amps);

struct StepOptions {
    SocMode soc_mode = SocMode::SampledSoc;
    int tick_minutes = 1;
};

/// Ends the tick starting at `minute_of_day`: integrates `energy_in` while
/// home, saturates to IDLE_FULL, then fires departure and arrival events
/// whose minute falls in [minute_of_day, minute_of_day + tick_minutes).
/// Throws std::logic_error for energy while AWAY or negative energy.
EvState step_ev(const EvState& state, const EvSpec& spec, int minute_of_day, double energy_in,
                double efficiency, const StepOptions& options = {});

}  // namespace evgrid
