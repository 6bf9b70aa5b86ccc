#include "evgrid/ev_fleet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evgrid {

namespace {

const EvSpec kType1Ev{25.0, 75.0, 20.0, 30, 240.0};
const EvSpec kType2Ev{40.0, 140.0, 25.0, 30, 240.0};

void require_battery(double battery_size_kwh) {
    if (!(battery_size_kwh > 0.0)) throw std::invalid_argument("battery size must be > 0");
}

bool fires(int event_minute, int minute_of_day, int tick_minutes) {
    return event_minute >= minute_of_day && event_minute < minute_of_day + tick_minutes;
}

}  // namespace

const EvSpec& ev_spec_for(HouseProfile profile) {
    return profile == HouseProfile::Type2 ? kType2Ev : kType1Ev;
}

std::string_view to_string(EvMode mode) {
    switch (mode) {
        case EvMode::Away: return "AWAY";
        case EvMode::Charging: return "CHARGING";
        case EvMode::IdleFull: return "IDLE_FULL";
        case EvMode::IdleStopped: return "IDLE_STOPPED";
    }
    return "?";
}

TripDraw draw_trip(const EvSpec& spec, const ScenarioConfig& cfg, RandomStream& rng) {
    TripDraw d;
    d.departure = rng.gaussian(cfg.departure_mean, cfg.departure_std);
    d.arrival = rng.gaussian(cfg.arrival_mean, cfg.arrival_std);
    d.distance = rng.gaussian(cfg.distance_mean, cfg.distance_std);
    d.arrival_soc = rng.gaussian(spec.soc_arrival_mean, cfg.soc_std);
    return d;
}

TripProfile clamp_trip(const TripDraw& d) {
    TripProfile t;
    t.departure = static_cast<int>(std::clamp(std::round(d.departure), 0.0, kMinutesPerDay - 2.0));
    t.arrival = static_cast<int>(
        std::clamp(std::round(d.arrival), t.departure + 1.0, kMinutesPerDay - 1.0));
    t.distance = std::max(0.0, d.distance);
    t.arrival_soc = std::clamp(d.arrival_soc, kMinArrivalSoc, kMaxArrivalSoc);
    return t;
}

TripProfile sample_trip_profile(const EvSpec& spec, const ScenarioConfig& cfg, RandomStream& rng) {
    return clamp_trip(draw_trip(spec, cfg, rng));
}

double soc_after_charge(double charge_kwh, double energy_in_kwh, double efficiency,
                        double battery_size_kwh) {
    require_battery(battery_size_kwh);
    return std::min(100.0, (charge_kwh + energy_in_kwh * efficiency) / battery_size_kwh * 100.0);
}

double soc_after_drive(double charge_kwh, double distance_miles, double mileage_eff,
                       double battery_size_kwh) {
    require_battery(battery_size_kwh);
    if (!(mileage_eff > 0.0)) throw std::invalid_argument("mileage efficiency must be > 0");
    return std::max(0.0,
                    (charge_kwh - distance_miles / (2.0 * mileage_eff)) / battery_size_kwh * 100.0);
}

EvState initial_ev_state(const EvSpec& spec, const ScenarioConfig& cfg, RandomStream& rng) {
    const double soc =
        std::clamp(rng.gaussian(spec.soc_arrival_mean, cfg.soc_std), kMinArrivalSoc, kMaxArrivalSoc);
    EvState s;
    s.charge_kwh = soc / 100.0 * spec.battery_size_kwh;
    s.mode = s.charge_kwh >= spec.battery_size_kwh ? EvMode::IdleFull : EvMode::Charging;
    return s;
}

EvState begin_day(EvState state, const TripProfile& trip) {
    state.today_arrival = trip.arrival;
    state.today_departure = trip.departure;
    state.today_distance = trip.distance;
    state.today_arrival_soc = trip.arrival_soc;
    return state;
}

EvState apply_command(EvState state, int amps) {
    if (is_charging_eligible(state.mode)) {
        state.mode = amps > 0 ? EvMode::Charging : EvMode::IdleStopped;
    }
    return state;
}

EvState step_ev(const EvState& state, const EvSpec& spec, int minute_of_day, double energy_in,
                double efficiency, const StepOptions& options) {
    if (energy_in < 0.0) throw std::logic_error("step_ev: negative energy");
    if (state.mode == EvMode::Away && energy_in > 0.0) {
        throw std::logic_error("step_ev: energy delivered to an EV that is away");
    }
    EvState next = state;
    if (is_plugged(next.mode) && energy_in > 0.0) {
        next.charge_kwh = std::min(spec.battery_size_kwh, next.charge_kwh + energy_in * efficiency);
    }
    if (is_plugged(next.mode) && next.charge_kwh >= spec.battery_size_kwh) {
        next.charge_kwh = spec.battery_size_kwh;
        next.mode = EvMode::IdleFull;
    }

    if (is_plugged(next.mode) && fires(next.today_departure, minute_of_day, options.tick_minutes)) {
        next.mode = EvMode::Away;
    }
    if (next.mode == EvMode::Away && fires(next.today_arrival, minute_of_day, options.tick_minutes)) {
        if (options.soc_mode == SocMode::SampledSoc) {
            next.charge_kwh = next.today_arrival_soc / 100.0 * spec.battery_size_kwh;
        } else {
            next.charge_kwh = soc_after_drive(next.charge_kwh, next.today_distance,
                                              spec.mileage_efficiency(), spec.battery_size_kwh) /
                              100.0 * spec.battery_size_kwh;
        }
        next.mode = next.charge_kwh >= spec.battery_size_kwh ? EvMode::IdleFull : EvMode::Charging;
    }
    return next;
}

}  // namespace evgrid
