#include "evgrid/evse.hpp"

#include <stdexcept>
#include <string>

namespace evgrid {

Evse set_amperage(Evse evse, int amps) {
    if (amps < 0 || amps > kMaxEvseAmps) {
        throw std::out_of_range("set_amperage: " + std::to_string(amps) + " A outside [0,30]");
    }
    evse.commanded_amps = amps;
    return evse;
}

double delivered_power(const Evse& evse, EvMode ev_mode) {
    return ev_mode == EvMode::Charging ? evse.voltage * evse.commanded_amps / 1000.0 : 0.0;
}

double energy_per_tick(double power_kw, int tick_minutes) {
    return power_kw * tick_minutes / 60.0;
}

EvseStatus report_status(const Evse& evse, const EvState& ev, const EvSpec& spec) {
    EvseStatus s;
    s.evse_id = evse.id;
    s.mode = ev.mode;
    s.soc = ev.soc_percent(spec);
    s.battery_size_kwh = spec.battery_size_kwh;
    s.next_departure = ev.today_departure;
    s.next_trip_distance = ev.today_distance;
    s.miles_classification = spec.miles_classification;
    s.plugged = is_plugged(ev.mode);
    s.current_rate_kw = delivered_power(evse, ev.mode);
    return s;
}

}  // namespace evgrid
