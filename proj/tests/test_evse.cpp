#include <catch2/catch_amalgamated.hpp>

#include "evgrid/evse.hpp"

using namespace evgrid;

TEST_CASE("set_amperage bounds", "[evse]") {
    const Evse evse{1, 4, 0, kEvseVoltage};
    CHECK(delivered_power(set_amperage(evse, 30), EvMode::Charging) == Catch::Approx(7.2).epsilon(1e-12));
    CHECK(delivered_power(set_amperage(evse, 0), EvMode::Charging) == 0.0);
    CHECK_THROWS_AS(set_amperage(evse, 31), std::out_of_range);
    CHECK_THROWS_AS(set_amperage(evse, -1), std::out_of_range);
}

TEST_CASE("delivered_power only flows while charging", "[evse]") {
    const Evse full{1, 4, 30, 240.0};
    const Evse half{1, 4, 15, 240.0};
    CHECK(delivered_power(full, EvMode::Charging) == Catch::Approx(7.2).epsilon(1e-12));
    CHECK(delivered_power(half, EvMode::Charging) == Catch::Approx(3.6).epsilon(1e-12));
    for (auto mode : {EvMode::Away, EvMode::IdleFull, EvMode::IdleStopped}) {
        CHECK(delivered_power(full, mode) == 0.0);
    }
    for (int amps = 0; amps <= kMaxEvseAmps; ++amps) {
        const double p = delivered_power(Evse{0, 0, amps, kEvseVoltage}, EvMode::Charging);
        CHECK(p >= 0.0);
        CHECK(p <= 7.2);
    }
}

TEST_CASE("energy_per_tick", "[evse]") {
    CHECK(energy_per_tick(7.2, 1) == Catch::Approx(0.12).epsilon(1e-12));
    CHECK(energy_per_tick(0.0, 1) == 0.0);
    CHECK(energy_per_tick(7.2, 60) == Catch::Approx(7.2).epsilon(1e-12));
}

TEST_CASE("report_status mirrors the EV", "[evse]") {
    const auto& spec = ev_spec_for(HouseProfile::Type1);
    const Evse evse{3, 8, 30, kEvseVoltage};
    EvState ev;
    ev.today_departure = 450;
    ev.today_distance = 31.5;

    ev.mode = EvMode::Away;
    ev.charge_kwh = 10.0;
    auto s = report_status(evse, ev, spec);
    CHECK_FALSE(s.plugged);
    CHECK(s.current_rate_kw == 0.0);

    ev.mode = EvMode::Charging;
    ev.charge_kwh = 5.0;
    const auto ev_before = ev;
    const auto evse_before = evse;
    s = report_status(evse, ev, spec);
    CHECK(s.evse_id == 3);
    CHECK(s.plugged);
    CHECK(s.soc == Catch::Approx(20.0).epsilon(1e-12));
    CHECK(s.battery_size_kwh == 25.0);
    CHECK(s.miles_classification == 75.0);
    CHECK(s.next_departure == 450);
    CHECK(s.next_trip_distance == 31.5);
    CHECK(s.current_rate_kw == Catch::Approx(7.2).epsilon(1e-12));
    CHECK(ev == ev_before);
    CHECK(evse == evse_before);

    ev.mode = EvMode::IdleFull;
    ev.charge_kwh = 25.0;
    s = report_status(evse, ev, spec);
    CHECK(s.plugged);
    CHECK(s.current_rate_kw == 0.0);
    CHECK(s.soc == 100.0);
}
