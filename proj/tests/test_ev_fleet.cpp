#include <catch2/catch_amalgamated.hpp>

#include "evgrid/ev_fleet.hpp"

#include <cmath>

using namespace evgrid;

TEST_CASE("EV specs per house type", "[ev-fleet]") {
    const auto& t1 = ev_spec_for(HouseProfile::Type1);
    const auto& t2 = ev_spec_for(HouseProfile::Type2);
    CHECK(t1.battery_size_kwh == 25.0);
    CHECK(t1.miles_classification == 75.0);
    CHECK(t1.soc_arrival_mean == 20.0);
    CHECK(t2.battery_size_kwh == 40.0);
    CHECK(t2.miles_classification == 140.0);
    CHECK(t2.soc_arrival_mean == 25.0);
    CHECK(t1.max_current_a == 30);
    CHECK(t1.charge_voltage == 240.0);
    CHECK(t1.mileage_efficiency() == 3.0);
    CHECK(t2.mileage_efficiency() == 3.5);
}

TEST_CASE("soc_after_charge", "[ev-fleet]") {
    // (5 + 0.12 * 0.9) / 25 * 100
    CHECK(soc_after_charge(5.0, 0.12, 0.9, 25.0) == Catch::Approx(20.432).epsilon(1e-12));
    CHECK(soc_after_charge(5.0, 0.0, 0.9, 25.0) == Catch::Approx(20.0).epsilon(1e-12));
    CHECK(soc_after_charge(24.99, 1.0, 1.0, 25.0) == 100.0);
    CHECK_THROWS_AS(soc_after_charge(1.0, 1.0, 0.9, 0.0), std::invalid_argument);
}

TEST_CASE("soc_after_drive keeps the factor of two", "[ev-fleet]") {
    // (25 - 30 / (2 * 3)) / 25 * 100
    CHECK(soc_after_drive(25.0, 30.0, 3.0, 25.0) == Catch::Approx(80.0).epsilon(1e-12));
    CHECK(soc_after_drive(12.5, 0.0, 3.0, 25.0) == Catch::Approx(50.0).epsilon(1e-12));
    CHECK(soc_after_drive(25.0, 1e6, 3.0, 25.0) == 0.0);
    CHECK_THROWS_AS(soc_after_drive(1.0, 1.0, 3.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(soc_after_drive(1.0, 1.0, 0.0, 25.0), std::invalid_argument);
}

TEST_CASE("trip profile with zero spread sits on the means", "[ev-fleet]") {
    ScenarioConfig cfg;
    cfg.arrival_std = cfg.departure_std = cfg.distance_std = cfg.soc_std = 0.0;
    auto rng = derive_stream(1, StreamPurpose::EvTrip, 0, 0);
    const auto t = sample_trip_profile(ev_spec_for(HouseProfile::Type1), cfg, rng);
    CHECK(t.arrival == 17 * 60 + 30);
    CHECK(t.departure == 7 * 60 + 30);
    CHECK(t.arrival_soc == 20.0);
    CHECK(t.distance == 30.0);
}

TEST_CASE("arrival sample mean", "[ev-fleet]") {
    const ScenarioConfig cfg;
    double sum = 0.0;
    for (int i = 0; i < 10000; ++i) {
        auto rng = derive_stream(2, StreamPurpose::EvTrip, static_cast<std::uint64_t>(i), 0);
        sum += sample_trip_profile(ev_spec_for(HouseProfile::Type1), cfg, rng).arrival;
    }
    CHECK(sum / 10000 == Catch::Approx(1050.0).margin(2.0));
}

TEST_CASE("clamped trips always depart before arriving", "[ev-fleet][property]") {
    auto gen = derive_stream(3, StreamPurpose::EvTrip, 99, 0);
    for (int i = 0; i < 2000; ++i) {
        ScenarioConfig cfg;
        cfg.arrival_mean = gen.uniform() * 1439;
        cfg.departure_mean = gen.uniform() * 1439;
        cfg.arrival_std = gen.uniform() * 600;
        cfg.departure_std = gen.uniform() * 600;
        cfg.soc_std = gen.uniform() * 100;
        cfg.distance_std = gen.uniform() * 100;
        const auto t = sample_trip_profile(ev_spec_for(HouseProfile::Type2), cfg, gen);
        REQUIRE(t.departure >= 0);
        REQUIRE(t.departure < t.arrival);
        REQUIRE(t.arrival < kMinutesPerDay);
        REQUIRE(t.distance >= 0.0);
        REQUIRE(t.arrival_soc >= kMinArrivalSoc);
        REQUIRE(t.arrival_soc <= kMaxArrivalSoc);
    }
    const auto squeezed = clamp_trip({1439.7, 3.0, -5.0, 120.0});
    CHECK(squeezed.departure == 1438);
    CHECK(squeezed.arrival == 1439);
    CHECK(squeezed.distance == 0.0);
    CHECK(squeezed.arrival_soc == 95.0);
}

TEST_CASE("step_ev state chart", "[ev-fleet]") {
    const auto& spec = ev_spec_for(HouseProfile::Type1);
    EvState away;
    away.mode = EvMode::Away;
    away.charge_kwh = 10.0;
    away = begin_day(away, {1050, 450, 30.0, 20.0});

    SECTION("arrival in sampled mode sets charge from arrival SOC") {
        const auto s = step_ev(away, spec, 1050, 0.0, 0.9);
        CHECK(s.mode == EvMode::Charging);
        CHECK(s.charge_kwh == Catch::Approx(5.0).epsilon(1e-12));
        CHECK(step_ev(away, spec, 1049, 0.0, 0.9).mode == EvMode::Away);
    }
    SECTION("arrival in distance mode applies the discharge equation") {
        const auto s = step_ev(away, spec, 1050, 0.0, 0.9, {SocMode::DistanceDriven, 1});
        CHECK(s.mode == EvMode::Charging);
        CHECK(s.charge_kwh == Catch::Approx(10.0 - 30.0 / 6.0).epsilon(1e-12));
    }
    SECTION("a full battery goes idle and accepts nothing more") {
        EvState s = away;
        s.mode = EvMode::Charging;
        s.charge_kwh = 24.95;
        s = step_ev(s, spec, 100, 0.12, 0.9);
        CHECK(s.mode == EvMode::IdleFull);
        CHECK(s.charge_kwh == 25.0);
        const auto again = step_ev(s, spec, 101, 0.0, 0.9);
        CHECK(again == s);
    }
    SECTION("charging to exactly full") {
        EvState s = away;
        s.mode = EvMode::Charging;
        s.charge_kwh = 25.0;
        CHECK(step_ev(s, spec, 100, 0.0, 0.9).mode == EvMode::IdleFull);
    }
    SECTION("departure from any home mode") {
        for (auto mode : {EvMode::Charging, EvMode::IdleFull, EvMode::IdleStopped}) {
            EvState s = away;
            s.mode = mode;
            s.charge_kwh = mode == EvMode::IdleFull ? 25.0 : 12.0;
            CHECK(step_ev(s, spec, 450, 0.0, 0.9).mode == EvMode::Away);
            CHECK(step_ev(s, spec, 449, 0.0, 0.9).mode == mode);
        }
    }
    SECTION("energy while away is a contract violation") {
        CHECK_THROWS_AS(step_ev(away, spec, 600, 0.12, 0.9), std::logic_error);
        EvState s = away;
        s.mode = EvMode::Charging;
        CHECK_THROWS_AS(step_ev(s, spec, 600, -0.1, 0.9), std::logic_error);
    }
    SECTION("coarser ticks fire events inside the tick") {
        CHECK(step_ev(away, spec, 1050 - 10, 0.0, 0.9, {SocMode::SampledSoc, 15}).mode == EvMode::Charging);
        CHECK(step_ev(away, spec, 1050 - 15, 0.0, 0.9, {SocMode::SampledSoc, 15}).mode == EvMode::Away);
    }
}

TEST_CASE("apply_command toggles charging and stopped", "[ev-fleet]") {
    EvState s;
    s.mode = EvMode::Charging;
    CHECK(apply_command(s, 0).mode == EvMode::IdleStopped);
    s.mode = EvMode::IdleStopped;
    CHECK(apply_command(s, 12).mode == EvMode::Charging);
    s.mode = EvMode::IdleFull;
    CHECK(apply_command(s, 30).mode == EvMode::IdleFull);
    s.mode = EvMode::Away;
    CHECK(apply_command(s, 30).mode == EvMode::Away);
}

TEST_CASE("random step sequences keep SOC bounded and conserve energy", "[ev-fleet][property]") {
    auto gen = derive_stream(5, StreamPurpose::EvTrip, 7, 0);
    for (int run = 0; run < 50; ++run) {
        const auto& spec = ev_spec_for(run % 2 ? HouseProfile::Type1 : HouseProfile::Type2);
        ScenarioConfig cfg;
        auto s = initial_ev_state(spec, cfg, gen);
        const double eff = 0.5 + 0.5 * gen.uniform();
        const auto mode = run % 3 ? SocMode::SampledSoc : SocMode::DistanceDriven;
        for (int day = 0; day < 3; ++day) {
            s = begin_day(s, sample_trip_profile(spec, cfg, gen));
            for (int minute = 0; minute < kMinutesPerDay; ++minute) {
                s = apply_command(s, gen.uniform_int(0, 30));
                const double energy = s.mode == EvMode::Charging ? 0.12 * gen.uniform() : 0.0;
                const auto next = step_ev(s, spec, minute, energy, eff, {mode, 1});
                REQUIRE(next.soc_percent(spec) >= 0.0);
                REQUIRE(next.soc_percent(spec) <= 100.0);
                if (is_plugged(s.mode) && is_plugged(next.mode)) {
                    REQUIRE(next.charge_kwh >= s.charge_kwh);
                    if (next.charge_kwh < spec.battery_size_kwh) {
                        REQUIRE(std::abs(next.charge_kwh - s.charge_kwh - eff * energy) <= 1e-12);
                    }
                }
                s = next;
            }
        }
    }
}
