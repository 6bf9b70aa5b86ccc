#pragma once

// Scenario, topology and schedule inputs.
//
// Scenario and topology files are flat `key=value` lines with `#` comments;
// schedules are CSV rows `name,h0,...,h23[,jitter_cv]`. All parsers are pure
// and return fully defaulted, validated values or throw ConfigError.

#include "evgrid/timestamp.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace evgrid {

/// Validation or syntax failure in an input file. `line` and `column` are
/// 1-based; zero means the error is not tied to a specific line (e.g. a
/// cross-check against a defaulted value).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string message, std::string key, int line, int column = 0);

    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string detail_;
    std::string key_;
    int line_;
    int column_;
};

enum class Season { Winter, Summer };
enum class SocMode { SampledSoc, DistanceDriven };

std::string_view to_string(Season season);
std::string_view to_string(SocMode mode);

struct ScenarioConfig {
    std::uint64_t seed = 0;
    double penetration_rate = 0.0;
    bool coordinated = false;
    Season season = Season::Winter;
    Timestamp start = Timestamp::from_civil(2012, 1, 3);
    Timestamp end = Timestamp::from_civil(2012, 1, 5);
    int tick_minutes = 1;

    double arrival_mean = 1050.0;    // minute of day, 17:30
    double arrival_std = 60.0;
    double departure_mean = 450.0;   // minute of day, 07:30
    double departure_std = 60.0;
    double soc_std = 5.0;            // percentage points
    double charge_efficiency = 0.9;
    double distance_mean = 30.0;     // miles
    double distance_std = 10.0;
    SocMode soc_mode = SocMode::SampledSoc;

    std::int64_t tick_count() const { return (end.minutes - start.minutes) / tick_minutes; }

    bool operator==(const ScenarioConfig&) const = default;
};

struct HouseRange {
    int min = 3;
    int max = 7;
    bool operator==(const HouseRange&) const = default;
};

struct TopologySpec {
    int node_count = 13;
    int total_houses = 1000;
    HouseRange houses_per_transformer;
    double kva_per_house = 5.0;
    double substation_rating = 5000.0;      // kVA
    double primary_voltage = 33000.0;
    double secondary_voltage_mv = 2400.0;
    double service_voltage = 120.0;
    double type2_fraction = 0.5;

    bool operator==(const TopologySpec&) const = default;
};

inline constexpr std::size_t kHoursPerDay = 24;

struct ScheduleSpec {
    std::string appliance_name;
    std::array<double, kHoursPerDay> hourly_duty{};
    double jitter_cv = 0.15;

    bool operator==(const ScheduleSpec&) const = default;
};

ScenarioConfig parse_scenario(std::string_view text);
TopologySpec parse_topology(std::string_view text);
std::vector<ScheduleSpec> parse_schedules(std::string_view text);

/// Canonical text form; parse_scenario(render_scenario(c)) == c.
std::string render_scenario(const ScenarioConfig& config);
std::string render_topology(const TopologySpec& topo);
std::string render_schedules(const std::vector<ScheduleSpec>& schedules);

/// Field-level invariants; throws ConfigError with key and line 0.
void validate(const ScenarioConfig& config);
void validate(const TopologySpec& topo);

/// Immutable, cross-checked input set consumed by the engine.
class ScenarioBundle {
public:
    const ScenarioConfig& scenario() const { return scenario_; }
    const TopologySpec& topology() const { return topology_; }
    const std::vector<ScheduleSpec>& schedules() const { return schedules_; }

    /// Schedule for `appliance`; the bundle guarantees every profile
    /// appliance is present.
    const ScheduleSpec& schedule_for(std::string_view appliance) const;

    /// Copy with scenario-level overrides (used by sweeps and the CLI).
    ScenarioBundle with_run(double penetration_rate, std::uint64_t seed) const;
    ScenarioBundle with_coordinated(bool coordinated) const;

private:
    friend ScenarioBundle validate_bundle(ScenarioConfig, TopologySpec, std::vector<ScheduleSpec>);
    ScenarioBundle(ScenarioConfig s, TopologySpec t, std::vector<ScheduleSpec> sch)
        : scenario_(std::move(s)), topology_(std::move(t)), schedules_(std::move(sch)) {}

    ScenarioConfig scenario_;
    TopologySpec topology_;
    std::vector<ScheduleSpec> schedules_;
};

ScenarioBundle validate_bundle(ScenarioConfig scenario, TopologySpec topo,
                               std::vector<ScheduleSpec> schedules);

/// Default schedules shipped for each season (also in data/).
std::string_view default_schedule_csv(Season season);
std::vector<ScheduleSpec> default_schedules(Season season);

/// All-defaults bundle: the 1000-house winter setup.
ScenarioBundle default_bundle();

}  // namespace evgrid
