#pragma once

// Minute-resolution simulation loop.
//
// Each tick runs these phases in order:
//   1. at a new calendar day, draw per-house appliance multipliers and per-EV
//      trip profiles from keyed substreams;
//   2. evaluate house base loads;
//   3. evaluate EVSE power from the latched commands;
//   4. coordinated runs only: snapshot every transformer (T_o = base + EV
//      power from step 3), run the fair-sharing controller, latch the new
//      commands and re-evaluate EVSE power;
//   5. record transformer output = base + EVSE power;
//   6. advance every EV with the energy delivered this tick;
//   7. advance the clock.
// The controller therefore reacts to the base load of the minute it acts in,
// using the EV rates that were flowing when it sampled.

#include "evgrid/coordinator.hpp"
#include "evgrid/ev_fleet.hpp"
#include "evgrid/evse.hpp"
#include "evgrid/grid.hpp"
#include "evgrid/load_model.hpp"
#include "evgrid/scenario_config.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace evgrid {

struct RunOptions {
    bool record_ev_traces = false;
    bool record_control_log = false;
};

/// One EV during one tick, sampled after commands are latched: `mode`,
/// `amps` and `charge_kwh` hold at the start of the tick and
/// `energy_in_kwh` is what the EVSE delivered during it.
struct EvTraceSample {
    std::int64_t tick = 0;
    int ev_id = 0;
    int house_id = 0;
    int transformer_id = 0;
    EvMode mode = EvMode::Away;
    int amps = 0;
    double charge_kwh = 0.0;
    double soc_percent = 0.0;
    double energy_in_kwh = 0.0;
};

struct ControlLogEntry {
    std::int64_t tick = 0;
    ControlDecision decision;
};

struct SimClock {
    Timestamp current;
    int tick_minutes = 1;
    std::int64_t tick_index = 0;

    int minute_of_day() const { return current.minute_of_day(); }
    std::int64_t day_index(const Timestamp& start) const {
        return current.day_number() - start.day_number();
    }
};

struct SimulationResult {
    ScenarioConfig scenario;
    Grid grid;
    std::uint64_t grid_digest = 0;
    std::int64_t tick_count = 0;

    /// Transformer-major matrices: row = transformer id, column = tick.
    std::vector<double> output_kw;
    std::vector<double> base_kw;

    std::vector<EvTraceSample> ev_traces;
    std::vector<ControlLogEntry> control_log;

    /// Ticks where base <= rating but output > rating (+1e-9).
    std::int64_t overshoot_violations = 0;

    std::span<const double> output_series(int transformer_id) const;
    std::span<const double> base_series(int transformer_id) const;
    int transformer_count() const { return static_cast<int>(grid.transformers.size()); }
    int tick_minutes() const { return scenario.tick_minutes; }
};

/// Stepwise simulation over a validated bundle.
class Simulation {
public:
    explicit Simulation(const ScenarioBundle& bundle, RunOptions options = {});

    bool done() const { return clock_.tick_index >= result_.tick_count; }
    void tick();

    const SimClock& clock() const { return clock_; }
    const Grid& grid() const { return result_.grid; }
    const std::vector<EvState>& ev_states() const { return ev_states_; }
    const std::vector<Evse>& evses() const { return evses_; }
    /// House id owning each EV, in EV id order.
    const std::vector<int>& ev_houses() const { return ev_houses_; }

    /// Output recorded at the most recent tick, per transformer.
    std::span<const double> last_output() const;

    SimulationResult finish() &&;

private:
    void start_day(std::int64_t day_index);

    ScenarioConfig scenario_;
    RunOptions options_;
    ApplianceSchedules schedules_;
    SimClock clock_;
    std::int64_t current_day_ = -1;

    std::vector<DailyLoadInstance> daily_;   // by house id
    std::vector<int> ev_houses_;             // by EV id
    std::vector<int> ev_transformer_;        // by EV id
    std::vector<std::vector<int>> transformer_evs_;
    std::vector<EvState> ev_states_;
    std::vector<Evse> evses_;

    std::vector<double> house_base_;
    std::vector<double> ev_power_;
    std::vector<double> last_output_;

    SimulationResult result_;
};

SimulationResult run(const ScenarioBundle& bundle, const RunOptions& options = {});

struct SweepRun {
    double penetration_rate = 0.0;
    std::uint64_t seed = 0;
};

/// One run per (rate, seed) pair, rate-major, executed on worker threads.
/// Output order matches input order. Throws std::invalid_argument for an
/// empty rate or seed list.
std::vector<SimulationResult> sweep(const ScenarioBundle& bundle, std::span<const double> rates,
                                    std::span<const std::uint64_t> seeds,
                                    const RunOptions& options = {}, unsigned max_threads = 0);

}  // namespace evgrid
