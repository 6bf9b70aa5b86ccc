#include "evgrid/sim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>

namespace evgrid {

namespace {

constexpr double kOvershootTolerance = 1e-9;

}  // namespace

std::span<const double> SimulationResult::output_series(int transformer_id) const {
    const auto n = static_cast<std::size_t>(tick_count);
    return std::span<const double>(output_kw).subspan(static_cast<std::size_t>(transformer_id) * n, n);
}

std::span<const double> SimulationResult::base_series(int transformer_id) const {
    const auto n = static_cast<std::size_t>(tick_count);
    return std::span<const double>(base_kw).subspan(static_cast<std::size_t>(transformer_id) * n, n);
}

Simulation::Simulation(const ScenarioBundle& bundle, RunOptions options)
    : scenario_(bundle.scenario()), options_(options), schedules_(resolve_schedules(bundle)) {
    clock_.current = scenario_.start;
    clock_.tick_minutes = scenario_.tick_minutes;

    result_.scenario = scenario_;
    result_.grid = build_scenario_grid(bundle);
    result_.grid_digest = grid_digest(result_.grid);
    result_.tick_count = scenario_.tick_count();

    const auto& grid = result_.grid;
    const auto transformers = grid.transformers.size();
    const auto ticks = static_cast<std::size_t>(result_.tick_count);
    result_.output_kw.assign(transformers * ticks, 0.0);
    result_.base_kw.assign(transformers * ticks, 0.0);

    daily_.resize(grid.houses.size());
    house_base_.assign(grid.houses.size(), 0.0);
    last_output_.assign(transformers, 0.0);
    transformer_evs_.resize(transformers);

    for (const auto& house : grid.houses) {
        if (!house.has_ev) continue;
        const int ev_id = static_cast<int>(ev_houses_.size());
        const auto& spec = ev_spec_for(house.profile);
        auto rng = derive_stream(scenario_.seed, StreamPurpose::EvInitial,
                                 static_cast<std::uint64_t>(house.id), 0);
        ev_houses_.push_back(house.id);
        ev_transformer_.push_back(house.transformer_id);
        transformer_evs_[static_cast<std::size_t>(house.transformer_id)].push_back(ev_id);
        ev_states_.push_back(initial_ev_state(spec, scenario_, rng));
        const int amps = scenario_.coordinated ? 0 : kMaxEvseAmps;
        evses_.push_back(set_amperage(Evse{ev_id, house.id, 0, kEvseVoltage}, amps));
    }
    ev_power_.assign(ev_houses_.size(), 0.0);
}

void Simulation::start_day(std::int64_t day_index) {
    const auto& grid = result_.grid;
    const auto calendar_day = clock_.current.day_number();
    for (const auto& house : grid.houses) {
        auto rng = derive_stream(scenario_.seed, StreamPurpose::ApplianceJitter,
                                 static_cast<std::uint64_t>(house.id), calendar_day);
        daily_[static_cast<std::size_t>(house.id)] =
            draw_daily_multipliers(house.id, day_index, schedules_, rng);
    }
    for (std::size_t ev = 0; ev < ev_houses_.size(); ++ev) {
        const auto& house = grid.houses[static_cast<std::size_t>(ev_houses_[ev])];
        auto rng = derive_stream(scenario_.seed, StreamPurpose::EvTrip,
                                 static_cast<std::uint64_t>(house.id), calendar_day);
        ev_states_[ev] = begin_day(ev_states_[ev],
                                   sample_trip_profile(ev_spec_for(house.profile), scenario_, rng));
    }
    current_day_ = calendar_day;
}

std::span<const double> Simulation::last_output() const { return last_output_; }

void Simulation::tick() {
    if (done()) throw std::logic_error("Simulation::tick past the end of the window");
    const auto& grid = result_.grid;
    const int minute = clock_.minute_of_day();
    const auto k = static_cast<std::size_t>(clock_.tick_index);
    const auto ticks = static_cast<std::size_t>(result_.tick_count);

    // 1. daily draws
    if (clock_.current.day_number() != current_day_) start_day(clock_.day_index(scenario_.start));

    // 2. base loads
    for (const auto& house : grid.houses) {
        const auto h = static_cast<std::size_t>(house.id);
        house_base_[h] = house_load(house.profile, daily_[h], schedules_, minute);
    }
    std::vector<double> base(grid.transformers.size(), 0.0);
    for (const auto& tr : grid.transformers) {
        double sum = 0.0;
        for (int h : tr.house_ids) sum += house_base_[static_cast<std::size_t>(h)];
        base[static_cast<std::size_t>(tr.id)] = sum;
    }

    // 3. EVSE power from latched commands
    for (std::size_t ev = 0; ev < evses_.size(); ++ev) {
        ev_power_[ev] = delivered_power(evses_[ev], ev_states_[ev].mode);
    }

    // 4. controller
    if (scenario_.coordinated) {
        std::vector<TransformerSnapshot> snapshots;
        for (const auto& tr : grid.transformers) {
            const auto& evs = transformer_evs_[static_cast<std::size_t>(tr.id)];
            TransformerSnapshot snap;
            snap.transformer_id = tr.id;
            snap.rating_kw = tr.rating_kva;
            double ev_total = 0.0;
            for (int ev : evs) {
                const auto e = static_cast<std::size_t>(ev);
                ev_total += ev_power_[e];
                if (!is_charging_eligible(ev_states_[e].mode)) continue;
                snap.ev_rates_kw.push_back(ev_power_[e]);
                snap.statuses.push_back(report_status(
                    evses_[e], ev_states_[e],
                    ev_spec_for(grid.houses[static_cast<std::size_t>(ev_houses_[e])].profile)));
            }
            snap.output_kw = base[static_cast<std::size_t>(tr.id)] + ev_total;
            if (!snap.statuses.empty()) snapshots.push_back(std::move(snap));
        }
        const auto commands = control_step(snapshots);
        for (const auto& [tid, cmds] : commands.by_transformer) {
            for (const auto& cmd : cmds) {
                const auto e = static_cast<std::size_t>(cmd.evse_id);
                evses_[e] = set_amperage(evses_[e], cmd.amps);
                ev_states_[e] = apply_command(ev_states_[e], cmd.amps);
                ev_power_[e] = delivered_power(evses_[e], ev_states_[e].mode);
            }
        }
        if (options_.record_control_log) {
            for (const auto& d : commands.decisions) {
                result_.control_log.push_back({clock_.tick_index, d});
            }
        }
    }

    // 5. record
    for (const auto& tr : grid.transformers) {
        const auto t = static_cast<std::size_t>(tr.id);
        double output = base[t];
        for (int ev : transformer_evs_[t]) output += ev_power_[static_cast<std::size_t>(ev)];
        result_.base_kw[t * ticks + k] = base[t];
        result_.output_kw[t * ticks + k] = output;
        last_output_[t] = output;
        if (scenario_.coordinated && base[t] <= tr.rating_kva &&
            output > tr.rating_kva + kOvershootTolerance) {
            ++result_.overshoot_violations;
        }
    }

    // 6. EVs
    const StepOptions step{scenario_.soc_mode, scenario_.tick_minutes};
    for (std::size_t ev = 0; ev < ev_states_.size(); ++ev) {
        const auto& house = grid.houses[static_cast<std::size_t>(ev_houses_[ev])];
        const auto& spec = ev_spec_for(house.profile);
        const double energy = energy_per_tick(ev_power_[ev], scenario_.tick_minutes);
        if (options_.record_ev_traces) {
            result_.ev_traces.push_back({clock_.tick_index, static_cast<int>(ev), house.id,
                                         house.transformer_id, ev_states_[ev].mode,
                                         evses_[ev].commanded_amps, ev_states_[ev].charge_kwh,
                                         ev_states_[ev].soc_percent(spec), energy});
        }
        const auto before = ev_states_[ev].mode;
        ev_states_[ev] = step_ev(ev_states_[ev], spec, minute, energy, scenario_.charge_efficiency, step);
        // An unplugged coordinated EVSE drops its command.
        if (scenario_.coordinated && is_plugged(before) && !is_plugged(ev_states_[ev].mode)) {
            evses_[ev] = set_amperage(evses_[ev], 0);
        }
    }

    // 7. clock
    clock_.current.minutes += clock_.tick_minutes;
    ++clock_.tick_index;
}

SimulationResult Simulation::finish() && {
    while (!done()) tick();
    return std::move(result_);
}

SimulationResult run(const ScenarioBundle& bundle, const RunOptions& options) {
    return Simulation(bundle, options).finish();
}

std::vector<SimulationResult> sweep(const ScenarioBundle& bundle, std::span<const double> rates,
                                    std::span<const std::uint64_t> seeds, const RunOptions& options,
                                    unsigned max_threads) {
    if (rates.empty()) throw std::invalid_argument("sweep: empty penetration list");
    if (seeds.empty()) throw std::invalid_argument("sweep: empty seed list");

    std::vector<ScenarioBundle> jobs;
    for (double rate : rates) {
        for (auto seed : seeds) jobs.push_back(bundle.with_run(rate, seed));
    }

    std::vector<SimulationResult> results(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (auto i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
            try {
                results[i] = run(jobs[i], options);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    unsigned threads = max_threads != 0 ? max_threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();

    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
    return results;
}

}  // namespace evgrid
