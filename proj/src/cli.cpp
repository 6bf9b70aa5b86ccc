#include "evgrid/cli.hpp"

#include "evgrid/metrics_report.hpp"
#include "evgrid/scenario_config.hpp"
#include "evgrid/sim_engine.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace evgrid {

namespace {

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure(path + ": cannot open for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoFailure(path + ": read failed");
    return buf.str();
}

template <typename Fn>
void write_extra(const std::filesystem::path& path, Fn&& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ReportIoError(path, "cannot open for writing");
    body(os);
    if (!os) throw ReportIoError(path, "write failed");
}

}  // namespace

int run_simulate(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Residential feeder EV charging simulator", "simulate"};
    std::string scenario_path, topology_path, schedules_path, out_dir;
    std::optional<std::uint64_t> seed;
    std::vector<double> rates;
    bool coordinated = false;
    bool ev_trace = false;
    bool control_log = false;
    bool grid_dump = false;
    unsigned threads = 0;

    app.add_option("--scenario", scenario_path, "Scenario key=value file (defaults if omitted)");
    app.add_option("--topology", topology_path, "Topology key=value file (defaults if omitted)");
    app.add_option("--schedules", schedules_path,
                   "Appliance schedule CSV (season's shipped schedules if omitted)");
    app.add_option("--out", out_dir, "Output directory")->required();
    app.add_option("--seed", seed, "Override the scenario seed");
    app.add_option("--penetration", rates, "EV penetration rate; repeat to sweep")
        ->check(CLI::Range(0.0, 1.0));
    app.add_flag("--coordinated", coordinated, "Enable the fair-sharing controller");
    app.add_flag("--ev-trace", ev_trace, "Write ev_trace_<tag>.csv per run");
    app.add_flag("--control-log", control_log, "Write control_log_<tag>.csv per coordinated run");
    app.add_flag("--grid-dump", grid_dump, "Write grid_<tag>.csv per run");
    app.add_option("--threads", threads, "Worker threads for sweeps (0 = hardware)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "simulate: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        auto scenario = scenario_path.empty() ? ScenarioConfig{} : parse_scenario(read_file(scenario_path));
        auto topology = topology_path.empty() ? TopologySpec{} : parse_topology(read_file(topology_path));
        auto schedules = schedules_path.empty() ? default_schedules(scenario.season)
                                                : parse_schedules(read_file(schedules_path));
        if (seed) scenario.seed = *seed;
        if (coordinated) scenario.coordinated = true;
        if (rates.empty()) rates.push_back(scenario.penetration_rate);
        const std::uint64_t run_seed = scenario.seed;
        const auto bundle = validate_bundle(std::move(scenario), std::move(topology), std::move(schedules));

        RunOptions options;
        options.record_ev_traces = ev_trace;
        options.record_control_log = control_log;
        const std::vector<std::uint64_t> seeds{run_seed};
        const auto results = sweep(bundle, rates, seeds, options, threads);

        const auto written = emit_reports(results, out_dir);
        for (const auto& r : results) {
            const auto tag = run_tag(r, false);
            if (ev_trace) {
                write_extra(std::filesystem::path(out_dir) / ("ev_trace_" + tag + ".csv"),
                            [&](std::ostream& os) { write_ev_trace(os, r); });
            }
            if (control_log && r.scenario.coordinated) {
                write_extra(std::filesystem::path(out_dir) / ("control_log_" + tag + ".csv"),
                            [&](std::ostream& os) { write_control_log(os, r); });
            }
            if (grid_dump) {
                write_extra(std::filesystem::path(out_dir) / ("grid_" + tag + ".csv"),
                            [&](std::ostream& os) { write_grid_dump(os, r.grid); });
            }
        }

        out << "penetration  coordinated  overloaded  max_min  aggregated_min\n";
        for (const auto& r : results) {
            const auto rep = overload_stats(r);
            char line[128];
            std::snprintf(line, sizeof line, "%11.2f  %11s  %9.1f%%  %7lld  %14lld\n",
                          rep.penetration_rate, rep.coordinated ? "yes" : "no",
                          rep.overloaded_fraction * 100.0, static_cast<long long>(rep.max_duration_min),
                          static_cast<long long>(rep.aggregated_overload_min));
            out << line;
        }
        out << "wrote " << written.size() << " report files to " << out_dir << '\n';
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "simulate: invalid input: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IoFailure& e) {
        err << "simulate: " << e.what() << '\n';
        return kExitIo;
    } catch (const ReportIoError& e) {
        err << "simulate: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "simulate: " << e.what() << '\n';
        return kExitValidation;
    }
}

}  // namespace evgrid
