#pragma once

// Overload statistics, normalized transformer output and the CSV reports.

#include "evgrid/grid.hpp"
#include "evgrid/sim_engine.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace evgrid {

struct OverloadReport {
    double penetration_rate = 0.0;
    bool coordinated = false;
    double overloaded_fraction = 0.0;
    std::int64_t max_duration_min = 0;
    std::int64_t aggregated_overload_min = 0;

    bool operator==(const OverloadReport&) const = default;
};

/// Raw overload counting over a transformer-major matrix of outputs
/// (`ratings_kw.size()` rows). A sample is overloaded iff output > rating.
/// Durations are run lengths times `tick_minutes`.
OverloadReport overload_stats(std::span<const double> output_kw, std::span<const double> ratings_kw,
                              int tick_minutes);

/// Throws std::invalid_argument when the result's series do not match the
/// grid's transformers.
OverloadReport overload_stats(const SimulationResult& result, const Grid& grid);
OverloadReport overload_stats(const SimulationResult& result);

/// Output / rating per transformer and tick. Rows are ordered by
/// (node_id, transformer id).
struct NormalizedSeries {
    std::vector<int> transformer_ids;
    std::int64_t tick_count = 0;
    std::vector<double> ratios;  // row-major, rows follow transformer_ids

    std::span<const double> row(std::size_t index) const {
        const auto n = static_cast<std::size_t>(tick_count);
        return std::span<const double>(ratios).subspan(index * n, n);
    }
};

/// Throws std::invalid_argument on a zero rating.
NormalizedSeries normalized_series(const SimulationResult& result, const Grid& grid);

/// Mean normalized output across transformers, per tick.
std::vector<double> average_output(const SimulationResult& result, const Grid& grid);

class ReportIoError : public std::runtime_error {
public:
    ReportIoError(const std::filesystem::path& path, const std::string& what)
        : std::runtime_error(path.string() + ": " + what), path_(path) {}
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

/// Per-run file tag: the penetration rate (`0.5`), plus `_coordinated` for
/// controller runs and `_seed<N>` when the result set mixes seeds.
std::string run_tag(const SimulationResult& result, bool include_seed);

void write_overload_summary(std::ostream& os, std::span<const OverloadReport> reports);
void write_heatmap(std::ostream& os, const NormalizedSeries& series, int tick_minutes);
void write_average_output(std::ostream& os, std::span<const double> average, int tick_minutes);
void write_ev_trace(std::ostream& os, const SimulationResult& result);
void write_control_log(std::ostream& os, const SimulationResult& result);

/// Writes overload_summary.csv, normalized_heatmap_<tag>.csv and
/// average_output_<tag>.csv; returns the paths in write order. Throws
/// std::invalid_argument for an empty result list and ReportIoError when a
/// file cannot be written.
std::vector<std::filesystem::path> emit_reports(std::span<const SimulationResult> results,
                                                const std::filesystem::path& out_dir);

}  // namespace evgrid
