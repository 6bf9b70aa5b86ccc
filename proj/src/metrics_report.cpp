#include "evgrid/metrics_report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>

namespace evgrid {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string trimmed_rate(double rate) {
    std::string s = fixed6(rate);
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
}

std::vector<double> ratings_of(const Grid& grid) {
    std::vector<double> ratings;
    ratings.reserve(grid.transformers.size());
    for (const auto& t : grid.transformers) ratings.push_back(t.rating_kva);
    return ratings;
}

void check_shape(const SimulationResult& result, const Grid& grid) {
    const auto expected = grid.transformers.size() * static_cast<std::size_t>(result.tick_count);
    if (result.output_kw.size() != expected) {
        throw std::invalid_argument("series/grid mismatch: " + std::to_string(result.output_kw.size()) +
                                    " samples for " + std::to_string(grid.transformers.size()) +
                                    " transformers x " + std::to_string(result.tick_count) + " ticks");
    }
    for (std::size_t i = 0; i < grid.transformers.size(); ++i) {
        if (grid.transformers[i].id != static_cast<int>(i)) {
            throw std::invalid_argument("series/grid mismatch: transformer ids are not dense");
        }
    }
}

template <typename Fn>
std::filesystem::path write_file(const std::filesystem::path& path, Fn&& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ReportIoError(path, "cannot open for writing");
    body(os);
    os.flush();
    if (!os) throw ReportIoError(path, "write failed");
    return path;
}

}  // namespace

OverloadReport overload_stats(std::span<const double> output_kw, std::span<const double> ratings_kw,
                              int tick_minutes) {
    OverloadReport r;
    if (ratings_kw.empty()) return r;
    if (output_kw.size() % ratings_kw.size() != 0) {
        throw std::invalid_argument("overload_stats: series length is not a multiple of the transformer count");
    }
    const auto ticks = output_kw.size() / ratings_kw.size();
    std::size_t overloaded_transformers = 0;
    std::int64_t longest = 0;
    std::int64_t total = 0;
    for (std::size_t t = 0; t < ratings_kw.size(); ++t) {
        const auto row = output_kw.subspan(t * ticks, ticks);
        std::int64_t run = 0;
        bool any = false;
        for (double v : row) {
            if (v > ratings_kw[t]) {
                ++run;
                ++total;
                any = true;
                longest = std::max(longest, run);
            } else {
                run = 0;
            }
        }
        if (any) ++overloaded_transformers;
    }
    r.overloaded_fraction =
        static_cast<double>(overloaded_transformers) / static_cast<double>(ratings_kw.size());
    r.max_duration_min = longest * tick_minutes;
    r.aggregated_overload_min = total * tick_minutes;
    return r;
}

OverloadReport overload_stats(const SimulationResult& result, const Grid& grid) {
    check_shape(result, grid);
    const auto ratings = ratings_of(grid);
    auto r = overload_stats(result.output_kw, ratings, result.tick_minutes());
    r.penetration_rate = result.scenario.penetration_rate;
    r.coordinated = result.scenario.coordinated;
    return r;
}

OverloadReport overload_stats(const SimulationResult& result) {
    return overload_stats(result, result.grid);
}

NormalizedSeries normalized_series(const SimulationResult& result, const Grid& grid) {
    check_shape(result, grid);
    NormalizedSeries out;
    out.tick_count = result.tick_count;
    out.transformer_ids.resize(grid.transformers.size());
    std::iota(out.transformer_ids.begin(), out.transformer_ids.end(), 0);
    std::stable_sort(out.transformer_ids.begin(), out.transformer_ids.end(), [&](int a, int b) {
        const auto& ta = grid.transformers[static_cast<std::size_t>(a)];
        const auto& tb = grid.transformers[static_cast<std::size_t>(b)];
        return std::pair(ta.node_id, ta.id) < std::pair(tb.node_id, tb.id);
    });
    out.ratios.reserve(result.output_kw.size());
    for (int id : out.transformer_ids) {
        const double rating = grid.transformers[static_cast<std::size_t>(id)].rating_kva;
        if (!(rating > 0.0)) {
            throw std::invalid_argument("normalized_series: transformer " + std::to_string(id) +
                                        " has zero rating");
        }
        for (double v : result.output_series(id)) out.ratios.push_back(v / rating);
    }
    return out;
}

std::vector<double> average_output(const SimulationResult& result, const Grid& grid) {
    const auto norm = normalized_series(result, grid);
    const auto ticks = static_cast<std::size_t>(norm.tick_count);
    std::vector<double> avg(ticks, 0.0);
    if (norm.transformer_ids.empty()) return avg;
    // Sum in transformer-id order so the value is independent of row order.
    for (std::size_t t = 0; t < grid.transformers.size(); ++t) {
        const double rating = grid.transformers[t].rating_kva;
        const auto row = result.output_series(static_cast<int>(t));
        for (std::size_t k = 0; k < ticks; ++k) avg[k] += row[k] / rating;
    }
    for (double& v : avg) v /= static_cast<double>(grid.transformers.size());
    return avg;
}

std::string run_tag(const SimulationResult& result, bool include_seed) {
    std::string tag = trimmed_rate(result.scenario.penetration_rate);
    if (result.scenario.coordinated) tag += "_coordinated";
    if (include_seed) tag += "_seed" + std::to_string(result.scenario.seed);
    return tag;
}

void write_overload_summary(std::ostream& os, std::span<const OverloadReport> reports) {
    os << "penetration,coordinated,overloaded_fraction,max_duration_min,aggregated_min\n";
    for (const auto& r : reports) {
        os << fixed6(r.penetration_rate) << ',' << (r.coordinated ? "true" : "false") << ','
           << fixed6(r.overloaded_fraction) << ',' << r.max_duration_min << ','
           << r.aggregated_overload_min << '\n';
    }
}

void write_heatmap(std::ostream& os, const NormalizedSeries& series, int tick_minutes) {
    os << "minute,transformer_id,ratio\n";
    const auto ticks = static_cast<std::size_t>(series.tick_count);
    for (std::size_t k = 0; k < ticks; ++k) {
        const auto minute = static_cast<std::int64_t>(k) * tick_minutes;
        for (std::size_t r = 0; r < series.transformer_ids.size(); ++r) {
            os << minute << ',' << series.transformer_ids[r] << ',' << fixed6(series.ratios[r * ticks + k])
               << '\n';
        }
    }
}

void write_average_output(std::ostream& os, std::span<const double> average, int tick_minutes) {
    os << "minute,mean_normalized_output\n";
    for (std::size_t k = 0; k < average.size(); ++k) {
        os << static_cast<std::int64_t>(k) * tick_minutes << ',' << fixed6(average[k]) << '\n';
    }
}

void write_ev_trace(std::ostream& os, const SimulationResult& result) {
    os << "minute,ev_id,mode,soc_percent,amps\n";
    for (const auto& s : result.ev_traces) {
        os << s.tick * result.tick_minutes() << ',' << s.ev_id << ',' << to_string(s.mode) << ','
           << fixed6(s.soc_percent) << ',' << s.amps << '\n';
    }
}

void write_control_log(std::ostream& os, const SimulationResult& result) {
    os << "minute,transformer_id,rating_kw,output_kw,n,share_kw,amps\n";
    for (const auto& e : result.control_log) {
        const auto& d = e.decision;
        os << e.tick * result.tick_minutes() << ',' << d.transformer_id << ',' << fixed6(d.rating_kw)
           << ',' << fixed6(d.output_kw) << ',' << d.n << ',' << fixed6(d.share_kw) << ',' << d.amps
           << '\n';
    }
}

std::vector<std::filesystem::path> emit_reports(std::span<const SimulationResult> results,
                                                const std::filesystem::path& out_dir) {
    if (results.empty()) throw std::invalid_argument("emit_reports: no results");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw ReportIoError(out_dir, ec.message());

    std::set<std::uint64_t> seeds;
    for (const auto& r : results) seeds.insert(r.scenario.seed);
    const bool include_seed = seeds.size() > 1;

    std::vector<std::string> tags;
    std::set<std::string> unique;
    for (const auto& r : results) {
        tags.push_back(run_tag(r, include_seed));
        if (!unique.insert(tags.back()).second) {
            throw std::invalid_argument("emit_reports: two runs share the tag '" + tags.back() + "'");
        }
    }

    std::vector<std::filesystem::path> written;
    std::vector<OverloadReport> reports;
    for (const auto& r : results) reports.push_back(overload_stats(r));
    written.push_back(write_file(out_dir / "overload_summary.csv",
                                 [&](std::ostream& os) { write_overload_summary(os, reports); }));

    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        written.push_back(write_file(out_dir / ("normalized_heatmap_" + tags[i] + ".csv"),
                                     [&](std::ostream& os) {
                                         write_heatmap(os, normalized_series(r, r.grid), r.tick_minutes());
                                     }));
        written.push_back(write_file(out_dir / ("average_output_" + tags[i] + ".csv"),
                                     [&](std::ostream& os) {
                                         write_average_output(os, average_output(r, r.grid),
                                                              r.tick_minutes());
                                     }));
    }
    return written;
}

}  // namespace evgrid
