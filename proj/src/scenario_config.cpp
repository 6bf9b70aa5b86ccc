#include "evgrid/scenario_config.hpp"

#include "evgrid/load_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace evgrid {

ConfigError::ConfigError(std::string message, std::string key, int line, int column)
    : std::runtime_error([&] {
          std::string what;
          if (line > 0) {
              what += "line " + std::to_string(line);
              if (column > 0) what += ", column " + std::to_string(column);
              what += ": ";
          }
          if (!key.empty()) what += "'" + key + "': ";
          return what + message;
      }()),
      detail_(std::move(message)),
      key_(std::move(key)),
      line_(line),
      column_(column) {}

std::string_view to_string(Season season) {
    return season == Season::Summer ? "summer" : "winter";
}

std::string_view to_string(SocMode mode) {
    return mode == SocMode::DistanceDriven ? "distance_driven" : "sampled_soc";
}

namespace {

struct Entry {
    std::string key;
    std::string value;
    int line = 0;
    int value_column = 0;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Splits text into lines, accepting LF and CRLF.
std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (nl == text.size()) break;
        pos = nl + 1;
    }
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::string_view strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::vector<Entry> read_key_values(std::string_view text) {
    std::vector<Entry> entries;
    std::set<std::string, std::less<>> seen;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        const auto body = strip_comment(lines[i]);
        if (trim(body).empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            const auto col = body.find_first_not_of(" \t");
            throw ConfigError("syntax error: expected key=value", std::string(trim(body)), line_no,
                              static_cast<int>(col) + 1);
        }
        const auto key = trim(body.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("syntax error: empty key", "", line_no, static_cast<int>(eq) + 1);
        }
        const auto raw_value = body.substr(eq + 1);
        const auto value = trim(raw_value);
        const auto lead = raw_value.find_first_not_of(" \t");
        const int value_col =
            static_cast<int>(eq) + 2 + (lead == std::string_view::npos ? 0 : static_cast<int>(lead));
        if (value.empty()) {
            throw ConfigError("syntax error: missing value", std::string(key), line_no, value_col);
        }
        if (!seen.emplace(key).second) {
            throw ConfigError("duplicate key", std::string(key), line_no, 1);
        }
        entries.push_back({std::string(key), std::string(value), line_no, value_col});
    }
    return entries;
}

[[noreturn]] void bad_value(const Entry& e, const std::string& why) {
    throw ConfigError(why, e.key, e.line, e.value_column);
}

double to_double(const Entry& e) {
    double out = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || !std::isfinite(out)) {
        bad_value(e, "expected a number, got '" + e.value + "'");
    }
    return out;
}

std::int64_t to_integer(const Entry& e) {
    std::int64_t out = 0;
    const char* last = e.value.data() + e.value.size();
    auto [ptr, ec] = std::from_chars(e.value.data(), last, out);
    if (ec != std::errc{} || ptr != last) bad_value(e, "expected an integer, got '" + e.value + "'");
    return out;
}

std::uint64_t to_unsigned(const Entry& e) {
    std::uint64_t out = 0;
    const char* last = e.value.data() + e.value.size();
    auto [ptr, ec] = std::from_chars(e.value.data(), last, out);
    if (ec != std::errc{} || ptr != last) {
        bad_value(e, "expected an unsigned integer, got '" + e.value + "'");
    }
    return out;
}

bool to_bool(const Entry& e) {
    const auto v = lower(e.value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    bad_value(e, "expected a boolean, got '" + e.value + "'");
}

// Minute-of-day: plain number of minutes or HH:MM.
double to_minute_of_day(const Entry& e) {
    const auto colon = e.value.find(':');
    if (colon != std::string::npos) {
        Entry hours{e.key, e.value.substr(0, colon), e.line, e.value_column};
        Entry minutes{e.key, e.value.substr(colon + 1), e.line, e.value_column};
        const auto h = to_integer(hours);
        const auto m = to_integer(minutes);
        if (h < 0 || h > 23 || m < 0 || m > 59) bad_value(e, "invalid time of day '" + e.value + "'");
        return static_cast<double>(h * 60 + m);
    }
    return to_double(e);
}

Timestamp to_timestamp(const Entry& e) {
    auto ts = Timestamp::parse_iso(e.value);
    if (!ts) bad_value(e, "expected ISO-8601 timestamp (YYYY-MM-DDTHH:MM), got '" + e.value + "'");
    return *ts;
}

void require(bool ok, const std::string& key, const std::string& why, int line = 0, int col = 0) {
    if (!ok) throw ConfigError(why, key, line, col);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // Prefer the shortest representation that still round-trips.
    for (int precision = 1; precision < 17; ++precision) {
        char shorter[40];
        std::snprintf(shorter, sizeof shorter, "%.*g", precision, v);
        if (std::strtod(shorter, nullptr) == v) return shorter;
    }
    return buf;
}

std::map<std::string, int, std::less<>> line_index(const std::vector<Entry>& entries) {
    std::map<std::string, int, std::less<>> out;
    for (const auto& e : entries) out[e.key] = e.line;
    return out;
}

}  // namespace

void validate(const ScenarioConfig& c) {
    require(c.start < c.end, "end", "start must be before end");
    require(c.tick_minutes > 0 && 60 % c.tick_minutes == 0, "tick_minutes",
            "tick_minutes must be a positive divisor of 60");
    require((c.end.minutes - c.start.minutes) % c.tick_minutes == 0, "end",
            "window length must be a multiple of tick_minutes");
    require(c.penetration_rate >= 0.0 && c.penetration_rate <= 1.0, "penetration",
            "penetration must be in [0,1]");
    require(c.arrival_mean >= 0.0 && c.arrival_mean < kMinutesPerDay, "arrival_mean",
            "arrival_mean must be a minute of day in [0,1440)");
    require(c.departure_mean >= 0.0 && c.departure_mean < kMinutesPerDay, "departure_mean",
            "departure_mean must be a minute of day in [0,1440)");
    require(c.arrival_std >= 0.0, "arrival_std", "standard deviation must be >= 0");
    require(c.departure_std >= 0.0, "departure_std", "standard deviation must be >= 0");
    require(c.soc_std >= 0.0, "soc_std", "standard deviation must be >= 0");
    require(c.distance_std >= 0.0, "distance_std", "standard deviation must be >= 0");
    require(c.distance_mean >= 0.0, "distance_mean", "distance_mean must be >= 0");
    require(c.charge_efficiency > 0.0 && c.charge_efficiency <= 1.0, "charge_efficiency",
            "charge_efficiency must be in (0,1]");
}

void validate(const TopologySpec& t) {
    require(t.node_count >= 1, "node_count", "node_count must be positive");
    require(t.total_houses >= 1, "total_houses", "total_houses must be positive");
    require(t.houses_per_transformer.min >= 1, "houses_min", "houses_min must be >= 1");
    require(t.houses_per_transformer.min <= t.houses_per_transformer.max, "houses_max",
            "houses_min must not exceed houses_max");
    require(t.kva_per_house > 0.0, "kva_per_house", "rating must be strictly positive");
    require(t.substation_rating > 0.0, "substation_kva", "rating must be strictly positive");
    require(t.primary_voltage > 0.0, "primary_voltage", "voltage must be strictly positive");
    require(t.secondary_voltage_mv > 0.0, "secondary_voltage", "voltage must be strictly positive");
    require(t.service_voltage > 0.0, "service_voltage", "voltage must be strictly positive");
    require(t.type2_fraction >= 0.0 && t.type2_fraction <= 1.0, "type2_fraction",
            "type2_fraction must be in [0,1]");
}

ScenarioConfig parse_scenario(std::string_view text) {
    const auto entries = read_key_values(text);
    ScenarioConfig c;
    bool start_given = false;
    bool end_given = false;

    using Setter = std::function<void(const Entry&)>;
    const std::map<std::string, Setter, std::less<>> setters{
        {"seed", [&](const Entry& e) { c.seed = to_unsigned(e); }},
        {"penetration", [&](const Entry& e) { c.penetration_rate = to_double(e); }},
        {"coordinated", [&](const Entry& e) { c.coordinated = to_bool(e); }},
        {"start", [&](const Entry& e) { c.start = to_timestamp(e); start_given = true; }},
        {"end", [&](const Entry& e) { c.end = to_timestamp(e); end_given = true; }},
        {"tick_minutes",
         [&](const Entry& e) {
             const auto v = to_integer(e);
             if (v <= 0 || v > 60) bad_value(e, "tick_minutes must be a positive divisor of 60");
             c.tick_minutes = static_cast<int>(v);
         }},
        {"season",
         [&](const Entry& e) {
             const auto v = lower(e.value);
             if (v == "winter") c.season = Season::Winter;
             else if (v == "summer") c.season = Season::Summer;
             else bad_value(e, "season must be winter or summer");
         }},
        {"arrival_mean", [&](const Entry& e) { c.arrival_mean = to_minute_of_day(e); }},
        {"arrival_std", [&](const Entry& e) { c.arrival_std = to_double(e); }},
        {"departure_mean", [&](const Entry& e) { c.departure_mean = to_minute_of_day(e); }},
        {"departure_std", [&](const Entry& e) { c.departure_std = to_double(e); }},
        {"soc_std", [&](const Entry& e) { c.soc_std = to_double(e); }},
        {"charge_efficiency", [&](const Entry& e) { c.charge_efficiency = to_double(e); }},
        {"distance_mean", [&](const Entry& e) { c.distance_mean = to_double(e); }},
        {"distance_std", [&](const Entry& e) { c.distance_std = to_double(e); }},
        {"soc_mode",
         [&](const Entry& e) {
             const auto v = lower(e.value);
             if (v == "sampled_soc") c.soc_mode = SocMode::SampledSoc;
             else if (v == "distance_driven") c.soc_mode = SocMode::DistanceDriven;
             else bad_value(e, "soc_mode must be sampled_soc or distance_driven");
         }},
    };

    for (const auto& e : entries) {
        const auto it = setters.find(e.key);
        if (it == setters.end()) throw ConfigError("unknown key", e.key, e.line, 1);
        it->second(e);
    }

    if (c.season == Season::Summer) {
        if (!start_given) c.start = Timestamp::from_civil(2012, 8, 2);
        if (!end_given) c.end = Timestamp::from_civil(2012, 8, 4);
    }

    const auto lines = line_index(entries);
    try {
        validate(c);
    } catch (const ConfigError& err) {
        const auto it = lines.find(err.key());
        int line = it == lines.end() ? 0 : it->second;
        if (line == 0 && err.key() == "end") {
            // start >= end can be caused by either key.
            const auto s = lines.find("start");
            if (s != lines.end()) throw ConfigError(err.detail(), "start", s->second);
        }
        throw ConfigError(err.detail(), err.key(), line);
    }
    return c;
}

TopologySpec parse_topology(std::string_view text) {
    const auto entries = read_key_values(text);
    TopologySpec t;

    auto positive_int = [](const Entry& e) {
        const auto v = to_integer(e);
        if (v < 1 || v > 100'000'000) bad_value(e, "expected a positive integer");
        return static_cast<int>(v);
    };
    using Setter = std::function<void(const Entry&)>;
    const std::map<std::string, Setter, std::less<>> setters{
        {"node_count", [&](const Entry& e) { t.node_count = positive_int(e); }},
        {"total_houses", [&](const Entry& e) { t.total_houses = positive_int(e); }},
        {"houses_min", [&](const Entry& e) { t.houses_per_transformer.min = positive_int(e); }},
        {"houses_max", [&](const Entry& e) { t.houses_per_transformer.max = positive_int(e); }},
        {"kva_per_house", [&](const Entry& e) { t.kva_per_house = to_double(e); }},
        {"substation_kva", [&](const Entry& e) { t.substation_rating = to_double(e); }},
        {"primary_voltage", [&](const Entry& e) { t.primary_voltage = to_double(e); }},
        {"secondary_voltage", [&](const Entry& e) { t.secondary_voltage_mv = to_double(e); }},
        {"service_voltage", [&](const Entry& e) { t.service_voltage = to_double(e); }},
        {"type2_fraction", [&](const Entry& e) { t.type2_fraction = to_double(e); }},
    };
    for (const auto& e : entries) {
        const auto it = setters.find(e.key);
        if (it == setters.end()) throw ConfigError("unknown key", e.key, e.line, 1);
        it->second(e);
    }

    const auto lines = line_index(entries);
    try {
        validate(t);
    } catch (const ConfigError& err) {
        const auto it = lines.find(err.key());
        int line = it == lines.end() ? 0 : it->second;
        if (line == 0 && err.key() == "houses_max") {
            const auto m = lines.find("houses_min");
            if (m != lines.end()) line = m->second;
        }
        throw ConfigError(err.detail(), err.key(), line);
    }
    return t;
}

std::vector<ScheduleSpec> parse_schedules(std::string_view text) {
    std::vector<ScheduleSpec> out;
    std::set<std::string, std::less<>> names;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        const auto body = strip_comment(lines[i]);
        if (trim(body).empty()) continue;

        std::vector<std::pair<std::string_view, int>> fields;
        std::size_t pos = 0;
        while (true) {
            const auto comma = body.find(',', pos);
            const auto end = comma == std::string_view::npos ? body.size() : comma;
            fields.emplace_back(trim(body.substr(pos, end - pos)), static_cast<int>(pos) + 1);
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }

        const std::string name(fields.front().first);
        if (fields.size() != kHoursPerDay + 1 && fields.size() != kHoursPerDay + 2) {
            throw ConfigError("wrong column count: expected name + 24 hourly values [+ jitter_cv], got " +
                                  std::to_string(fields.size()) + " columns",
                              name, line_no, 1);
        }
        if (name.empty()) throw ConfigError("empty appliance name", name, line_no, 1);

        ScheduleSpec spec;
        spec.appliance_name = name;
        for (std::size_t f = 1; f < fields.size(); ++f) {
            const Entry e{name, std::string(fields[f].first), line_no, fields[f].second};
            if (e.value.empty()) bad_value(e, "empty field");
            const double v = to_double(e);
            if (f <= kHoursPerDay) {
                if (v < 0.0 || v > 1.0) bad_value(e, "duty fraction outside [0,1]");
                spec.hourly_duty[f - 1] = v;
            } else {
                if (v < 0.0) bad_value(e, "jitter_cv must be >= 0");
                spec.jitter_cv = v;
            }
        }
        if (!names.insert(name).second) {
            throw ConfigError("duplicate appliance name", name, line_no, 1);
        }
        out.push_back(std::move(spec));
    }
    return out;
}

std::string render_scenario(const ScenarioConfig& c) {
    std::ostringstream os;
    os << "seed=" << c.seed << '\n'
       << "penetration=" << format_double(c.penetration_rate) << '\n'
       << "coordinated=" << (c.coordinated ? "true" : "false") << '\n'
       << "season=" << to_string(c.season) << '\n'
       << "start=" << c.start.to_iso() << '\n'
       << "end=" << c.end.to_iso() << '\n'
       << "tick_minutes=" << c.tick_minutes << '\n'
       << "arrival_mean=" << format_double(c.arrival_mean) << '\n'
       << "arrival_std=" << format_double(c.arrival_std) << '\n'
       << "departure_mean=" << format_double(c.departure_mean) << '\n'
       << "departure_std=" << format_double(c.departure_std) << '\n'
       << "soc_std=" << format_double(c.soc_std) << '\n'
       << "charge_efficiency=" << format_double(c.charge_efficiency) << '\n'
       << "distance_mean=" << format_double(c.distance_mean) << '\n'
       << "distance_std=" << format_double(c.distance_std) << '\n'
       << "soc_mode=" << to_string(c.soc_mode) << '\n';
    return os.str();
}

std::string render_topology(const TopologySpec& t) {
    std::ostringstream os;
    os << "node_count=" << t.node_count << '\n'
       << "total_houses=" << t.total_houses << '\n'
       << "houses_min=" << t.houses_per_transformer.min << '\n'
       << "houses_max=" << t.houses_per_transformer.max << '\n'
       << "kva_per_house=" << format_double(t.kva_per_house) << '\n'
       << "substation_kva=" << format_double(t.substation_rating) << '\n'
       << "primary_voltage=" << format_double(t.primary_voltage) << '\n'
       << "secondary_voltage=" << format_double(t.secondary_voltage_mv) << '\n'
       << "service_voltage=" << format_double(t.service_voltage) << '\n'
       << "type2_fraction=" << format_double(t.type2_fraction) << '\n';
    return os.str();
}

std::string render_schedules(const std::vector<ScheduleSpec>& schedules) {
    std::ostringstream os;
    for (const auto& s : schedules) {
        os << s.appliance_name;
        for (double d : s.hourly_duty) os << ',' << format_double(d);
        os << ',' << format_double(s.jitter_cv) << '\n';
    }
    return os.str();
}

const ScheduleSpec& ScenarioBundle::schedule_for(std::string_view appliance) const {
    for (const auto& s : schedules_) {
        if (s.appliance_name == appliance) return s;
    }
    throw ConfigError("no schedule for appliance", std::string(appliance), 0);
}

ScenarioBundle ScenarioBundle::with_run(double penetration_rate, std::uint64_t seed) const {
    ScenarioConfig s = scenario_;
    s.penetration_rate = penetration_rate;
    s.seed = seed;
    return validate_bundle(std::move(s), topology_, schedules_);
}

ScenarioBundle ScenarioBundle::with_coordinated(bool coordinated) const {
    ScenarioBundle copy = *this;
    copy.scenario_.coordinated = coordinated;
    return copy;
}

ScenarioBundle validate_bundle(ScenarioConfig scenario, TopologySpec topo,
                               std::vector<ScheduleSpec> schedules) {
    validate(scenario);
    validate(topo);
    std::set<std::string, std::less<>> names;
    for (const auto& s : schedules) {
        require(names.insert(s.appliance_name).second, s.appliance_name, "duplicate appliance name");
        require(s.jitter_cv >= 0.0, s.appliance_name, "jitter_cv must be >= 0");
        for (double d : s.hourly_duty) {
            require(d >= 0.0 && d <= 1.0, s.appliance_name, "duty fraction outside [0,1]");
        }
    }
    for (const auto appliance : profile_appliance_names()) {
        require(names.contains(appliance), std::string(appliance),
                "missing schedule for profile appliance '" + std::string(appliance) + "'");
    }
    return ScenarioBundle(std::move(scenario), std::move(topo), std::move(schedules));
}

std::vector<ScheduleSpec> default_schedules(Season season) {
    return parse_schedules(default_schedule_csv(season));
}

ScenarioBundle default_bundle() {
    return validate_bundle(ScenarioConfig{}, TopologySpec{}, default_schedules(Season::Winter));
}

}  // namespace evgrid
