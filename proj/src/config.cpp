#include "agripv/config.hpp"

#include <fstream>
#include <sstream>

namespace agripv {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& key,
                    const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw ConfigError("config: missing key " + path + key);
    return j.at(key);
}

double get_double(const json& j, const std::string& key,
                  const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number())
        throw ConfigError("config: " + path + key + " must be a number");
    return v.get<double>();
}

int get_int(const json& j, const std::string& key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number_integer())
        throw ConfigError("config: " + path + key + " must be an integer");
    return v.get<int>();
}

bool get_bool(const json& j, const std::string& key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_boolean())
        throw ConfigError("config: " + path + key + " must be a boolean");
    return v.get<bool>();
}

std::string get_string(const json& j, const std::string& key,
                       const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_string())
        throw ConfigError("config: " + path + key + " must be a string");
    return v.get<std::string>();
}

AngleLimits get_limits(const json& j, const std::string& key,
                       const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError("config: " + path + key + " must be [lo, hi]");
    AngleLimits lim{v[0].get<double>(), v[1].get<double>()};
    if (lim.lo_deg > lim.hi_deg)
        throw ConfigError("config: " + path + key + " has lo > hi");
    return lim;
}

CivilTime parse_date(const std::string& s, const std::string& where) {
    CivilTime t;
    char dash1 = 0, dash2 = 0;
    std::istringstream is(s);
    if (!(is >> t.year >> dash1 >> t.month >> dash2 >> t.day) || dash1 != '-' ||
        dash2 != '-' || t.month < 1 || t.month > 12 || t.day < 1 || t.day > 31)
        throw ConfigError("config: " + where + " must be YYYY-MM-DD");
    return t;
}

} // namespace

ScenarioConfig scenario_from_json(const nlohmann::json& j) {
    ScenarioConfig cfg;

    const json& site = require(j, "site", "");
    cfg.site.latitude_deg = get_double(site, "latitude_deg", "site.");
    cfg.site.longitude_deg = get_double(site, "longitude_deg", "site.");
    cfg.site.timezone_hours = get_double(site, "timezone_hours", "site.");

    const json& layout = require(j, "layout", "");
    cfg.layout.rows = get_int(layout, "rows", "layout.");
    cfg.layout.panels_per_row = get_int(layout, "panels_per_row", "layout.");
    cfg.layout.panel_width = get_double(layout, "panel_width_m", "layout.");
    cfg.layout.panel_height = get_double(layout, "panel_height_m", "layout.");
    cfg.layout.mount_height = get_double(layout, "mount_height_m", "layout.");
    cfg.layout.row_pitch = get_double(layout, "row_pitch_m", "layout.");
    cfg.layout.panel_pitch = get_double(layout, "panel_pitch_m", "layout.");
    const json& poly = require(layout, "field_polygon", "layout.");
    if (!poly.is_array() || poly.size() < 3)
        throw ConfigError("config: layout.field_polygon needs >= 3 [x, y] vertices");
    for (const auto& v : poly) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
            !v[1].is_number())
            throw ConfigError("config: layout.field_polygon entries must be [x, y]");
        cfg.layout.field_polygon.push_back({v[0].get<double>(), v[1].get<double>()});
    }

    const json& pv = require(j, "pv", "");
    cfg.pv.area_total_m2 = get_double(pv, "area_total_m2", "pv.");
    cfg.pv.efficiency = get_double(pv, "efficiency", "pv.");
    cfg.pv.alpha = get_double(pv, "alpha", "pv.");
    const json& prices = require(pv, "price_profile", "pv.");
    if (!prices.is_array() || prices.size() != 24)
        throw ConfigError("config: pv.price_profile must have 24 hourly values");
    for (std::size_t h = 0; h < 24; ++h) {
        if (!prices[h].is_number())
            throw ConfigError("config: pv.price_profile entries must be numbers");
        cfg.pv.price_profile[h] = prices[h].get<double>();
    }

    const json& crop = require(j, "crop", "");
    cfg.crop.t_base = get_double(crop, "t_base_c", "crop.");
    cfg.crop.t_opt = get_double(crop, "t_opt_c", "crop.");
    cfg.crop.phu = get_double(crop, "phu", "crop.");
    cfg.crop.lai_max = get_double(crop, "lai_max", "crop.");
    cfg.crop.ah1 = get_double(crop, "ah1", "crop.");
    cfg.crop.ah2 = get_double(crop, "ah2", "crop.");
    cfg.crop.be = get_double(crop, "be", "crop.");
    cfg.crop.hi = get_double(crop, "hi", "crop.");

    const json& limits = require(j, "limits", "");
    cfg.limits.azimuth = get_limits(limits, "azimuth_deg", "limits.");
    cfg.limits.tilt = get_limits(limits, "tilt_deg", "limits.");

    const json& park = require(j, "park", "");
    cfg.park.azimuth_deg = get_double(park, "azimuth_deg", "park.");
    cfg.park.tilt_deg = get_double(park, "tilt_deg", "park.");

    cfg.days = get_int(j, "days", "");
    cfg.dt_hours = get_double(j, "dt_hours", "");
    cfg.omega = get_double(j, "omega", "");

    const json& fc = require(j, "forecast", "");
    cfg.forecast.gamma = get_double(fc, "gamma", "forecast.");
    cfg.forecast.max_std_fraction = get_double(fc, "max_std_fraction", "forecast.");
    cfg.forecast.cap_lead_hours = get_double(fc, "cap_lead_hours", "forecast.");

    const json& seed = require(j, "seed", "");
    if (!seed.is_number_unsigned() && !seed.is_number_integer())
        throw ConfigError("config: seed must be a nonnegative integer");
    cfg.seed = seed.get<std::uint64_t>();
    cfg.solve_daylight_only = get_bool(j, "solve_daylight_only", "");

    const json& weather = require(j, "weather", "");
    const std::string type = get_string(weather, "type", "weather.");
    if (type == "synthetic") {
        SyntheticWeatherConfig syn;
        syn.start_day = parse_date(get_string(weather, "start", "weather."),
                                   "weather.start");
        const json& cs = require(weather, "clear_sky", "weather.");
        syn.clear_sky.peak_dni = get_double(cs, "peak_dni", "weather.clear_sky.");
        syn.clear_sky.peak_dhi = get_double(cs, "peak_dhi", "weather.clear_sky.");
        syn.clear_sky.temp_mean =
            get_double(cs, "temp_mean_c", "weather.clear_sky.");
        syn.clear_sky.temp_amplitude =
            get_double(cs, "temp_amplitude_c", "weather.clear_sky.");
        cfg.synthetic = syn;
    } else if (type == "csv") {
        CsvWeatherConfig csv;
        csv.path = get_string(weather, "path", "weather.");
        if (weather.contains("columns")) {
            const json& cols = weather.at("columns");
            auto opt = [&](const std::string& key, std::string& field) {
                if (cols.contains(key)) {
                    if (!cols.at(key).is_string())
                        throw ConfigError("config: weather.columns." + key +
                                          " must be a string");
                    field = cols.at(key).get<std::string>();
                }
            };
            opt("year", csv.schema.year);
            opt("month", csv.schema.month);
            opt("day", csv.schema.day);
            opt("hour", csv.schema.hour);
            opt("minute", csv.schema.minute);
            opt("dni", csv.schema.dni);
            opt("dhi", csv.schema.dhi);
            opt("temperature", csv.schema.temperature);
        }
        cfg.csv = csv;
    } else {
        throw ConfigError("config: weather.type must be \"synthetic\" or \"csv\"");
    }

    cfg.validate();
    return cfg;
}

nlohmann::json load_scenario_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError("config file " + path + ": " + e.what());
    }
    return j;
}

ScenarioConfig load_scenario(const std::string& path) {
    return scenario_from_json(load_scenario_json(path));
}

std::uint64_t config_hash(const nlohmann::json& j) {
    const std::string canon = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace agripv
