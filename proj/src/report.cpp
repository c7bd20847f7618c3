#include "agripv/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "agripv/config.hpp"

namespace agripv {

std::string CsvSchemaDef::header() const {
    std::string h;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) h += ',';
        h += columns[i];
    }
    return h;
}

const std::vector<CsvSchemaDef>& csv_schemas() {
    static const std::vector<CsvSchemaDef> schemas = {
        {"timeseries", 1,
         {"t", "year", "month", "day", "hour", "dni_w_m2", "dhi_w_m2",
          "temperature_c", "sun_azimuth_deg", "sun_altitude_deg",
          "panel_azimuth_deg", "panel_tilt_deg", "parked", "delta_tilt_deg",
          "tilt_clamped", "exact", "power_w", "par_field_w_m2"}},
        {"daily", 1, {"day", "hui", "reg", "huf", "lai", "biomass_t_ha"}},
        {"pareto", 1,
         {"omega", "yield_t_ha", "revenue_usd", "norm_yield", "norm_revenue",
          "pred_norm_yield", "pred_norm_revenue", "ler_crop", "ler_pv",
          "ler_total", "inexact_fraction", "percent_error_yield",
          "percent_error_revenue"}},
        {"fits", 1, {"t", "g1", "g2", "r_squared", "max_residual", "valid"}},
        {"forecast", 1,
         {"lead_hours", "dni_truth", "dni_forecast", "dhi_truth",
          "dhi_forecast", "temperature_truth", "temperature_forecast"}},
    };
    return schemas;
}

const CsvSchemaDef& find_csv_schema(const std::string& name) {
    for (const auto& s : csv_schemas())
        if (s.name == name) return s;
    throw DataError("unknown CSV schema: " + name);
}

namespace {

std::ofstream open_csv(const std::string& path, const std::string& schema_name) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write output file: " + path);
    out << std::setprecision(12);
    out << find_csv_schema(schema_name).header() << '\n';
    return out;
}

} // namespace

void write_timeseries_csv(const std::string& path, const ScenarioConfig& cfg,
                          const SeasonContext& ctx, const SeasonResult& result) {
    (void)cfg;
    auto out = open_csv(path, "timeseries");
    for (std::size_t t = 0; t < result.steps.size(); ++t) {
        const auto& wx = ctx.truth[t];
        const auto& step = result.steps[t];
        out << t << ',' << wx.time.year << ',' << wx.time.month << ','
            << wx.time.day << ',' << wx.time.hour << ',' << wx.dni << ','
            << wx.dhi << ',' << wx.temperature << ',' << ctx.sun[t].azimuth_deg
            << ',' << ctx.sun[t].altitude_deg << ','
            << step.orientation.azimuth_deg << ',' << step.orientation.tilt_deg
            << ',' << (step.parked ? 1 : 0) << ',' << step.delta_tilt_deg << ','
            << (step.tilt_clamped ? 1 : 0) << ','
            << (step.parked ? 1 : (step.decision.exact ? 1 : 0)) << ','
            << result.power_w[t] << ',' << result.par_field[t] << '\n';
    }
}

void write_daily_csv(const std::string& path, const SeasonResult& result) {
    auto out = open_csv(path, "daily");
    for (const auto& s : result.daily)
        out << s.day << ',' << s.hui << ',' << s.reg << ',' << s.huf << ','
            << s.lai << ',' << s.biomass << '\n';
}

void write_pareto_csv(const std::string& path,
                      const std::vector<ParetoRow>& rows) {
    auto out = open_csv(path, "pareto");
    for (const auto& r : rows)
        out << r.omega << ',' << r.yield_t_ha << ',' << r.revenue_usd << ','
            << r.norm_yield << ',' << r.norm_revenue << ',' << r.pred_norm_yield
            << ',' << r.pred_norm_revenue << ',' << r.ler_crop << ',' << r.ler_pv
            << ',' << r.ler_total << ',' << r.inexact_fraction << ','
            << r.percent_error_yield << ',' << r.percent_error_revenue << '\n';
}

void write_fits_csv(const std::string& path,
                    const std::vector<ShadingAffineFit>& fits) {
    auto out = open_csv(path, "fits");
    for (const auto& f : fits)
        out << f.t << ',' << f.g1 << ',' << f.g2 << ',' << f.r_squared << ','
            << f.max_residual << ',' << (f.valid ? 1 : 0) << '\n';
}

void write_forecast_csv(const std::string& path,
                        const std::vector<WeatherSample>& truth,
                        const ForecastTrajectory& forecast) {
    auto out = open_csv(path, "forecast");
    for (std::size_t i = 0; i < forecast.samples.size(); ++i) {
        const auto& tr = truth[forecast.issued_at + i];
        const auto& fc = forecast.samples[i];
        out << i << ',' << tr.dni << ',' << fc.dni << ',' << tr.dhi << ','
            << fc.dhi << ',' << tr.temperature << ',' << fc.temperature << '\n';
    }
}

void write_run_manifest(const std::string& path, const nlohmann::json& config,
                        std::uint64_t seed, const std::string& command,
                        const std::vector<std::string>& outputs,
                        const nlohmann::json& summary) {
    nlohmann::json m;
    std::ostringstream hash;
    hash << "0x" << std::hex << std::setw(16) << std::setfill('0')
         << config_hash(config);
    m["config_hash"] = hash.str();
    m["seed"] = seed;
    m["command"] = command;
    nlohmann::json schemas = nlohmann::json::object();
    for (const auto& s : csv_schemas()) schemas[s.name] = s.version;
    m["schemas"] = schemas;
    m["outputs"] = outputs;
    m["summary"] = summary;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write manifest file: " + path);
    out << m.dump(2) << '\n';
}

nlohmann::json season_summary(const SeasonResult& result,
                              const Baselines& baselines) {
    nlohmann::json s;
    s["omega"] = result.omega;
    s["yield_t_ha"] = result.yield_t_ha;
    s["revenue_usd"] = result.revenue_usd;
    s["ler_crop"] = result.ler_crop;
    s["ler_pv"] = result.ler_pv;
    s["ler_total"] = result.ler_total;
    s["predicted_ler_crop"] = result.predicted_ler_crop;
    s["predicted_ler_pv"] = result.predicted_ler_pv;
    s["percent_error_yield"] = result.percent_error_yield;
    s["percent_error_revenue"] = result.percent_error_revenue;
    s["inexact_fraction"] = result.inexact_fraction;
    s["baseline_yield_t_ha"] = baselines.y_crop_only;
    s["baseline_revenue_usd"] = baselines.revenue_tracking;
    return s;
}

} // namespace agripv
