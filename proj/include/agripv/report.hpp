#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "agripv/mpc.hpp"

namespace agripv {

/// Versioned CSV schema. Writers always emit the registered header; bump the
/// version whenever columns change.
struct CsvSchemaDef {
    std::string name;
    int version = 1;
    std::vector<std::string> columns;

    std::string header() const;
};

/// All output schemas, in a fixed order.
const std::vector<CsvSchemaDef>& csv_schemas();
const CsvSchemaDef& find_csv_schema(const std::string& name);

void write_timeseries_csv(const std::string& path, const ScenarioConfig& cfg,
                          const SeasonContext& ctx, const SeasonResult& result);
void write_daily_csv(const std::string& path, const SeasonResult& result);
void write_pareto_csv(const std::string& path,
                      const std::vector<ParetoRow>& rows);
void write_fits_csv(const std::string& path,
                    const std::vector<ShadingAffineFit>& fits);
void write_forecast_csv(const std::string& path,
                        const std::vector<WeatherSample>& truth,
                        const ForecastTrajectory& forecast);

/// JSON run manifest: config hash, seed, schema versions, output files, and a
/// result summary block.
void write_run_manifest(const std::string& path, const nlohmann::json& config,
                        std::uint64_t seed, const std::string& command,
                        const std::vector<std::string>& outputs,
                        const nlohmann::json& summary);

nlohmann::json season_summary(const SeasonResult& result,
                              const Baselines& baselines);

} // namespace agripv
