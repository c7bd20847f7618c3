#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agripv/config.hpp"
#include "agripv/report.hpp"

namespace {

using namespace agripv;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    int jobs = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "Scenario JSON file")
        ->required();
    cmd->add_option("--out", opts.out_dir, "Output directory");
    cmd->add_option("--jobs", opts.jobs,
                    "Worker threads (0 = library default)");
    cmd->add_option("--seed", opts.seed, "Override the scenario seed")
        ->trigger_on_parse()
        ->each([&opts](const std::string&) { opts.seed_given = true; });
}

std::string out_path(const CommonOpts& opts, const std::string& name) {
    std::filesystem::create_directories(opts.out_dir);
    return (std::filesystem::path(opts.out_dir) / name).string();
}

void print_summary(const nlohmann::json& summary) {
    std::cout << summary.dump(2) << std::endl;
}

int run_command(const CommonOpts& opts, const std::string& mode,
                const std::string& command) {
    const nlohmann::json raw = load_scenario_json(opts.config_path);
    ScenarioConfig cfg = scenario_from_json(raw);
    if (opts.seed_given) cfg.seed = opts.seed;
    const SeasonContext ctx = prepare_season(cfg, opts.jobs);
    const Baselines base = run_baselines(ctx);

    SeasonResult result = mode == "mpc"
                              ? run_mpc(cfg, ctx, cfg.omega, cfg.seed)
                              : run_open_loop(cfg, ctx, cfg.omega);

    const std::string ts = out_path(opts, "timeseries.csv");
    const std::string daily = out_path(opts, "daily.csv");
    write_timeseries_csv(ts, cfg, ctx, result);
    write_daily_csv(daily, result);
    const nlohmann::json summary = season_summary(result, base);
    write_run_manifest(out_path(opts, "manifest.json"), raw, cfg.seed, command,
                       {ts, daily}, summary);
    print_summary(summary);
    return 0;
}

int fit_shading_command(const CommonOpts& opts) {
    const nlohmann::json raw = load_scenario_json(opts.config_path);
    ScenarioConfig cfg = scenario_from_json(raw);
    const SeasonContext ctx = prepare_season(cfg, opts.jobs);
    const std::string fits = out_path(opts, "fits.csv");
    write_fits_csv(fits, ctx.fits);
    std::size_t valid = 0;
    for (const auto& f : ctx.fits) valid += f.valid ? 1 : 0;
    nlohmann::json summary;
    summary["steps"] = ctx.fits.size();
    summary["daylight_fits"] = valid;
    write_run_manifest(out_path(opts, "manifest.json"), raw, cfg.seed,
                       "fit-shading", {fits}, summary);
    print_summary(summary);
    return 0;
}

int sweep_command(const CommonOpts& opts, int omega_count) {
    const nlohmann::json raw = load_scenario_json(opts.config_path);
    ScenarioConfig cfg = scenario_from_json(raw);
    if (omega_count < 2) throw ConfigError("sweep: --omega-count must be >= 2");
    const SeasonContext ctx = prepare_season(cfg, opts.jobs);
    std::vector<double> omegas(static_cast<std::size_t>(omega_count));
    for (int i = 0; i < omega_count; ++i)
        omegas[static_cast<std::size_t>(i)] =
            static_cast<double>(i) / (omega_count - 1);
    const auto rows = sweep_pareto(cfg, ctx, omegas, SolverBackend::Analytic,
                                   opts.jobs);
    const std::string pareto = out_path(opts, "pareto.csv");
    write_pareto_csv(pareto, rows);
    double best_total = 0.0, best_omega = 0.0;
    for (const auto& r : rows)
        if (r.ler_total > best_total) {
            best_total = r.ler_total;
            best_omega = r.omega;
        }
    nlohmann::json summary;
    summary["omega_count"] = omega_count;
    summary["best_omega"] = best_omega;
    summary["best_ler_total"] = best_total;
    write_run_manifest(out_path(opts, "manifest.json"), raw, cfg.seed, "sweep",
                       {pareto}, summary);
    print_summary(summary);
    return 0;
}

int baselines_command(const CommonOpts& opts) {
    const nlohmann::json raw = load_scenario_json(opts.config_path);
    ScenarioConfig cfg = scenario_from_json(raw);
    const SeasonContext ctx = prepare_season(cfg, opts.jobs);
    const Baselines base = run_baselines(ctx);
    nlohmann::json summary;
    summary["crop_only_yield_t_ha"] = base.y_crop_only;
    summary["sun_tracking_revenue_usd"] = base.revenue_tracking;
    write_run_manifest(out_path(opts, "manifest.json"), raw, cfg.seed,
                       "baselines", {}, summary);
    print_summary(summary);
    return 0;
}

int forecast_demo_command(const CommonOpts& opts, int issue_hour) {
    const nlohmann::json raw = load_scenario_json(opts.config_path);
    ScenarioConfig cfg = scenario_from_json(raw);
    if (opts.seed_given) cfg.seed = opts.seed;
    const SeasonContext ctx = prepare_season(cfg, opts.jobs);
    if (issue_hour < 0 || issue_hour >= static_cast<int>(ctx.truth.size()))
        throw ConfigError("forecast-demo: --issue-hour outside the season");
    const ForecastTrajectory traj =
        make_forecast(ctx.truth, ctx.night, static_cast<std::size_t>(issue_hour),
                      cfg.forecast, cfg.seed);
    const std::string fc = out_path(opts, "forecast.csv");
    write_forecast_csv(fc, ctx.truth, traj);
    nlohmann::json summary;
    summary["issued_at"] = traj.issued_at;
    summary["leads"] = traj.samples.size();
    write_run_manifest(out_path(opts, "manifest.json"), raw, cfg.seed,
                       "forecast-demo", {fc}, summary);
    print_summary(summary);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual-axis agrivoltaic tracking: shading fits, season "
                 "simulations, and crop/energy trade-off sweeps"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string mode = "open-loop";
    int omega_count = 21;
    int issue_hour = 0;

    CLI::App* fit = app.add_subcommand(
        "fit-shading", "Fit the per-hour affine shading model for a season");
    add_common(fit, opts);

    CLI::App* run = app.add_subcommand(
        "run", "Simulate one season at the configured trade-off weight");
    add_common(run, opts);
    run->add_option("--mode", mode, "open-loop or mpc")
        ->check(CLI::IsMember({"open-loop", "mpc"}));

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Open-loop runs over an evenly spaced trade-off grid");
    add_common(sweep, opts);
    sweep->add_option("--omega-count", omega_count,
                      "Number of grid points in [0, 1]");

    CLI::App* base = app.add_subcommand(
        "baselines", "Crop-only yield and sun-tracking revenue");
    add_common(base, opts);

    CLI::App* fdemo = app.add_subcommand(
        "forecast-demo", "Write one forecast trajectory for inspection");
    add_common(fdemo, opts);
    fdemo->add_option("--issue-hour", issue_hour,
                      "Absolute hour index the forecast is issued at");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (fit->parsed()) return fit_shading_command(opts);
        if (run->parsed()) return run_command(opts, mode, "run --mode " + mode);
        if (sweep->parsed()) return sweep_command(opts, omega_count);
        if (base->parsed()) return baselines_command(opts);
        if (fdemo->parsed()) return forecast_demo_command(opts, issue_hour);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 3;
    }
    return 1;
}
