// Serial vs. parallel benchmark for the two data-parallel kernels: the
// per-hour shading fits and the trade-off sweep.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "agripv/mpc.hpp"
#include "../tests/scenario_fixture.hpp"

using namespace agripv;
using Clock = std::chrono::steady_clock;

namespace {

double time_s(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const int days = argc > 1 ? std::atoi(argv[1]) : 14;
    const ScenarioConfig cfg = testing::make_test_scenario(days);

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; parallel paths run serially\n");
#endif
    std::printf("season length: %d days (%d hourly steps)\n\n", days, days * 24);

    // Shared exogenous data for the fit benchmark.
    const auto truth = synthesize_clear_sky(cfg.site, cfg.synthetic->start_day,
                                            cfg.days, cfg.synthetic->clear_sky);
    std::vector<SolarPosition> sun;
    std::vector<TrackingResult> tracking;
    for (const auto& s : truth) {
        sun.push_back(sun_position(cfg.site, s.time));
        tracking.push_back(
            sun_tracking_orientation(sun.back(), cfg.limits, cfg.park));
    }

    auto t0 = Clock::now();
    const auto serial_fits =
        fit_season_serial(cfg.layout, sun, tracking, cfg.limits.tilt);
    const double fit_serial = time_s(t0);

    t0 = Clock::now();
    const auto parallel_fits =
        fit_season(cfg.layout, sun, tracking, cfg.limits.tilt, 0);
    const double fit_parallel = time_s(t0);

    double max_dev = 0.0;
    for (std::size_t t = 0; t < serial_fits.size(); ++t)
        if (serial_fits[t].valid)
            max_dev = std::max(max_dev,
                               std::fabs(serial_fits[t].g1 - parallel_fits[t].g1));
    std::printf("shading fits:   serial %7.2f s | parallel %7.2f s | speedup %5.2fx"
                " | max |dg1| %.1e\n",
                fit_serial, fit_parallel, fit_serial / fit_parallel, max_dev);

    const SeasonContext ctx = prepare_season(cfg, 0);
    std::vector<double> omegas;
    for (int i = 0; i <= 20; ++i) omegas.push_back(i / 20.0);

    t0 = Clock::now();
    const auto rows_serial = sweep_pareto_serial(cfg, ctx, omegas);
    const double sweep_serial = time_s(t0);

    t0 = Clock::now();
    const auto rows_parallel = sweep_pareto(cfg, ctx, omegas);
    const double sweep_parallel = time_s(t0);

    double max_row_dev = 0.0;
    for (std::size_t i = 0; i < rows_serial.size(); ++i)
        max_row_dev = std::max(max_row_dev,
                               std::fabs(rows_serial[i].yield_t_ha -
                                         rows_parallel[i].yield_t_ha));
    std::printf("trade-off sweep: serial %7.2f s | parallel %7.2f s | speedup %5.2fx"
                " | max |dyield| %.1e\n",
                sweep_serial, sweep_parallel, sweep_serial / sweep_parallel,
                max_row_dev);
    return 0;
}
