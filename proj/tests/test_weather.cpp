#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "agripv/weather.hpp"

using namespace agripv;

namespace {

const Site kSite{42.28, -83.74, -4.0};
const CivilTime kStart{2023, 7, 1, 0, 0, 0.0};

std::string write_temp_csv(const std::string& body) {
    static int counter = 0;
    const std::string path =
        "test_weather_tmp_" + std::to_string(counter++) + ".csv";
    std::ofstream out(path);
    out << body;
    return path;
}

} // namespace

TEST_CASE("clear-sky synthesis has hourly cadence and dark nights") {
    const auto wx = synthesize_clear_sky(kSite, kStart, 3, ClearSkyParams{});
    REQUIRE(wx.size() == 72);
    CHECK(wx[0].time.hour == 0);
    CHECK(wx[25].time.day == 2);
    std::size_t daylight = 0;
    for (const auto& s : wx) {
        const SolarPosition sun = sun_position(kSite, s.time);
        if (!sun.daylight()) {
            CHECK(s.dni == 0.0);
            CHECK(s.dhi == 0.0);
        } else {
            CHECK(s.dni > 0.0);
            ++daylight;
        }
    }
    CHECK(daylight > 30); // midsummer: long days
    // Deterministic.
    const auto wx2 = synthesize_clear_sky(kSite, kStart, 3, ClearSkyParams{});
    CHECK(wx2[40].dni == wx[40].dni);
}

TEST_CASE("weather CSV round trip") {
    const auto wx = synthesize_clear_sky(kSite, kStart, 2, ClearSkyParams{});
    std::string body = "Year,Month,Day,Hour,Minute,DNI,DHI,Temperature\n";
    for (const auto& s : wx) {
        char line[160];
        std::snprintf(line, sizeof line, "%d,%d,%d,%d,0,%.12g,%.12g,%.12g\n",
                      s.time.year, s.time.month, s.time.day, s.time.hour, s.dni,
                      s.dhi, s.temperature);
        body += line;
    }
    const std::string path = write_temp_csv(body);
    const auto loaded = load_weather_csv(path, CsvSchema{});
    REQUIRE(loaded.size() == wx.size());
    for (std::size_t i = 0; i < wx.size(); ++i) {
        CHECK(loaded[i].dni == doctest::Approx(wx[i].dni).epsilon(1e-9));
        CHECK(loaded[i].time.hour == wx[i].time.hour);
    }
    std::remove(path.c_str());
}

TEST_CASE("weather CSV validation rejects malformed input") {
    const std::string header = "Year,Month,Day,Hour,Minute,DNI,DHI,Temperature\n";

    SUBCASE("missing column") {
        const std::string p =
            write_temp_csv("Year,Month,Day,Hour,DNI,DHI\n2023,7,1,0,0,0\n");
        CHECK_THROWS_WITH_AS((void)load_weather_csv(p, CsvSchema{}),
                             doctest::Contains("Temperature"), DataError);
        std::remove(p.c_str());
    }
    SUBCASE("gap in cadence") {
        const std::string p = write_temp_csv(
            header + "2023,7,1,0,0,0,0,15\n2023,7,1,2,0,0,0,15\n");
        CHECK_THROWS_WITH_AS((void)load_weather_csv(p, CsvSchema{}),
                             doctest::Contains("gap"), DataError);
        std::remove(p.c_str());
    }
    SUBCASE("duplicated hour") {
        const std::string p = write_temp_csv(
            header + "2023,7,1,0,0,0,0,15\n2023,7,1,0,0,0,0,15\n");
        CHECK_THROWS_WITH_AS((void)load_weather_csv(p, CsvSchema{}),
                             doctest::Contains("duplicated"), DataError);
        std::remove(p.c_str());
    }
    SUBCASE("non-monotonic timestamps") {
        const std::string p = write_temp_csv(
            header + "2023,7,1,5,0,0,0,15\n2023,7,1,4,0,0,0,15\n");
        CHECK_THROWS_WITH_AS((void)load_weather_csv(p, CsvSchema{}),
                             doctest::Contains("non-monotonic"), DataError);
        std::remove(p.c_str());
    }
    SUBCASE("negative irradiance") {
        const std::string p =
            write_temp_csv(header + "2023,7,1,0,0,-5,0,15\n");
        CHECK_THROWS_WITH_AS((void)load_weather_csv(p, CsvSchema{}),
                             doctest::Contains("negative irradiance"), DataError);
        std::remove(p.c_str());
    }
    SUBCASE("NaN value") {
        const std::string p =
            write_temp_csv(header + "2023,7,1,0,0,nan,0,15\n");
        CHECK_THROWS_WITH_AS((void)load_weather_csv(p, CsvSchema{}),
                             doctest::Contains("NaN"), DataError);
        std::remove(p.c_str());
    }
}

TEST_CASE("noise std grows as sqrt of lead and plateaus at the cap") {
    CHECK(forecast_noise_std(0.0, 10.0, 100.0) == 0.0);
    CHECK(forecast_noise_std(25.0, 10.0, 100.0) == doctest::Approx(5.0));
    CHECK(forecast_noise_std(100.0, 10.0, 100.0) == doctest::Approx(10.0));
    CHECK(forecast_noise_std(400.0, 10.0, 100.0) == doctest::Approx(10.0));
}

TEST_CASE("forecast basics: lead zero, determinism, night zeroing") {
    const auto truth = synthesize_clear_sky(kSite, kStart, 4, ClearSkyParams{});
    std::vector<bool> night(truth.size());
    for (std::size_t t = 0; t < truth.size(); ++t)
        night[t] = !sun_position(kSite, truth[t].time).daylight();

    ForecastConfig cfg{0.8, 0.1, 336.0};
    const auto a = make_forecast(truth, night, 10, cfg, 7);
    const auto b = make_forecast(truth, night, 10, cfg, 7);
    const auto c = make_forecast(truth, night, 10, cfg, 8);

    CHECK(a.samples[0].dni == truth[10].dni);
    CHECK(a.samples[0].temperature == truth[10].temperature);
    REQUIRE(a.samples.size() == truth.size() - 10);

    bool identical = true, differs = false;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        identical = identical && a.samples[i].dni == b.samples[i].dni &&
                    a.samples[i].temperature == b.samples[i].temperature;
        differs = differs || a.samples[i].temperature != c.samples[i].temperature;
        CHECK(a.samples[i].dni >= 0.0);
        CHECK(a.samples[i].dhi >= 0.0);
        if (night[10 + i]) {
            CHECK(a.samples[i].dni == 0.0);
            CHECK(a.samples[i].dhi == 0.0);
        }
    }
    CHECK(identical);
    CHECK(differs);
}

TEST_CASE("zero-noise forecast reproduces the truth exactly") {
    const auto truth = synthesize_clear_sky(kSite, kStart, 3, ClearSkyParams{});
    std::vector<bool> night(truth.size());
    for (std::size_t t = 0; t < truth.size(); ++t)
        night[t] = !sun_position(kSite, truth[t].time).daylight();
    ForecastConfig cfg{0.8, 0.0, 336.0};
    const auto f = make_forecast(truth, night, 0, cfg, 123);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        CHECK(f.samples[i].dni == truth[i].dni);
        CHECK(f.samples[i].dhi == truth[i].dhi);
        CHECK(f.samples[i].temperature == truth[i].temperature);
    }
}

TEST_CASE("empirical error std at fixed lead matches the schedule (gamma 0)") {
    // With no autoregression the error at lead L is exactly sigma(L) * z, so
    // the empirical std over seeds must match the schedule. Temperature is the
    // unclamped channel and is used for the comparison.
    const auto truth = synthesize_clear_sky(kSite, kStart, 3, ClearSkyParams{});
    std::vector<bool> night(truth.size());
    for (std::size_t t = 0; t < truth.size(); ++t)
        night[t] = !sun_position(kSite, truth[t].time).daylight();

    ForecastConfig cfg{0.0, 0.1, 336.0};
    const SeriesRanges ranges = expected_ranges(truth);
    const std::size_t lead = 12;
    const int n = 600;
    double ss = 0.0;
    for (int s = 0; s < n; ++s) {
        const auto f =
            make_forecast(truth, night, 0, cfg, 1000 + static_cast<std::uint64_t>(s));
        const double err = f.samples[lead].temperature - truth[lead].temperature;
        ss += err * err;
    }
    const double emp = std::sqrt(ss / n);
    const double expect = forecast_noise_std(static_cast<double>(lead),
                                             cfg.max_std_fraction * ranges.temperature,
                                             cfg.cap_lead_hours);
    CHECK(emp == doctest::Approx(expect).epsilon(0.05));
}

TEST_CASE("forecast config validation") {
    CHECK_THROWS_AS((ForecastConfig{1.0, 0.1, 336.0}.validate()), ConfigError);
    CHECK_THROWS_AS((ForecastConfig{0.5, -0.1, 336.0}.validate()), ConfigError);
    CHECK_THROWS_AS((ForecastConfig{0.5, 0.1, 0.0}.validate()), ConfigError);
    CHECK_NOTHROW((ForecastConfig{0.8, 0.1, 336.0}.validate()));
}
