#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "carlfwm/analysis.hpp"
#include "carlfwm/parameter_map.hpp"

using namespace carlfwm;

namespace {

RunConfig cold_config(int n = 512) {
  RunConfig config;
  config.n_particles = n;
  config.sigma_bar = 0.0;
  config.kappa_bar = 0.0;
  config.a0 = 1e-5;
  config.t_end = 25.0;
  config.dt = 1e-3;
  config.sample_every = 100;
  return config;
}

// one shared cold run; several checks read it
const TimeSeries& cold_run() {
  static const TimeSeries series = simulate(cold_config());
  return series;
}

TimeSeries synthetic_exponential(double rate, double i0, double t_end, double dt) {
  TimeSeries series;
  for (double t = 0.0; t <= t_end + 1e-12; t += dt) {
    TimeSeriesRow row;
    row.t = t;
    row.intensity = i0 * std::exp(rate * t);
    series.rows.push_back(row);
  }
  return series;
}

} // namespace

TEST_CASE("growth-rate fitting") {
  SUBCASE("exact exponential") {
    const TimeSeries series = synthetic_exponential(2.0, 1e-10, 12.0, 0.05);
    const GrowthFit fit = fit_growth_rate(series);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(fit.r2 > 0.999999);
    CHECK(fit.n_points >= 10);
    CHECK(fit.t_lo < fit.t_hi);
  }

  SUBCASE("constant series has zero slope") {
    TimeSeries series;
    for (int i = 0; i < 50; ++i) {
      TimeSeriesRow row;
      row.t = 0.1 * i;
      row.intensity = 5e-5;
      series.rows.push_back(row);
    }
    const GrowthFit fit = fit_growth_rate(series);
    CHECK(std::abs(fit.slope) < 1e-12);
    CHECK(fit.r2 >= 0.0);
    CHECK(fit.r2 <= 1.0);
  }

  SUBCASE("window too small") {
    const TimeSeries series = synthetic_exponential(2.0, 1e-10, 0.2, 0.05);
    CHECK_THROWS_AS(fit_growth_rate(series), std::invalid_argument);
  }

  SUBCASE("cold simulation grows at sqrt(3)") {
    const GrowthFit fit = fit_growth_rate(cold_run());
    CHECK(fit.slope == doctest::Approx(std::sqrt(3.0)).epsilon(0.05));
  }
}

TEST_CASE("characteristic cubic of the collective mode") {
  SUBCASE("undamped roots are the cube roots of i") {
    const CollectiveModeRoots roots = linear_growth_rate(0.0);
    CHECK(roots.max_field_rate == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
    CHECK(roots.intensity_rate() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

    bool found_decaying = false;
    for (const auto& root : roots.roots) {
      if (std::abs(root - std::complex<double>(0.0, -1.0)) < 1e-10) found_decaying = true;
    }
    CHECK(found_decaying);
  }

  SUBCASE("roots satisfy the cubic and Vieta's relations") {
    for (double kappa_bar : {0.0, 0.01, 0.05, 0.5, 5.0}) {
      const CollectiveModeRoots roots = linear_growth_rate(kappa_bar);
      std::complex<double> sum{0.0, 0.0};
      std::complex<double> product{1.0, 0.0};
      for (const auto& root : roots.roots) {
        const auto residual = root * root * root + kappa_bar * root * root -
                              std::complex<double>(0.0, 1.0);
        CHECK(std::abs(residual) < 1e-10);
        sum += root;
        product *= root;
      }
      CHECK(std::abs(sum + kappa_bar) < 1e-10);
      CHECK(std::abs(product - std::complex<double>(0.0, 1.0)) < 1e-10);
    }
  }

  SUBCASE("strong damping quenches the instability") {
    const CollectiveModeRoots weak = linear_growth_rate(1e4);
    CHECK(weak.max_field_rate > 0.0);
    CHECK(weak.max_field_rate < 0.02);
  }

  SUBCASE("good-cavity example barely shifts the rate") {
    const CollectiveModeRoots roots = linear_growth_rate(0.011);
    CHECK(roots.intensity_rate() == doctest::Approx(std::sqrt(3.0)).epsilon(0.02));
  }
}

TEST_CASE("saturation detection") {
  SUBCASE("monotone series has no saturation") {
    const TimeSeries series = synthetic_exponential(1.0, 1e-10, 20.0, 0.1);
    CHECK_THROWS_AS(detect_saturation(series), SaturationNotFound);
  }

  SUBCASE("cold run saturates in the expected window") {
    const SaturationReport report = detect_saturation(cold_run());
    CHECK(report.t_sat > 12.0);
    CHECK(report.t_sat < 17.0);
    CHECK(report.a2_max > 1.0);
    CHECK(report.a2_max < 1.5);
    CHECK(report.oscillation_amplitude > 0.0);
    CHECK(report.oscillation_amplitude <= report.a2_max);
  }
}

TEST_CASE("sigma scans") {
  RunConfig base = cold_config(512);

  SUBCASE("needs at least two values") {
    const double one[] = {0.0};
    CHECK_THROWS_AS(scan_sigma(base, one), std::invalid_argument);
  }

  SUBCASE("thermal spread slows the instability") {
    const double sigmas[] = {0.0, 1.0};
    const auto table = scan_sigma(base, sigmas);
    REQUIRE(table.size() == 2);
    CHECK(table[1].growth_rate < table[0].growth_rate);
  }

  SUBCASE("cold-limit insensitivity at sigma = 0.1") {
    const double sigmas[] = {0.0, 0.1};
    const auto table = scan_sigma(base, sigmas);
    CHECK(table[1].growth_rate ==
          doctest::Approx(table[0].growth_rate).epsilon(0.05));
  }

  SUBCASE("monotone over the wide spread set, no peak past sigma ~ 1") {
    const double sigmas[] = {0.0, 0.5, 1.0, 2.0};
    const auto table = scan_sigma(base, sigmas); // throws if rates increase
    REQUIRE(table.size() == 4);
    for (std::size_t i = 1; i < 4; ++i) {
      CHECK(table[i].growth_rate < table[i - 1].growth_rate);
      CHECK(table[i].a2_max < table[i - 1].a2_max);
    }
    // unsaturated members report an infinite saturation time
    CHECK(std::isinf(table[3].t_sat));
  }
}

TEST_CASE("cold saturation time unscales to the Cs microsecond range") {
  const SaturationReport report = detect_saturation(cold_run());
  const DerivedParameters d = derive_parameters(builtin_cs_example());
  const double t_sat = unscale_time(report.t_sat, d.scaled);
  CHECK(t_sat > 1.4e-6);
  CHECK(t_sat < 2.1e-6);
}

TEST_CASE("oracle equivalence: fitted rates match the cubic") {
  for (double kappa_bar : {0.0, 0.05}) {
    RunConfig config = cold_config(512);
    config.kappa_bar = kappa_bar;
    const TimeSeries series = (kappa_bar == 0.0) ? cold_run() : simulate(config);
    const GrowthFit fit = fit_growth_rate(series);
    const double predicted = linear_growth_rate(kappa_bar).intensity_rate();
    CHECK(fit.slope == doctest::Approx(predicted).epsilon(0.05));
  }
}

TEST_CASE("global phase is a gauge freedom of the diagnostics") {
  RunConfig config = cold_config(128);
  config.sigma_bar = 0.2;
  config.kappa_bar = 0.01;
  config.t_end = 10.0;
  config.seed = 7;

  SimState plain = init_quiet_start(config);
  SimState rotated = plain;
  const double phase = 1.234;
  rotated.a *= std::polar(1.0, phase);
  for (auto& theta : rotated.theta) theta -= phase;

  const TimeSeries a = integrate(plain, config);
  const TimeSeries b = integrate(rotated, config);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a.rows[i].intensity - b.rows[i].intensity) < 1e-10);
    CHECK(std::abs(a.rows[i].bunching_mag - b.rows[i].bunching_mag) < 1e-10);
    CHECK(std::abs(a.rows[i].mean_p - b.rows[i].mean_p) < 1e-10);
  }
}
