#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "carlfwm/constants.hpp"
#include "carlfwm/parameter_map.hpp"

using namespace carlfwm;
namespace k = carlfwm::constants;

namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

// frozen outputs of the Cs chain, evaluated independently from the formulas
constexpr double kMu10 = 2.6908814734406406e-29;
constexpr double kMu30 = 3.752913690872494e-30;
constexpr double kProbeLambda = 4.5552318176740025e-07;
constexpr double kOmegaR = 181824.76400639708;
constexpr double kRho = 41.16832519207697;

} // namespace

TEST_CASE("dipole reconstruction from Einstein A") {
  const double omega_852 = angular_frequency_from_wavelength(852e-9);
  const double mu10 = dipole_from_einstein_a(3.3e7, omega_852);
  CHECK(rel_diff(mu10, kMu10) < 1e-12);
  CHECK(rel_diff(mu10, 2.69e-29) < 0.01);

  CHECK(dipole_from_einstein_a(0.0, omega_852) == 0.0);

  const double omega_probe = angular_frequency_from_wavelength(kProbeLambda);
  const double mu30 = dipole_from_einstein_a(4.2e6, omega_probe);
  CHECK(rel_diff(mu30, kMu30) < 1e-12);
  CHECK(rel_diff(mu30, 3.7e-30) < 0.02);

  CHECK_THROWS_AS(dipole_from_einstein_a(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(dipole_from_einstein_a(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("s30 coherence") {
  const double d = 1.65e11;

  SUBCASE("any pump off gives zero") {
    CHECK(coherence_s30(0.0, 5.0 * d, 5.0 * d, d, 25.0 * d, d) == 0.0);
  }

  SUBCASE("example ratios with Delta_20 ~ Delta_21") {
    // Omega = |Delta|/5 each, Delta_21 = 25 Delta_10, Delta_30 = Delta_10
    const double s30 = coherence_s30(d / 5.0, 5.0 * d, 5.0 * d, d, 25.0 * d, d);
    CHECK(s30 == doctest::Approx(-0.2).epsilon(1e-12));
  }

  SUBCASE("exact Delta_20 = 26 Delta_10 gives -5/26") {
    const double s30 = coherence_s30(d / 5.0, 5.0 * d, 5.0 * d, d, 26.0 * d, d);
    CHECK(s30 == doctest::Approx(-5.0 / 26.0).epsilon(1e-12));
  }

  SUBCASE("degree-0 homogeneity") {
    const double base = coherence_s30(1e10, 8e11, 8e11, d, 26.0 * d, d);
    const double scaled = coherence_s30(2e10, 16e11, 16e11, 2.0 * d, 52.0 * d, 2.0 * d);
    CHECK(rel_diff(scaled, base) < 1e-12);
  }

  CHECK_THROWS_AS(coherence_s30(1.0, 1.0, 1.0, 0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("adiabatic pump coherences") {
  auto system = builtin_cs_example();

  const PumpCoherences s = adiabatic_coherences(system.pumps);
  CHECK(s.s10 == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(s.s21 == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(s.s32 == doctest::Approx(-0.2).epsilon(1e-12));

  SUBCASE("pump off gives zero coherence") {
    system.pumps[0].rabi_frequency = 0.0;
    CHECK(adiabatic_coherences(system.pumps).s10 == 0.0);
  }

  SUBCASE("detuning sign flips the coherence") {
    auto flipped = system.pumps;
    flipped[0].detuning = -flipped[0].detuning;
    CHECK(adiabatic_coherences(flipped).s10 ==
          doctest::Approx(-adiabatic_coherences(system.pumps).s10).epsilon(1e-12));
  }
}

TEST_CASE("recoil frequency") {
  const double wavenumber = 2.0 * std::numbers::pi / kProbeLambda;
  const double omega_r = recoil_frequency(wavenumber, k::cs133_mass);
  CHECK(rel_diff(omega_r, kOmegaR) < 1e-12);
  CHECK(omega_r > 1.75e5);
  CHECK(omega_r < 1.85e5);

  CHECK(rel_diff(recoil_frequency(wavenumber, 2.0 * k::cs133_mass), omega_r / 2.0) < 1e-15);

  const double recoil_temp = k::hbar * omega_r / k::boltzmann;
  CHECK(recoil_temp > 1.3e-6);
  CHECK(recoil_temp < 1.5e-6);

  CHECK_THROWS_AS(recoil_frequency(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("rho parameter") {
  const DerivedParameters d = derive_parameters(builtin_cs_example());
  CHECK(rel_diff(d.scaled.rho, kRho) < 1e-10);
  CHECK(d.scaled.rho > 40.0);
  CHECK(d.scaled.rho < 52.0);

  SUBCASE("zero coupling gives zero rho") {
    CHECK(rho_parameter(kMu30, d.probe_omega, d.scaled.cavity_density, 0.0, d.scaled.omega_r) ==
          0.0);
  }

  SUBCASE("rho scales as density^(1/3)") {
    const double base = rho_parameter(kMu30, d.probe_omega, 2e15, -0.2, kOmegaR);
    const double octupled = rho_parameter(kMu30, d.probe_omega, 8.0 * 2e15, -0.2, kOmegaR);
    CHECK(rel_diff(octupled, 2.0 * base) < 1e-12);
  }
}

TEST_CASE("cavity linewidth") {
  const CavityLinewidth lw = cavity_linewidth(0.1, 1.0 - 3e-5, kOmegaR, kRho);
  CHECK(rel_diff(lw.kappa, 89937.7374) < 1e-10);
  CHECK(lw.kappa_bar > 0.008);
  CHECK(lw.kappa_bar < 0.015);

  SUBCASE("perfect mirrors") {
    const CavityLinewidth lossless = cavity_linewidth(0.1, 1.0 - 1e-12, kOmegaR, kRho);
    CHECK(lossless.kappa_bar < 1e-9);
  }

  CHECK_THROWS_AS(cavity_linewidth(0.1, 1.5, kOmegaR, kRho), std::invalid_argument);
  CHECK_THROWS_AS(cavity_linewidth(0.1, 0.0, kOmegaR, kRho), std::invalid_argument);
}

TEST_CASE("thermal momentum spread") {
  const double wavenumber = 2.0 * std::numbers::pi / kProbeLambda;

  const double sigma = sigma_bar_from_temperature(7e-6, k::cs133_mass, wavenumber, kRho);
  CHECK(sigma > 0.08);
  CHECK(sigma < 0.12);

  CHECK(sigma_bar_from_temperature(0.0, k::cs133_mass, wavenumber, kRho) == 0.0);

  SUBCASE("quadrupling T doubles sigma") {
    const double quad = sigma_bar_from_temperature(28e-6, k::cs133_mass, wavenumber, kRho);
    CHECK(rel_diff(quad, 2.0 * sigma) < 1e-12);
  }

  SUBCASE("consistency with the unscaled half-width") {
    const double unscaled = sigma * k::hbar * wavenumber * kRho;
    const double direct = std::sqrt(2.0 * k::cs133_mass * k::boltzmann * 7e-6);
    CHECK(rel_diff(unscaled, direct) < 1e-12);
  }
}

TEST_CASE("pump intensity from Rabi frequency") {
  const double i_p1 = rabi_to_intensity(3.3e10, kMu10);
  // W/m^2 -> W/cm^2 band around the reference 8.9e3
  CHECK(i_p1 / 1e4 > 8.0e3);
  CHECK(i_p1 / 1e4 < 9.8e3);

  CHECK(rabi_to_intensity(0.0, kMu10) == 0.0);
  CHECK_THROWS_AS(rabi_to_intensity(1.0, 0.0), std::invalid_argument);

  SUBCASE("definition matches the field-amplitude helper") {
    const double amplitude = field_amplitude_from_rabi(3.3e10, kMu10);
    CHECK(rel_diff(i_p1, 2.0 * k::epsilon0 * k::speed_of_light * amplitude * amplitude) < 1e-15);
    CHECK(rel_diff(rabi_from_field_amplitude(amplitude, kMu10), 3.3e10) < 1e-15);
  }

  SUBCASE("pumps 2 and 3, frozen regression values") {
    const DerivedParameters d = derive_parameters(builtin_cs_example());
    CHECK(rel_diff(d.pump_intensity1, 8.8795405045917939e7) < 1e-10);
    CHECK(rel_diff(d.pump_intensity2, 2.9714606530381464e10) < 1e-10);
    CHECK(rel_diff(d.pump_intensity3, 1.1257459203375496e10) < 1e-10);
  }
}

TEST_CASE("intensity unscaling") {
  const DerivedParameters d = derive_parameters(builtin_cs_example());
  const ScaledParameters& s = d.scaled;

  CHECK(unscale_intensity(0.0, s).intracavity == 0.0);

  SUBCASE("two algebraic routes agree") {
    const double a2 = 0.7;
    const UnscaledIntensity u = unscale_intensity(a2, s);
    const double amplitude_sq = s.cavity_density * k::hbar * d.probe_omega * s.rho * a2 /
                                (2.0 * k::epsilon0);
    const double direct = 2.0 * k::epsilon0 * k::speed_of_light * amplitude_sq;
    CHECK(rel_diff(u.intracavity, direct) < 1e-10);
    CHECK(rel_diff(u.transmitted, 3e-5 * direct) < 1e-10);
  }

  SUBCASE("Cs example, unit |a|^2") {
    const UnscaledIntensity u = unscale_intensity(1.0, s);
    CHECK(u.intracavity / 1e4 > 1.0e3); // W/cm^2
    CHECK(u.intracavity / 1e4 < 1.4e3);
  }

  SUBCASE("rho = 47 reproduces the rounded reference intensity unit") {
    ScaledParameters ref = s;
    ref.rho = 47.0;
    ref.intensity_unit = k::speed_of_light * s.cavity_density * k::hbar * d.probe_omega * 47.0;
    const UnscaledIntensity u = unscale_intensity(1.0, ref);
    CHECK(u.intracavity / 1e4 == doctest::Approx(1.2e3).epsilon(0.03));
  }
}

TEST_CASE("time unscaling") {
  ScaledParameters params;
  params.omega_r = 1.8e5;
  params.rho = 47.0;
  params.time_unit = 1.0 / (params.omega_r * params.rho);

  CHECK(unscale_time(0.0, params) == 0.0);
  CHECK(unscale_time(15.4, params) == doctest::Approx(1.8e-6).epsilon(0.02));

  const double t = 3.7e-6;
  CHECK(rel_diff(unscale_time(scale_time(t, params), params), t) < 1e-12);
}

TEST_CASE("phase matching") {
  const double probe_k = 2.0 * std::numbers::pi / kProbeLambda;
  const PhysicalSystem system = builtin_cs_example();
  const std::array<double, 3> pump_ks = {system.pumps[0].wavenumber(),
                                         system.pumps[1].wavenumber(),
                                         system.pumps[2].wavenumber()};

  SUBCASE("collinear co-propagating, exact sum frequency") {
    const double sum = pump_ks[0] + pump_ks[1] + pump_ks[2];
    const PhaseMatching pm = phase_matching(pump_ks, sum, 200e-6);
    CHECK(pm.delta_k == 0.0);
    CHECK(std::isinf(pm.coherence_length));
    CHECK(pm.suppression == 1.0);
  }

  SUBCASE("counter-propagating probe") {
    const PhaseMatching pm = phase_matching(pump_ks, -probe_k, 200e-6);
    CHECK(std::abs(pm.delta_k) == doctest::Approx(2.0 * probe_k).epsilon(1e-3));
    CHECK(pm.coherence_length * 1e9 == doctest::Approx(227.76).epsilon(2e-3));
    CHECK(pm.grating_period * 1e9 > 226.5);
    CHECK(pm.grating_period * 1e9 < 228.5);
    CHECK(pm.suppression > 1.2e-6);
    CHECK(pm.suppression < 1.4e-6);
  }
}

TEST_CASE("full Cs pipeline lands in every band") {
  const DerivedParameters d = derive_parameters(builtin_cs_example());
  const ScaledParameters& s = d.scaled;

  CHECK(s.rho > 40.0);
  CHECK(s.rho < 52.0);
  CHECK(s.omega_r > 1.75e5);
  CHECK(s.omega_r < 1.85e5);
  CHECK(s.kappa_bar > 0.008);
  CHECK(s.kappa_bar < 0.015);
  CHECK(s.sigma_bar > 0.08);
  CHECK(s.sigma_bar < 0.12);
  CHECK(d.pump_intensity1 / 1e4 > 8.0e3);
  CHECK(d.pump_intensity1 / 1e4 < 9.8e3);
  CHECK(d.recoil_temperature > 1.3e-6);
  CHECK(d.recoil_temperature < 1.5e-6);

  CHECK(rel_diff(s.s30, -5.0 / 26.0) < 1e-12);
  CHECK(rel_diff(s.time_unit, 1.0 / (s.omega_r * s.rho)) < 1e-15);
  CHECK(rel_diff(s.cavity_density, 2e15) < 1e-12);
}
