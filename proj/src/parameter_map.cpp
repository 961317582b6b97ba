#include "carlfwm/parameter_map.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "carlfwm/constants.hpp"

namespace carlfwm {

namespace {

namespace k = constants;

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

} // namespace

double dipole_from_einstein_a(double einstein_a, double transition_angular_frequency) {
  require(einstein_a >= 0.0, "Einstein A coefficient must be non-negative");
  require(transition_angular_frequency > 0.0, "transition frequency must be positive");
  const double c3 = k::speed_of_light * k::speed_of_light * k::speed_of_light;
  const double w3 = transition_angular_frequency * transition_angular_frequency *
                    transition_angular_frequency;
  return std::sqrt(3.0 * std::numbers::pi * k::epsilon0 * k::hbar * c3 * einstein_a / w3);
}

double coherence_s30(double rabi1, double rabi2, double rabi3,
                     double delta10, double delta20, double delta30) {
  require(delta10 != 0.0 && delta20 != 0.0 && delta30 != 0.0, "detunings must be nonzero");
  return -(rabi1 * rabi2 * rabi3) / (delta10 * delta20 * delta30);
}

PumpCoherences adiabatic_coherences(const std::array<PumpField, 3>& pumps) {
  for (const auto& pump : pumps) {
    require(pump.detuning != 0.0, "detunings must be nonzero");
  }
  return {pumps[0].rabi_frequency / pumps[0].detuning,
          pumps[1].rabi_frequency / pumps[1].detuning,
          pumps[2].rabi_frequency / pumps[2].detuning};
}

double field_amplitude_from_rabi(double rabi_frequency, double dipole_moment) {
  require(dipole_moment > 0.0, "dipole moment must be positive");
  return k::hbar * rabi_frequency / dipole_moment;
}

double rabi_from_field_amplitude(double field_amplitude, double dipole_moment) {
  return dipole_moment * field_amplitude / k::hbar;
}

double recoil_frequency(double wavenumber, double mass) {
  require(wavenumber > 0.0, "wavenumber must be positive");
  require(mass > 0.0, "mass must be positive");
  return 2.0 * k::hbar * wavenumber * wavenumber / mass;
}

double rho_parameter(double mu30, double probe_angular_frequency, double cavity_density,
                     double s30, double omega_r) {
  require(mu30 > 0.0, "dipole moment must be positive");
  require(probe_angular_frequency > 0.0, "probe frequency must be positive");
  require(cavity_density > 0.0, "density must be positive");
  require(omega_r > 0.0, "recoil frequency must be positive");
  const double numerator = mu30 * mu30 * probe_angular_frequency * cavity_density * s30 * s30;
  return std::cbrt(numerator / (2.0 * k::epsilon0 * k::hbar * omega_r * omega_r));
}

CavityLinewidth cavity_linewidth(double cavity_length, double reflectivity,
                                 double omega_r, double rho) {
  require(cavity_length > 0.0, "cavity length must be positive");
  require(reflectivity > 0.0 && reflectivity < 1.0, "reflectivity must lie in (0, 1)");
  require(omega_r > 0.0 && rho > 0.0, "scaling frequencies must be positive");
  const double kappa = k::speed_of_light * (1.0 - reflectivity) / cavity_length;
  return {kappa, kappa / (omega_r * rho)};
}

double sigma_bar_from_temperature(double temperature, double mass, double wavenumber, double rho) {
  require(temperature >= 0.0, "temperature must be non-negative");
  require(mass > 0.0 && wavenumber > 0.0 && rho > 0.0, "inputs must be positive");
  return std::sqrt(2.0 * mass * k::boltzmann * temperature) / (k::hbar * wavenumber * rho);
}

double rabi_to_intensity(double rabi_frequency, double dipole_moment) {
  const double amplitude = field_amplitude_from_rabi(rabi_frequency, dipole_moment);
  return 2.0 * k::epsilon0 * k::speed_of_light * amplitude * amplitude;
}

UnscaledIntensity unscale_intensity(double a_squared, const ScaledParameters& params) {
  require(a_squared >= 0.0, "|a|^2 must be non-negative");
  const double intracavity = params.intensity_unit * a_squared;
  return {intracavity, params.mirror_transmission * intracavity};
}

double unscale_time(double t_bar, const ScaledParameters& params) {
  return t_bar * params.time_unit;
}

double scale_time(double seconds, const ScaledParameters& params) {
  return seconds / params.time_unit;
}

PhaseMatching phase_matching(std::span<const double> pump_wavenumbers,
                             double probe_wavenumber, double sample_length) {
  require(probe_wavenumber != 0.0, "probe wavenumber must be nonzero");
  require(sample_length > 0.0, "sample length must be positive");

  double pump_sum = 0.0;
  for (double kp : pump_wavenumbers) pump_sum += kp;

  PhaseMatching result;
  result.delta_k = pump_sum - probe_wavenumber;
  result.grating_period = std::numbers::pi / std::abs(probe_wavenumber);
  if (result.delta_k == 0.0) {
    result.coherence_length = std::numeric_limits<double>::infinity();
    result.suppression = 1.0;
  } else {
    result.coherence_length = 2.0 * std::numbers::pi / std::abs(result.delta_k);
    const double ratio = result.coherence_length / sample_length;
    result.suppression = std::min(1.0, ratio * ratio);
  }
  return result;
}

DerivedParameters derive_parameters(const PhysicalSystem& system) {
  DerivedParameters d;

  d.probe_wavelength = system.probe_wavelength;
  d.probe_omega = system.probe_angular_frequency();
  d.probe_k = system.probe_wavenumber();

  auto dipole = [&system](TransitionLabel label) {
    const Transition& t = system.species.transition(label);
    if (t.dipole_moment) return *t.dipole_moment;
    return dipole_from_einstein_a(t.einstein_a, t.angular_frequency());
  };
  d.mu10 = dipole(TransitionLabel::T10);
  d.mu21 = dipole(TransitionLabel::T21);
  d.mu32 = dipole(TransitionLabel::T32);
  d.mu30 = dipole(TransitionLabel::T30);

  d.delta10 = system.pumps[0].detuning;
  d.delta21 = system.pumps[1].detuning;
  d.delta32 = system.pumps[2].detuning;
  d.delta20 = d.delta10 + d.delta21;
  d.delta30 = d.delta20 + d.delta32;

  d.rabi1 = system.pumps[0].rabi_frequency;
  d.rabi2 = system.pumps[1].rabi_frequency;
  d.rabi3 = system.pumps[2].rabi_frequency;
  d.coherences = adiabatic_coherences(system.pumps);

  d.pump_intensity1 = rabi_to_intensity(d.rabi1, d.mu10);
  d.pump_intensity2 = rabi_to_intensity(d.rabi2, d.mu21);
  d.pump_intensity3 = rabi_to_intensity(d.rabi3, d.mu32);

  const double s30 = coherence_s30(d.rabi1, d.rabi2, d.rabi3, d.delta10, d.delta20, d.delta30);
  if (s30 == 0.0) {
    throw std::invalid_argument("s30 vanishes (a pump is off); no collective coupling");
  }

  ScaledParameters& s = d.scaled;
  s.s30 = s30;
  s.omega_r = recoil_frequency(d.probe_k, system.species.mass);
  s.cavity_density = system.sample.density * system.sample.length / system.cavity.length;
  s.probe_wavenumber = d.probe_k;
  s.rho = rho_parameter(d.mu30, d.probe_omega, s.cavity_density, s30, s.omega_r);
  s.mirror_transmission = system.cavity.mirror_transmission;

  const CavityLinewidth lw =
      cavity_linewidth(system.cavity.length, system.cavity.reflectivity(), s.omega_r, s.rho);
  d.kappa = lw.kappa;
  s.kappa_bar = lw.kappa_bar;

  s.sigma_bar = sigma_bar_from_temperature(system.sample.temperature, system.species.mass,
                                           d.probe_k, s.rho);
  s.intensity_unit = constants::speed_of_light * s.cavity_density * constants::hbar *
                     d.probe_omega * s.rho;
  s.time_unit = 1.0 / (s.omega_r * s.rho);

  d.recoil_temperature = constants::hbar * s.omega_r / constants::boltzmann;

  // Fig. 1 geometry: pumps along +z, probe along -z.
  const std::array<double, 3> pump_ks = {system.pumps[0].wavenumber(),
                                         system.pumps[1].wavenumber(),
                                         system.pumps[2].wavenumber()};
  d.matching = phase_matching(pump_ks, -d.probe_k, system.sample.length);

  return d;
}

} // namespace carlfwm
