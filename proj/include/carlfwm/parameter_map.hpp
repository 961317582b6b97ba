#ifndef CARLFWM_PARAMETER_MAP_HPP
#define CARLFWM_PARAMETER_MAP_HPP

#include <span>

#include "carlfwm/physical_system.hpp"

namespace carlfwm {

/// Dimensionless model inputs plus the factors needed to map scaled
/// quantities back to SI.
struct ScaledParameters {
  double rho = 0.0;              // collective coupling parameter
  double kappa_bar = 0.0;        // cavity linewidth / (omega_r rho)
  double sigma_bar = 0.0;        // thermal momentum spread in units of hbar k rho
  double omega_r = 0.0;          // rad/s, two-photon recoil frequency
  double s30 = 0.0;              // ground/upper coherence, signed
  double cavity_density = 0.0;   // m^-3, n = n_s L / cavity length
  double probe_wavenumber = 0.0; // m^-1
  double intensity_unit = 0.0;   // W m^-2 of intracavity intensity per unit |a|^2
  double time_unit = 0.0;        // s per unit scaled time, 1/(omega_r rho)
  double mirror_transmission = 0.0; // T_c, for the transmitted intensity
};

struct PumpCoherences {
  double s10 = 0.0;
  double s21 = 0.0;
  double s32 = 0.0;
};

struct CavityLinewidth {
  double kappa = 0.0;     // s^-1
  double kappa_bar = 0.0; // dimensionless
};

struct UnscaledIntensity {
  double intracavity = 0.0; // W m^-2
  double transmitted = 0.0; // W m^-2
};

/// 1D phase-matching bookkeeping for the pump/probe geometry.
struct PhaseMatching {
  double delta_k = 0.0;         // m^-1, k_p1 + k_p2 + k_p3 - k (signed sum)
  double coherence_length = 0.0; // m, 2 pi / |delta_k| (inf when matched)
  double suppression = 0.0;      // min(1, (L_c/L)^2)
  double grating_period = 0.0;   // m, pi / |k| = lambda/2
};

/// mu = sqrt(3 pi eps0 hbar c^3 A / omega^3). Inputs must be positive
/// except einstein_a, which may be zero.
double dipole_from_einstein_a(double einstein_a, double transition_angular_frequency);

/// s30 = -Omega_p1 Omega_p2 Omega_p3 / (Delta_10 Delta_20 Delta_30).
double coherence_s30(double rabi1, double rabi2, double rabi3,
                     double delta10, double delta20, double delta30);

/// Adiabatically eliminated pump-driven coherences s_i = Omega_pi / Delta_i.
PumpCoherences adiabatic_coherences(const std::array<PumpField, 3>& pumps);

/// Field amplitude A = hbar Omega / mu of a pump with Rabi frequency Omega.
double field_amplitude_from_rabi(double rabi_frequency, double dipole_moment);
/// Omega = mu A / hbar.
double rabi_from_field_amplitude(double field_amplitude, double dipole_moment);

/// omega_r = 2 hbar k^2 / m.
double recoil_frequency(double wavenumber, double mass);

/// rho = (mu^2 omega n s30^2 / (2 eps0 hbar omega_r^2))^(1/3).
double rho_parameter(double mu30, double probe_angular_frequency, double cavity_density,
                     double s30, double omega_r);

/// kappa = c (1 - R) / cavity_length, kappa_bar = kappa / (omega_r rho).
CavityLinewidth cavity_linewidth(double cavity_length, double reflectivity,
                                 double omega_r, double rho);

/// Thermal momentum half-width sqrt(2 m k_B T) in units of hbar k rho.
double sigma_bar_from_temperature(double temperature, double mass, double wavenumber, double rho);

/// I = 2 eps0 c (hbar Omega / mu)^2 for the field convention E = A e^{i(...)} + c.c.
double rabi_to_intensity(double rabi_frequency, double dipole_moment);

/// Intracavity intensity c n hbar omega rho |a|^2 and the fraction leaking
/// through the output mirror.
UnscaledIntensity unscale_intensity(double a_squared, const ScaledParameters& params);

double unscale_time(double t_bar, const ScaledParameters& params);
double scale_time(double seconds, const ScaledParameters& params);

/// Signed 1D wavenumbers: pumps and probe carry their propagation sign.
PhaseMatching phase_matching(std::span<const double> pump_wavenumbers,
                             double probe_wavenumber, double sample_length);

/// Every quantity the physical->dimensionless derivation produces.
struct DerivedParameters {
  double probe_wavelength = 0.0; // m
  double probe_omega = 0.0;      // rad/s
  double probe_k = 0.0;          // m^-1

  double mu10 = 0.0, mu21 = 0.0, mu32 = 0.0, mu30 = 0.0; // C m

  double delta10 = 0.0, delta21 = 0.0, delta32 = 0.0; // rad/s
  double delta20 = 0.0, delta30 = 0.0;                // rad/s
  double rabi1 = 0.0, rabi2 = 0.0, rabi3 = 0.0;       // rad/s
  PumpCoherences coherences;

  double pump_intensity1 = 0.0, pump_intensity2 = 0.0, pump_intensity3 = 0.0; // W m^-2

  double kappa = 0.0;              // s^-1
  double recoil_temperature = 0.0; // K
  PhaseMatching matching;          // counter-propagating probe geometry

  ScaledParameters scaled;
};

/// Full pipeline from an experiment description to the dimensionless model.
DerivedParameters derive_parameters(const PhysicalSystem& system);

} // namespace carlfwm

#endif
