#ifndef CARLFWM_PHYSICAL_SYSTEM_HPP
#define CARLFWM_PHYSICAL_SYSTEM_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace carlfwm {

/// Wavelength (m) -> angular frequency (rad/s).
double angular_frequency_from_wavelength(double wavelength);
/// Angular frequency (rad/s) -> wavelength (m).
double wavelength_from_angular_frequency(double omega);

/// Dipole-allowed transitions of the four-level ladder:
/// |1>-|0>, |2>-|1>, |3>-|2> and the closing |3>-|0>.
enum class TransitionLabel { T10, T21, T32, T30 };

struct Transition {
  TransitionLabel label = TransitionLabel::T10;
  double wavelength = 0.0;  // m
  double einstein_a = 0.0;  // s^-1
  // C m; when absent it is reconstructed from einstein_a
  std::optional<double> dipole_moment;

  double angular_frequency() const { return angular_frequency_from_wavelength(wavelength); }
};

struct PumpField {
  int index = 0;               // 1..3
  double wavelength = 0.0;     // m
  double detuning = 0.0;       // rad/s, relative to the transition it drives
  double rabi_frequency = 0.0; // rad/s
  std::optional<double> intensity; // W m^-2, derived

  double angular_frequency() const { return angular_frequency_from_wavelength(wavelength); }
  double wavenumber() const;
};

struct AtomicSpecies {
  std::string name;
  double mass = 0.0; // kg
  // order: 1->0, 2->1, 3->2, 3->0
  std::array<Transition, 4> transitions{};

  const Transition& transition(TransitionLabel label) const;
};

struct Cavity {
  double length = 0.0;              // m
  double mirror_transmission = 0.0; // T_c; reflectivity R = 1 - T_c

  double reflectivity() const { return 1.0 - mirror_transmission; }
};

struct Sample {
  double atom_count = 0.0;  // N
  double length = 0.0;      // m
  double radius = 0.0;      // m
  double temperature = 0.0; // K
  double density = 0.0;     // m^-3, true number density n_s
};

/// A complete experiment description. Construct through create(), which
/// derives the probe wavelength from the sum-frequency condition
/// omega = omega_p1 + omega_p2 + omega_p3 and checks every invariant.
struct PhysicalSystem {
  AtomicSpecies species;
  std::array<PumpField, 3> pumps{};
  Cavity cavity;
  Sample sample;
  double probe_wavelength = 0.0; // m, always derived from the pumps

  static PhysicalSystem create(AtomicSpecies species, std::array<PumpField, 3> pumps,
                               Cavity cavity, Sample sample,
                               std::optional<double> declared_probe_wavelength = {});

  double probe_angular_frequency() const { return angular_frequency_from_wavelength(probe_wavelength); }
  double probe_wavenumber() const;
};

/// The Cs proof-of-principle parameter set: three infrared pumps
/// (852 nm, 1.47 um, 2.93 um) on the 6S-6P-7S-7P ladder producing
/// blue light near 455 nm.
PhysicalSystem builtin_cs_example();

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Warning;
  std::string message;
};

/// Regime checks. Throws std::invalid_argument on invariant violations
/// (non-positive dimensions, T_c outside (0,1), zero detuning); returns
/// warnings for strained approximations: |Omega/Delta| >= 0.5, temperature
/// below the recoil temperature, kappa_bar >= 0.1.
std::vector<Diagnostic> validate(const PhysicalSystem& system);

} // namespace carlfwm

#endif
