#include "carlfwm/physical_system.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "carlfwm/constants.hpp"
#include "carlfwm/parameter_map.hpp"

namespace carlfwm {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

} // namespace

double angular_frequency_from_wavelength(double wavelength) {
  require(wavelength > 0.0, "wavelength must be positive");
  return two_pi * constants::speed_of_light / wavelength;
}

double wavelength_from_angular_frequency(double omega) {
  require(omega > 0.0, "angular frequency must be positive");
  return two_pi * constants::speed_of_light / omega;
}

double PumpField::wavenumber() const {
  return two_pi / wavelength;
}

double PhysicalSystem::probe_wavenumber() const {
  return two_pi / probe_wavelength;
}

const Transition& AtomicSpecies::transition(TransitionLabel label) const {
  for (const auto& t : transitions) {
    if (t.label == label) return t;
  }
  throw std::invalid_argument("transition missing from species");
}

PhysicalSystem PhysicalSystem::create(AtomicSpecies species, std::array<PumpField, 3> pumps,
                                      Cavity cavity, Sample sample,
                                      std::optional<double> declared_probe_wavelength) {
  require(species.mass > 0.0, "species mass must be positive");
  bool seen[4] = {false, false, false, false};
  for (const auto& t : species.transitions) {
    require(t.wavelength > 0.0, "transition wavelength must be positive");
    require(t.einstein_a >= 0.0, "Einstein A coefficient must be non-negative");
    if (t.dipole_moment) require(*t.dipole_moment > 0.0, "dipole moment must be positive");
    seen[static_cast<int>(t.label)] = true;
  }
  require(seen[0] && seen[1] && seen[2] && seen[3],
          "species needs all four dipole-allowed transitions (1-0, 2-1, 3-2, 3-0)");

  for (int i = 0; i < 3; ++i) {
    const auto& p = pumps[static_cast<std::size_t>(i)];
    require(p.index == i + 1, "pump fields must be ordered 1, 2, 3");
    require(p.wavelength > 0.0, "pump wavelength must be positive");
    require(p.rabi_frequency >= 0.0, "Rabi frequency must be non-negative");
    require(p.detuning != 0.0, "pump detuning must be nonzero (non-resonant excitation)");
  }

  require(cavity.length > 0.0, "cavity length must be positive");
  require(cavity.mirror_transmission > 0.0 && cavity.mirror_transmission < 1.0,
          "mirror transmission must lie in (0, 1)");

  require(sample.length > 0.0, "sample length must be positive");
  require(sample.radius > 0.0, "sample radius must be positive");
  require(sample.temperature > 0.0, "sample temperature must be positive");
  require(sample.atom_count > 0.0 || sample.density > 0.0,
          "sample needs an atom count or a density");

  const double volume = std::numbers::pi * sample.radius * sample.radius * sample.length;
  if (sample.atom_count > 0.0 && sample.density > 0.0) {
    const double implied = sample.atom_count / volume;
    if (std::abs(implied - sample.density) > 0.01 * sample.density) {
      std::ostringstream msg;
      msg << "sample density " << sample.density << " m^-3 inconsistent with N/(pi r^2 L) = "
          << implied << " m^-3 (beyond 1%)";
      throw std::invalid_argument(msg.str());
    }
  } else if (sample.atom_count > 0.0) {
    sample.density = sample.atom_count / volume;
  } else {
    sample.atom_count = sample.density * volume;
  }

  const double omega_sum = pumps[0].angular_frequency() + pumps[1].angular_frequency() +
                           pumps[2].angular_frequency();
  if (declared_probe_wavelength) {
    const double declared_omega = angular_frequency_from_wavelength(*declared_probe_wavelength);
    if (std::abs(declared_omega - omega_sum) > 1e-6 * omega_sum) {
      std::ostringstream msg;
      msg << "declared probe wavelength " << *declared_probe_wavelength
          << " m violates the sum-frequency condition (expected "
          << wavelength_from_angular_frequency(omega_sum) << " m)";
      throw std::invalid_argument(msg.str());
    }
  }

  PhysicalSystem system;
  system.species = std::move(species);
  system.pumps = pumps;
  system.cavity = cavity;
  system.sample = sample;
  system.probe_wavelength = wavelength_from_angular_frequency(omega_sum);
  return system;
}

PhysicalSystem builtin_cs_example() {
  const double a10 = 3.3e7;
  const double delta10 = 5000.0 * a10;  // 1.65e11 rad/s
  const double delta21 = 25.0 * delta10;
  const double delta32 = -25.0 * delta10;

  AtomicSpecies cs;
  cs.name = "Cs";
  cs.mass = constants::cs133_mass;

  const double lambda_p1 = 852e-9;
  const double lambda_p2 = 1.47e-6;
  const double lambda_p3 = 2.93e-6;
  const double omega_sum = angular_frequency_from_wavelength(lambda_p1) +
                           angular_frequency_from_wavelength(lambda_p2) +
                           angular_frequency_from_wavelength(lambda_p3);

  cs.transitions = {
      Transition{TransitionLabel::T10, lambda_p1, a10, {}},
      Transition{TransitionLabel::T21, lambda_p2, 1.2e7, {}},
      Transition{TransitionLabel::T32, lambda_p3, 4.0e6, {}},
      // the 3-0 transition sits at the sum frequency of the pumps
      Transition{TransitionLabel::T30, wavelength_from_angular_frequency(omega_sum), 4.2e6, {}},
  };

  std::array<PumpField, 3> pumps{
      PumpField{1, lambda_p1, delta10, delta10 / 5.0, {}},
      PumpField{2, lambda_p2, delta21, delta21 / 5.0, {}},
      PumpField{3, lambda_p3, delta32, std::abs(delta32) / 5.0, {}},
  };

  Cavity cavity{0.1, 3e-5};
  Sample sample{1e6, 200e-6, 40e-6, 7e-6, 1e18};

  return PhysicalSystem::create(std::move(cs), pumps, cavity, sample);
}

std::vector<Diagnostic> validate(const PhysicalSystem& system) {
  // Re-run the construction checks so directly aggregate-initialized
  // systems fail loudly too.
  PhysicalSystem::create(system.species, system.pumps, system.cavity, system.sample);

  std::vector<Diagnostic> diagnostics;
  auto warn = [&diagnostics](const std::string& message) {
    diagnostics.push_back({Severity::Warning, message});
  };

  for (const auto& pump : system.pumps) {
    const double ratio = std::abs(pump.rabi_frequency / pump.detuning);
    if (ratio >= 0.5) {
      std::ostringstream msg;
      msg << "pump " << pump.index << ": |Omega/Delta| = " << ratio
          << " >= 0.5, adiabatic elimination strained";
      warn(msg.str());
    }
  }

  const DerivedParameters derived = derive_parameters(system);

  if (system.sample.temperature < derived.recoil_temperature) {
    std::ostringstream msg;
    msg << "temperature " << system.sample.temperature * 1e6
        << " uK below recoil temperature " << derived.recoil_temperature * 1e6
        << " uK; classical motion invalid";
    warn(msg.str());
  }

  if (derived.scaled.kappa_bar >= 0.1) {
    std::ostringstream msg;
    msg << "kappa_bar = " << derived.scaled.kappa_bar << " >= 0.1, good-cavity limit strained";
    warn(msg.str());
  }

  return diagnostics;
}

} // namespace carlfwm
