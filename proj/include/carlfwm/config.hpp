#ifndef CARLFWM_CONFIG_HPP
#define CARLFWM_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "carlfwm/physical_system.hpp"

namespace carlfwm {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Integrator/ensemble values a config file or command line may pin.
/// Unset fields fall back to derived values (sigma_bar, kappa_bar when a
/// physical system is present) and then to RunConfig defaults.
struct RunOverlay {
  std::optional<int> n_particles;
  std::optional<double> sigma_bar;
  std::optional<double> kappa_bar;
  std::optional<double> a0;
  std::optional<double> t_end;
  std::optional<double> dt;
  std::optional<int> sample_every;
  std::optional<std::uint64_t> seed;
  std::optional<bool> symmetrize_momenta;

  /// Fields set in `other` win.
  RunOverlay merged_with(const RunOverlay& other) const;
  /// Names of the fields set in this overlay.
  std::vector<std::string> set_fields() const;
};

struct ParsedConfig {
  std::optional<PhysicalSystem> system;
  RunOverlay run;
};

/// Strict sectioned key = value parser. Unknown sections or keys are
/// errors (with a nearest-key suggestion); units are part of the key
/// names. Throws ConfigError.
ParsedConfig parse_config(const std::string& path);
ParsedConfig parse_config_text(const std::string& text, const std::string& origin);

} // namespace carlfwm

#endif
