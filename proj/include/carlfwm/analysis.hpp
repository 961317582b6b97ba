#ifndef CARLFWM_ANALYSIS_HPP
#define CARLFWM_ANALYSIS_HPP

#include <array>
#include <complex>
#include <span>

#include "carlfwm/dynamics.hpp"

namespace carlfwm {

struct GrowthFit {
  double slope = 0.0; // d(ln |a|^2)/dt
  double t_lo = 0.0;
  double t_hi = 0.0;
  double r2 = 0.0;
  int n_points = 0;
};

/// Least-squares line on (t, ln |a|^2) over the rows with lo < |a|^2 < hi.
/// Throws std::invalid_argument when fewer than 10 rows fall in the window.
GrowthFit fit_growth_rate(const TimeSeries& series, double lo = 1e-8, double hi = 1e-2);

/// Roots of the characteristic cubic lambda^3 + kappa_bar lambda^2 - i = 0
/// of the collective mode linearized about the cold unbunched state.
/// max_field_rate is max Re lambda; the intensity grows at twice that.
struct CollectiveModeRoots {
  std::array<std::complex<double>, 3> roots{};
  double max_field_rate = 0.0;

  double intensity_rate() const { return 2.0 * max_field_rate; }
};

CollectiveModeRoots linear_growth_rate(double kappa_bar);

struct SaturationReport {
  double t_sat = 0.0;  // scaled time of the first |a|^2 maximum
  double a2_max = 0.0; // |a|^2 at that maximum
  double oscillation_amplitude = 0.0; // first post-saturation peak-to-trough
};

struct SaturationNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// First local maximum of |a|^2 after it exceeds 100x its initial value.
SaturationReport detect_saturation(const TimeSeries& series);

struct SigmaScanRow {
  double sigma_bar = 0.0;
  double growth_rate = 0.0; // fitted intensity growth rate
  double t_sat = 0.0;       // +inf when no peak inside the simulated range
  double a2_max = 0.0;      // peak |a|^2, or the range maximum when unsaturated
};

/// One integration per sigma value, shared seed and integrator settings.
/// Throws std::invalid_argument for fewer than 2 values and
/// std::runtime_error if the fitted rates increase with sigma beyond a 2%
/// slack.
std::vector<SigmaScanRow> scan_sigma(const RunConfig& base, std::span<const double> sigmas);

} // namespace carlfwm

#endif
