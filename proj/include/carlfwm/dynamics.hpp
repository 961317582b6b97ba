#ifndef CARLFWM_DYNAMICS_HPP
#define CARLFWM_DYNAMICS_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace carlfwm {

struct RunConfig {
  int n_particles = 2048;
  double sigma_bar = 0.0;
  double kappa_bar = 0.0;
  double a0 = 1e-5;      // |a| at t=0, phase fixed real positive
  double t_end = 25.0;   // scaled time
  double dt = 1e-3;      // fixed step
  int sample_every = 100;
  std::uint64_t seed = 1;
  bool symmetrize_momenta = true;

  /// Throws std::invalid_argument on out-of-range values.
  void check() const;
};

/// Instantaneous N-particle + field state. Phases are kept unwrapped so
/// dtheta/dt = p holds literally; wrapping happens only in diagnostics.
struct SimState {
  double t = 0.0;
  std::vector<double> theta; // phases theta_j = 2 k z_j
  std::vector<double> p;     // scaled momenta
  std::complex<double> a{0.0, 0.0};

  int n() const { return static_cast<int>(theta.size()); }
};

struct Derivatives {
  std::vector<double> dtheta;
  std::vector<double> dp;
  std::complex<double> da{0.0, 0.0};
};

struct TimeSeriesRow {
  double t = 0.0;
  std::complex<double> a{0.0, 0.0};
  double intensity = 0.0;    // |a|^2
  double bunching_mag = 0.0; // |<e^{-i theta}>|
  double bunching_arg = 0.0;
  double mean_p = 0.0;
  double std_p = 0.0;
  double budget = 0.0; // <p> + |a|^2
};

struct TimeSeries {
  std::vector<TimeSeriesRow> rows;

  const TimeSeriesRow& front() const { return rows.front(); }
  const TimeSeriesRow& back() const { return rows.back(); }
  std::size_t size() const { return rows.size(); }
};

/// Thrown when the state stops being finite; carries the scaled time of the
/// offending step.
struct BlowupError : std::runtime_error {
  double t_bar;
  explicit BlowupError(double t);
};

/// Order parameter b = <e^{-i theta}>.
std::complex<double> bunching(const SimState& state);

/// <p> + |a|^2; a constant of motion at kappa_bar = 0, and
/// d(budget)/dt = -2 kappa_bar |a|^2 otherwise.
double momentum_budget(const SimState& state);

/// theta_j = 2 pi j / N (b = 0 to machine precision), momenta Gaussian with
/// standard deviation sigma_bar from the seeded generator, a = a0 real.
/// Momentum values are shared across full uniform phase rings so that the
/// thermal ensemble free-streams with zero bunching and the instability
/// stays field-seeded; with symmetrize_momenta the draws come in +/- pairs
/// and <p> = 0 exactly.
SimState init_quiet_start(const RunConfig& config);

void rhs(const SimState& state, double kappa_bar, Derivatives& out);

/// Classical fourth-order fixed-step integration. Emits a row at entry,
/// every sample_every steps and at the final step. Deterministic for a
/// given (seed, N, dt).
TimeSeries integrate(SimState& state, const RunConfig& config);

/// Quiet start + integrate.
TimeSeries simulate(const RunConfig& config);

/// Atom positions folded into one grating period lambda/2 = pi/k.
struct GratingProfile {
  double period = 0.0;          // m
  double depth = 0.0;           // |b|
  std::vector<double> fraction; // occupancy per bin, sums to 1
};

GratingProfile grating_profile(const SimState& state, double probe_wavenumber, int bins = 64);

} // namespace carlfwm

#endif
