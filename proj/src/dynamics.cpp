#include "carlfwm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace carlfwm {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

/// Deterministic standard-normal draws: Box-Muller over mt19937_64, so
/// trajectories do not depend on the standard library's distribution
/// implementation.
class GaussianDraw {
 public:
  explicit GaussianDraw(std::uint64_t seed) : gen_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();          // (0, 1]
    const double u2 = uniform01();                // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(two_pi * u2);
    have_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

 private:
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct Rk4Buffers {
  Derivatives k1, k2, k3, k4;
  SimState stage;

  void resize(std::size_t n) {
    for (Derivatives* d : {&k1, &k2, &k3, &k4}) {
      d->dtheta.resize(n);
      d->dp.resize(n);
    }
    stage.theta.resize(n);
    stage.p.resize(n);
  }
};

void set_stage(SimState& stage, const SimState& base, double h, const Derivatives& k) {
  const std::size_t n = base.theta.size();
  for (std::size_t i = 0; i < n; ++i) {
    stage.theta[i] = base.theta[i] + h * k.dtheta[i];
    stage.p[i] = base.p[i] + h * k.dp[i];
  }
  stage.a = base.a + h * k.da;
}

void rk4_step(SimState& state, double kappa_bar, double dt, Rk4Buffers& b) {
  const std::size_t n = state.theta.size();
  rhs(state, kappa_bar, b.k1);
  set_stage(b.stage, state, 0.5 * dt, b.k1);
  rhs(b.stage, kappa_bar, b.k2);
  set_stage(b.stage, state, 0.5 * dt, b.k2);
  rhs(b.stage, kappa_bar, b.k3);
  set_stage(b.stage, state, dt, b.k3);
  rhs(b.stage, kappa_bar, b.k4);

  const double w = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    state.theta[i] += w * (b.k1.dtheta[i] + 2.0 * (b.k2.dtheta[i] + b.k3.dtheta[i]) + b.k4.dtheta[i]);
    state.p[i] += w * (b.k1.dp[i] + 2.0 * (b.k2.dp[i] + b.k3.dp[i]) + b.k4.dp[i]);
  }
  state.a += w * (b.k1.da + 2.0 * (b.k2.da + b.k3.da) + b.k4.da);
}

TimeSeriesRow make_row(const SimState& state) {
  TimeSeriesRow row;
  row.t = state.t;
  row.a = state.a;
  row.intensity = std::norm(state.a);

  const std::complex<double> b = bunching(state);
  row.bunching_mag = std::abs(b);
  row.bunching_arg = std::arg(b);

  const std::size_t n = state.p.size();
  double sum = 0.0, sum2 = 0.0;
  for (double p : state.p) {
    sum += p;
    sum2 += p * p;
  }
  row.mean_p = sum / static_cast<double>(n);
  const double var = sum2 / static_cast<double>(n) - row.mean_p * row.mean_p;
  row.std_p = std::sqrt(std::max(0.0, var));
  row.budget = row.mean_p + row.intensity;
  return row;
}

bool row_finite(const TimeSeriesRow& row) {
  return std::isfinite(row.intensity) && std::isfinite(row.mean_p) && std::isfinite(row.std_p);
}

} // namespace

BlowupError::BlowupError(double t)
    : std::runtime_error([t] {
        std::ostringstream msg;
        msg << "state became non-finite at t_bar = " << t;
        return msg.str();
      }()),
      t_bar(t) {}

void RunConfig::check() const {
  if (n_particles < 2) throw std::invalid_argument("n_particles must be >= 2");
  if (!(sigma_bar >= 0.0)) throw std::invalid_argument("sigma_bar must be >= 0");
  if (!(kappa_bar >= 0.0)) throw std::invalid_argument("kappa_bar must be >= 0");
  if (!(a0 >= 0.0)) throw std::invalid_argument("a0 must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be > 0");
  if (sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");
}

std::complex<double> bunching(const SimState& state) {
  if (state.n() < 1) throw std::invalid_argument("bunching needs at least one particle");
  double c = 0.0, s = 0.0;
  for (double theta : state.theta) {
    c += std::cos(theta);
    s += std::sin(theta);
  }
  const double n = static_cast<double>(state.n());
  return {c / n, -s / n};
}

double momentum_budget(const SimState& state) {
  double sum = 0.0;
  for (double p : state.p) sum += p;
  return sum / static_cast<double>(state.p.size()) + std::norm(state.a);
}

namespace {

// Momenta are loaded per phase ring: every ring is a full uniformly spaced
// set of positions sharing one momentum value, so the free-streaming
// bunching of the thermal ensemble cancels to machine precision and growth
// stays seeded by the field alone. Ring size: the largest divisor of n up
// to 8 that still leaves at least 32 rings of momentum resolution;
// awkward n falls back to per-particle loading.
int ring_size(int n) {
  int best = 1;
  for (int r = 2; r <= 8; ++r) {
    if (n % r == 0 && n / r >= 32) best = r;
  }
  return best;
}

} // namespace

SimState init_quiet_start(const RunConfig& config) {
  config.check();
  const std::size_t n = static_cast<std::size_t>(config.n_particles);

  SimState state;
  state.t = 0.0;
  state.theta.resize(n);
  state.p.assign(n, 0.0);
  state.a = {config.a0, 0.0};

  for (std::size_t j = 0; j < n; ++j) {
    state.theta[j] = two_pi * static_cast<double>(j) / static_cast<double>(n);
  }

  if (config.sigma_bar > 0.0) {
    const std::size_t rings = n / static_cast<std::size_t>(ring_size(config.n_particles));
    std::vector<double> ring_p(rings, 0.0);
    GaussianDraw draw(config.seed);
    if (config.symmetrize_momenta) {
      // interleaved +/- pairs: consecutive terms cancel exactly, so the
      // sequential sum behind <p> is 0 exactly; an odd ring stays at rest
      for (std::size_t i = 0; i + 1 < rings; i += 2) {
        const double g = config.sigma_bar * draw();
        ring_p[i] = g;
        ring_p[i + 1] = -g;
      }
    } else {
      for (std::size_t i = 0; i < rings; ++i) ring_p[i] = config.sigma_bar * draw();
    }
    for (std::size_t j = 0; j < n; ++j) state.p[j] = ring_p[j % rings];
  }
  return state;
}

void rhs(const SimState& state, double kappa_bar, Derivatives& out) {
  const std::size_t n = state.theta.size();
  out.dtheta.resize(n);
  out.dp.resize(n);

  const double ar = state.a.real();
  const double ai = state.a.imag();
  double csum = 0.0, ssum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(state.theta[i]);
    const double s = std::sin(state.theta[i]);
    out.dtheta[i] = state.p[i];
    out.dp[i] = -2.0 * (ar * c - ai * s); // -(a e^{i theta} + c.c.)
    csum += c;
    ssum += s;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  const std::complex<double> b{csum * inv_n, -ssum * inv_n};
  out.da = b - kappa_bar * state.a;
}

TimeSeries integrate(SimState& state, const RunConfig& config) {
  config.check();
  if (state.n() < 2) throw std::invalid_argument("state needs at least 2 particles");
  if (state.theta.size() != state.p.size()) {
    throw std::invalid_argument("theta and p must have equal length");
  }

  const long n_steps = std::lround(config.t_end / config.dt);
  if (n_steps < 1) throw std::invalid_argument("t_end shorter than one step");

  Rk4Buffers buffers;
  buffers.resize(state.theta.size());

  TimeSeries series;
  series.rows.reserve(static_cast<std::size_t>(n_steps / config.sample_every) + 2);
  series.rows.push_back(make_row(state));

  const double t0 = state.t;
  for (long step = 1; step <= n_steps; ++step) {
    rk4_step(state, config.kappa_bar, config.dt, buffers);
    state.t = t0 + static_cast<double>(step) * config.dt;
    if (!std::isfinite(std::norm(state.a))) throw BlowupError(state.t);
    if (step % config.sample_every == 0 || step == n_steps) {
      TimeSeriesRow row = make_row(state);
      if (!row_finite(row)) throw BlowupError(state.t);
      series.rows.push_back(std::move(row));
    }
  }
  return series;
}

TimeSeries simulate(const RunConfig& config) {
  SimState state = init_quiet_start(config);
  return integrate(state, config);
}

GratingProfile grating_profile(const SimState& state, double probe_wavenumber, int bins) {
  if (probe_wavenumber <= 0.0) throw std::invalid_argument("wavenumber must be positive");
  if (bins < 1) throw std::invalid_argument("bins must be >= 1");

  GratingProfile profile;
  profile.period = std::numbers::pi / probe_wavenumber; // lambda / 2
  profile.depth = std::abs(bunching(state));
  profile.fraction.assign(static_cast<std::size_t>(bins), 0.0);

  const double weight = 1.0 / static_cast<double>(state.n());
  for (double theta : state.theta) {
    // z mod lambda/2 expressed through theta mod 2 pi
    double frac = std::fmod(theta, two_pi) / two_pi;
    if (frac < 0.0) frac += 1.0;
    auto bin = static_cast<std::size_t>(frac * static_cast<double>(bins));
    if (bin >= profile.fraction.size()) bin = profile.fraction.size() - 1;
    profile.fraction[bin] += weight;
  }
  return profile;
}

} // namespace carlfwm
