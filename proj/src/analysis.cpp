#include "carlfwm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace carlfwm {

GrowthFit fit_growth_rate(const TimeSeries& series, double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("need 0 < lo < hi");

  std::vector<double> t, y;
  for (const auto& row : series.rows) {
    if (row.intensity > lo && row.intensity < hi) {
      t.push_back(row.t);
      y.push_back(std::log(row.intensity));
    }
  }
  if (t.size() < 10) {
    std::ostringstream msg;
    msg << "growth window (" << lo << ", " << hi << ") holds only " << t.size()
        << " rows; need at least 10";
    throw std::invalid_argument(msg.str());
  }

  const double n = static_cast<double>(t.size());
  double st = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
  }
  const double tm = st / n, ym = sy / n;

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double dx = t[i] - tm;
    const double dy = y[i] - ym;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  GrowthFit fit;
  fit.slope = sxy / sxx;
  fit.t_lo = t.front();
  fit.t_hi = t.back();
  fit.n_points = static_cast<int>(t.size());
  if (syy == 0.0) {
    fit.r2 = 1.0; // constant window, perfectly fit by slope 0
  } else {
    fit.r2 = std::clamp((sxy * sxy) / (sxx * syy), 0.0, 1.0);
  }
  return fit;
}

CollectiveModeRoots linear_growth_rate(double kappa_bar) {
  if (!(kappa_bar >= 0.0)) throw std::invalid_argument("kappa_bar must be >= 0");

  using cd = std::complex<double>;
  const cd i_unit{0.0, 1.0};
  auto poly = [kappa_bar, i_unit](cd z) { return z * z * z + kappa_bar * z * z - i_unit; };
  auto dpoly = [kappa_bar](cd z) { return 3.0 * z * z + 2.0 * kappa_bar * z; };

  // Durand-Kerner from non-symmetric seeds, then Newton polish.
  std::array<cd, 3> r{cd{0.4, 0.9}, cd{0.4, 0.9} * cd{0.4, 0.9}, cd{0.4, 0.9} * cd{0.4, 0.9} * cd{0.4, 0.9}};
  for (int iter = 0; iter < 200; ++iter) {
    double move = 0.0;
    for (int j = 0; j < 3; ++j) {
      cd denom{1.0, 0.0};
      for (int l = 0; l < 3; ++l) {
        if (l != j) denom *= r[j] - r[l];
      }
      const cd delta = poly(r[j]) / denom;
      r[j] -= delta;
      move = std::max(move, std::abs(delta));
    }
    if (move < 1e-14) break;
  }
  for (auto& root : r) {
    for (int iter = 0; iter < 8; ++iter) {
      const cd d = dpoly(root);
      if (std::abs(d) == 0.0) break;
      root -= poly(root) / d;
    }
  }

  std::sort(r.begin(), r.end(), [](cd a, cd b) { return a.real() > b.real(); });

  CollectiveModeRoots out;
  out.roots = r;
  out.max_field_rate = r[0].real();
  return out;
}

SaturationReport detect_saturation(const TimeSeries& series) {
  if (series.rows.size() < 3) throw SaturationNotFound("series too short");

  const double threshold = 100.0 * series.rows.front().intensity;
  std::size_t peak = 0;
  bool found = false;
  for (std::size_t i = 1; i + 1 < series.rows.size(); ++i) {
    const double prev = series.rows[i - 1].intensity;
    const double here = series.rows[i].intensity;
    const double next = series.rows[i + 1].intensity;
    if (here > threshold && here >= prev && here > next) {
      peak = i;
      found = true;
      break;
    }
  }
  if (!found) throw SaturationNotFound("no saturation in the simulated range");

  SaturationReport report;
  report.t_sat = series.rows[peak].t;
  report.a2_max = series.rows[peak].intensity;

  // first trough after the peak; fall back to the tail minimum
  double trough = series.rows.back().intensity;
  for (std::size_t i = peak + 1; i + 1 < series.rows.size(); ++i) {
    const double prev = series.rows[i - 1].intensity;
    const double here = series.rows[i].intensity;
    const double next = series.rows[i + 1].intensity;
    if (here <= prev && here < next) {
      trough = here;
      break;
    }
    trough = std::min(trough, here);
  }
  report.oscillation_amplitude = report.a2_max - trough;
  return report;
}

std::vector<SigmaScanRow> scan_sigma(const RunConfig& base, std::span<const double> sigmas) {
  if (sigmas.size() < 2) throw std::invalid_argument("scan needs at least 2 sigma values");

  std::vector<SigmaScanRow> table;
  table.reserve(sigmas.size());

  for (double sigma : sigmas) {
    RunConfig config = base;
    config.sigma_bar = sigma;

    const TimeSeries series = simulate(config);

    SigmaScanRow row;
    row.sigma_bar = sigma;
    row.growth_rate = fit_growth_rate(series).slope;
    try {
      const SaturationReport sat = detect_saturation(series);
      row.t_sat = sat.t_sat;
      row.a2_max = sat.a2_max;
    } catch (const SaturationNotFound&) {
      row.t_sat = std::numeric_limits<double>::infinity();
      row.a2_max = 0.0;
      for (const auto& r : series.rows) row.a2_max = std::max(row.a2_max, r.intensity);
    }
    table.push_back(row);
  }

  // thermal spread must not raise the growth rate (2% slack for fit noise)
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (table[i].sigma_bar > table[i - 1].sigma_bar &&
        table[i].growth_rate > table[i - 1].growth_rate * 1.02 + 1e-12) {
      std::ostringstream msg;
      msg << "growth rate increased from sigma_bar " << table[i - 1].sigma_bar << " ("
          << table[i - 1].growth_rate << ") to " << table[i].sigma_bar << " ("
          << table[i].growth_rate << ")";
      throw std::runtime_error(msg.str());
    }
  }
  return table;
}

} // namespace carlfwm
