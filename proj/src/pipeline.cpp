#include "carlfwm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "carlfwm/csv.hpp"
#include "carlfwm/version.hpp"

namespace carlfwm {

namespace {

namespace fs = std::filesystem;

void apply_overlay(RunConfig& config, const RunOverlay& overlay) {
  if (overlay.n_particles) config.n_particles = *overlay.n_particles;
  if (overlay.sigma_bar) config.sigma_bar = *overlay.sigma_bar;
  if (overlay.kappa_bar) config.kappa_bar = *overlay.kappa_bar;
  if (overlay.a0) config.a0 = *overlay.a0;
  if (overlay.t_end) config.t_end = *overlay.t_end;
  if (overlay.dt) config.dt = *overlay.dt;
  if (overlay.sample_every) config.sample_every = *overlay.sample_every;
  if (overlay.seed) config.seed = *overlay.seed;
  if (overlay.symmetrize_momenta) config.symmetrize_momenta = *overlay.symmetrize_momenta;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

std::string join(const std::vector<std::string>& parts) {
  if (parts.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += parts[i];
  }
  return out;
}

fs::path prepare_outdir(const std::string& outdir) {
  fs::path dir(outdir.empty() ? "." : outdir);
  fs::create_directories(dir);
  return dir;
}

void write_kv(std::ostream& out, const std::string& key, double value) {
  out << key << " = " << format_g17(value) << "\n";
}

std::string sigma_tag(double sigma) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", sigma);
  std::string tag = buffer;
  for (auto& ch : tag) {
    if (ch == '.') ch = 'p';
    if (ch == '-') ch = 'm';
  }
  return tag;
}

constexpr double w_per_cm2 = 1e4;  // W/cm^2 in W/m^2
constexpr double mw_per_cm2 = 10.0; // mW/cm^2 in W/m^2

struct BandCheck {
  std::string name;
  double value;
  double lo;
  double hi;
  std::string unit;
};

bool report_checks(const std::vector<BandCheck>& checks) {
  bool all_pass = true;
  for (const auto& check : checks) {
    const bool pass = check.value >= check.lo && check.value <= check.hi;
    all_pass = all_pass && pass;
    std::printf("[%s] %s = %.6g %s (band [%g, %g])\n", pass ? "PASS" : "FAIL",
                check.name.c_str(), check.value, check.unit.c_str(), check.lo, check.hi);
  }
  return all_pass;
}

void write_derived_report(const fs::path& path, const DerivedParameters& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());

  const ScaledParameters& s = d.scaled;
  out << "# derived parameters\n";
  out << "#\n";
  auto line = [&out](const char* label, double value, const char* unit) {
    char buffer[128];
    std::snprintf(buffer, sizeof(buffer), "# %-28s %14.6g %s\n", label, value, unit);
    out << buffer;
  };
  line("probe wavelength", d.probe_wavelength * 1e9, "nm");
  line("probe angular frequency", d.probe_omega, "rad/s");
  line("probe wavenumber", d.probe_k, "1/m");
  line("dipole mu10", d.mu10, "C m");
  line("dipole mu21", d.mu21, "C m");
  line("dipole mu32", d.mu32, "C m");
  line("dipole mu30", d.mu30, "C m");
  line("Delta_20", d.delta20, "rad/s");
  line("Delta_30", d.delta30, "rad/s");
  line("s10", d.coherences.s10, "");
  line("s21", d.coherences.s21, "");
  line("s32", d.coherences.s32, "");
  line("s30", s.s30, "");
  line("pump 1 intensity", d.pump_intensity1 / w_per_cm2, "W/cm^2");
  line("pump 2 intensity", d.pump_intensity2 / w_per_cm2, "W/cm^2");
  line("pump 3 intensity", d.pump_intensity3 / w_per_cm2, "W/cm^2");
  line("recoil frequency omega_r", s.omega_r, "rad/s");
  line("recoil temperature", d.recoil_temperature * 1e6, "uK");
  line("cavity linewidth kappa", d.kappa, "1/s");
  line("cavity density n", s.cavity_density, "1/m^3");
  line("rho", s.rho, "");
  line("kappa_bar", s.kappa_bar, "");
  line("sigma_bar", s.sigma_bar, "");
  line("time unit", s.time_unit * 1e6, "us");
  line("intensity unit", s.intensity_unit / w_per_cm2, "W/cm^2");
  line("grating period", d.matching.grating_period * 1e9, "nm");
  line("coherence length", d.matching.coherence_length * 1e9, "nm");
  line("FWM suppression (Lc/L)^2", d.matching.suppression, "");
  out << "#\n# machine-readable block (SI units)\n";

  write_kv(out, "probe_wavelength_m", d.probe_wavelength);
  write_kv(out, "probe_omega_rad_s", d.probe_omega);
  write_kv(out, "probe_wavenumber_per_m", d.probe_k);
  write_kv(out, "mu10_cm", d.mu10);
  write_kv(out, "mu21_cm", d.mu21);
  write_kv(out, "mu32_cm", d.mu32);
  write_kv(out, "mu30_cm", d.mu30);
  write_kv(out, "delta10_rad_s", d.delta10);
  write_kv(out, "delta21_rad_s", d.delta21);
  write_kv(out, "delta32_rad_s", d.delta32);
  write_kv(out, "delta20_rad_s", d.delta20);
  write_kv(out, "delta30_rad_s", d.delta30);
  write_kv(out, "rabi1_rad_s", d.rabi1);
  write_kv(out, "rabi2_rad_s", d.rabi2);
  write_kv(out, "rabi3_rad_s", d.rabi3);
  write_kv(out, "s10", d.coherences.s10);
  write_kv(out, "s21", d.coherences.s21);
  write_kv(out, "s32", d.coherences.s32);
  write_kv(out, "s30", s.s30);
  write_kv(out, "pump_intensity1_w_m2", d.pump_intensity1);
  write_kv(out, "pump_intensity2_w_m2", d.pump_intensity2);
  write_kv(out, "pump_intensity3_w_m2", d.pump_intensity3);
  write_kv(out, "omega_r_rad_s", s.omega_r);
  write_kv(out, "recoil_temperature_K", d.recoil_temperature);
  write_kv(out, "kappa_per_s", d.kappa);
  write_kv(out, "cavity_density_m3", s.cavity_density);
  write_kv(out, "rho", s.rho);
  write_kv(out, "kappa_bar", s.kappa_bar);
  write_kv(out, "sigma_bar", s.sigma_bar);
  write_kv(out, "time_unit_s", s.time_unit);
  write_kv(out, "intensity_unit_w_m2", s.intensity_unit);
  write_kv(out, "delta_k_per_m", d.matching.delta_k);
  write_kv(out, "coherence_length_m", d.matching.coherence_length);
  write_kv(out, "suppression", d.matching.suppression);
  write_kv(out, "grating_period_m", d.matching.grating_period);
}

} // namespace

RunContext resolve_context(const std::optional<std::string>& config_path,
                           const RunOverlay& flag_overlay, bool use_builtin_cs) {
  RunContext context;
  RunOverlay file_overlay;

  if (use_builtin_cs) {
    context.system = builtin_cs_example();
  } else if (config_path) {
    ParsedConfig parsed = parse_config(*config_path);
    context.system = std::move(parsed.system);
    file_overlay = parsed.run;
    context.config_path = config_path;
  }

  if (context.system) {
    context.derived = derive_parameters(*context.system);
    context.run.sigma_bar = context.derived->scaled.sigma_bar;
    context.run.kappa_bar = context.derived->scaled.kappa_bar;
  }

  apply_overlay(context.run, file_overlay);
  apply_overlay(context.run, flag_overlay);
  context.flag_overrides = flag_overlay.set_fields();
  context.run.check();
  return context;
}

void write_manifest(const std::string& path, const std::string& command,
                    const RunContext& context) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);

  out << "[manifest]\n";
  out << "tool_version = " << version << "\n";
  out << "created_utc = " << utc_timestamp() << "\n";
  out << "command = " << command << "\n";
  out << "flag_overrides = " << join(context.flag_overrides) << "\n";

  if (context.system) {
    const PhysicalSystem& sys = *context.system;
    out << "\n[species]\n";
    out << "name = " << sys.species.name << "\n";
    write_kv(out, "mass_kg", sys.species.mass);
    const char* names[4] = {"transition10", "transition21", "transition32", "transition30"};
    for (int i = 0; i < 4; ++i) {
      const Transition& t = sys.species.transitions[static_cast<std::size_t>(i)];
      out << "\n[" << names[i] << "]\n";
      write_kv(out, "wavelength_m", t.wavelength);
      write_kv(out, "einstein_a_per_s", t.einstein_a);
      if (t.dipole_moment) write_kv(out, "dipole_cm", *t.dipole_moment);
    }
    for (const PumpField& pump : sys.pumps) {
      out << "\n[pump" << pump.index << "]\n";
      write_kv(out, "wavelength_m", pump.wavelength);
      write_kv(out, "detuning_rad_s", pump.detuning);
      write_kv(out, "rabi_frequency_rad_s", pump.rabi_frequency);
    }
    out << "\n[cavity]\n";
    write_kv(out, "length_m", sys.cavity.length);
    write_kv(out, "mirror_transmission", sys.cavity.mirror_transmission);
    out << "\n[sample]\n";
    write_kv(out, "atom_count", sys.sample.atom_count);
    write_kv(out, "length_m", sys.sample.length);
    write_kv(out, "radius_m", sys.sample.radius);
    write_kv(out, "temperature_K", sys.sample.temperature);
    write_kv(out, "density_m3", sys.sample.density);
  }

  const RunConfig& run = context.run;
  out << "\n[run]\n";
  out << "n_particles = " << run.n_particles << "\n";
  write_kv(out, "sigma_bar", run.sigma_bar);
  write_kv(out, "kappa_bar", run.kappa_bar);
  write_kv(out, "a0", run.a0);
  write_kv(out, "t_end", run.t_end);
  write_kv(out, "dt", run.dt);
  out << "sample_every = " << run.sample_every << "\n";
  out << "seed = " << run.seed << "\n";
  out << "symmetrize_momenta = " << (run.symmetrize_momenta ? "true" : "false") << "\n";
}

void cmd_derive_params(const RunContext& context, const std::string& outdir) {
  if (!context.derived) {
    throw ConfigError("derive-params needs a physical system configuration");
  }
  const fs::path dir = prepare_outdir(outdir);
  write_derived_report(dir / "derived_params.txt", *context.derived);
  write_manifest((dir / "manifest.cfg").string(), "derive-params", context);
  std::cout << "wrote " << (dir / "derived_params.txt").string() << "\n";
}

void cmd_run(const RunContext& context, const std::string& outdir, bool dump_state) {
  const fs::path dir = prepare_outdir(outdir);

  SimState state = init_quiet_start(context.run);
  const TimeSeries series = integrate(state, context.run);

  write_timeseries_csv((dir / "trajectory.csv").string(), series);
  if (dump_state) write_state_csv((dir / "state.csv").string(), state);
  write_manifest((dir / "manifest.cfg").string(), "run", context);
  std::cout << "wrote " << (dir / "trajectory.csv").string() << " (" << series.size()
            << " rows)\n";
}

void cmd_growth_rate(std::span<const double> kappa_bars, const std::string& outdir) {
  const fs::path dir = prepare_outdir(outdir);

  const std::vector<std::string> columns = {
      "kappa_bar", "root1_re", "root1_im", "root2_re", "root2_im",
      "root3_re",  "root3_im", "max_field_rate", "intensity_rate"};
  CsvWriter writer((dir / "growth_rate.csv").string(), columns);
  for (double kappa_bar : kappa_bars) {
    const CollectiveModeRoots roots = linear_growth_rate(kappa_bar);
    const double values[] = {kappa_bar,
                             roots.roots[0].real(), roots.roots[0].imag(),
                             roots.roots[1].real(), roots.roots[1].imag(),
                             roots.roots[2].real(), roots.roots[2].imag(),
                             roots.max_field_rate,  roots.intensity_rate()};
    writer.write_row(values);
  }
  RunContext empty;
  write_manifest((dir / "manifest.cfg").string(), "growth-rate", empty);
  std::cout << "wrote " << (dir / "growth_rate.csv").string() << "\n";
}

void cmd_scan_sigma(const RunContext& context, std::span<const double> sigmas,
                    const std::string& outdir) {
  const fs::path dir = prepare_outdir(outdir);
  const std::vector<SigmaScanRow> table = scan_sigma(context.run, sigmas);

  const std::vector<std::string> columns = {"sigma_bar", "growth_rate", "t_sat", "a2_max"};
  CsvWriter writer((dir / "scan_sigma.csv").string(), columns);
  for (const auto& row : table) {
    const double values[] = {row.sigma_bar, row.growth_rate, row.t_sat, row.a2_max};
    writer.write_row(values);
  }
  write_manifest((dir / "manifest.cfg").string(), "scan-sigma", context);
  std::cout << "wrote " << (dir / "scan_sigma.csv").string() << "\n";
}

void cmd_fig3(const RunContext& context, std::span<const double> sigmas,
              const std::string& outdir) {
  const fs::path dir = prepare_outdir(outdir);

  std::vector<SigmaScanRow> summary;
  for (double sigma : sigmas) {
    RunConfig config = context.run;
    config.sigma_bar = sigma;
    const TimeSeries series = simulate(config);
    write_timeseries_csv((dir / ("fig3_sigma_" + sigma_tag(sigma) + ".csv")).string(), series);

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
    summary.push_back(row);
  }

  const std::vector<std::string> columns = {"sigma_bar", "growth_rate", "t_sat", "a2_max"};
  CsvWriter writer((dir / "fig3_summary.csv").string(), columns);
  for (const auto& row : summary) {
    const double values[] = {row.sigma_bar, row.growth_rate, row.t_sat, row.a2_max};
    writer.write_row(values);
  }
  write_manifest((dir / "manifest.cfg").string(), "fig3", context);
  std::cout << "wrote " << summary.size() << " trajectory files and "
            << (dir / "fig3_summary.csv").string() << "\n";
}

bool cmd_cs_example(const std::string& outdir) {
  const fs::path dir = prepare_outdir(outdir);

  RunContext context = resolve_context({}, {}, /*use_builtin_cs=*/true);
  const DerivedParameters& d = *context.derived;
  const ScaledParameters& s = d.scaled;

  // representative thermal spread of the example; kappa_bar stays at the
  // cavity-derived value
  context.run.sigma_bar = 0.1;

  write_derived_report(dir / "derived_params.txt", d);

  SimState state = init_quiet_start(context.run);
  const TimeSeries series = integrate(state, context.run);
  write_timeseries_csv((dir / "trajectory.csv").string(), series);

  const SaturationReport sat = detect_saturation(series);
  const UnscaledIntensity peak = unscale_intensity(sat.a2_max, s);
  const double t_sat_seconds = unscale_time(sat.t_sat, s);

  {
    std::ofstream out(dir / "saturation.txt", std::ios::binary);
    out << "# first saturation peak of the scaled trajectory, unscaled to SI\n";
    write_kv(out, "t_sat_bar", sat.t_sat);
    write_kv(out, "t_sat_s", t_sat_seconds);
    write_kv(out, "a2_max", sat.a2_max);
    write_kv(out, "oscillation_amplitude", sat.oscillation_amplitude);
    write_kv(out, "intracavity_w_m2", peak.intracavity);
    write_kv(out, "intracavity_w_cm2", peak.intracavity / w_per_cm2);
    write_kv(out, "transmitted_w_m2", peak.transmitted);
    write_kv(out, "transmitted_mw_cm2", peak.transmitted / mw_per_cm2);
  }

  write_manifest((dir / "manifest.cfg").string(), "cs-example", context);

  const std::vector<BandCheck> checks = {
      {"rho", s.rho, 40.0, 52.0, ""},
      {"omega_r", s.omega_r, 1.75e5, 1.85e5, "rad/s"},
      {"recoil temperature", d.recoil_temperature * 1e6, 1.3, 1.5, "uK"},
      {"sigma_bar(7 uK)", s.sigma_bar, 0.08, 0.12, ""},
      {"kappa_bar", s.kappa_bar, 0.008, 0.015, ""},
      {"pump 1 intensity", d.pump_intensity1 / w_per_cm2, 8.0e3, 9.8e3, "W/cm^2"},
      {"pump 2 intensity", d.pump_intensity2 / w_per_cm2, 3.9e6, 4.7e6, "W/cm^2"},
      {"pump 3 intensity", d.pump_intensity3 / w_per_cm2, 1.4e6, 1.8e6, "W/cm^2"},
      {"saturation intensity", peak.intracavity / w_per_cm2, 1.3e3 / 1.5, 1.3e3 * 1.5, "W/cm^2"},
      {"transmitted intensity", peak.transmitted / mw_per_cm2, 39.0 / 1.5, 39.0 * 1.5, "mW/cm^2"},
      {"saturation time", t_sat_seconds * 1e6, 1.4, 2.2, "us"},
      {"grating period", d.matching.grating_period * 1e9, 226.5, 228.5, "nm"},
      {"FWM suppression", d.matching.suppression, 1.2e-6, 1.4e-6, ""},
  };
  const bool all_pass = report_checks(checks);
  std::cout << (all_pass ? "all checks passed" : "some checks FAILED") << "\n";
  return all_pass;
}

} // namespace carlfwm
