// carlfwm: N-particle simulation of cavity four-wave mixing driven by
// collective atomic recoil, with the parameter maps between a physical
// experiment description and the dimensionless model.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "carlfwm/pipeline.hpp"
#include "carlfwm/version.hpp"

namespace {

// exit codes: 0 success, 1 reference-check failure, 2 usage/config error,
// 3 numerical blow-up
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBlowup = 3;

struct FlagValues {
  std::optional<std::string> config;
  std::string outdir;
  std::optional<double> sigma_bar, kappa_bar, a0, t_end, dt;
  std::optional<int> n_particles, sample_every;
  std::optional<std::uint64_t> seed;

  carlfwm::RunOverlay overlay() const {
    carlfwm::RunOverlay o;
    o.sigma_bar = sigma_bar;
    o.kappa_bar = kappa_bar;
    o.a0 = a0;
    o.t_end = t_end;
    o.dt = dt;
    o.n_particles = n_particles;
    o.sample_every = sample_every;
    o.seed = seed;
    return o;
  }
};

void add_common_flags(CLI::App* cmd, FlagValues& flags, bool with_run_flags = true) {
  cmd->add_option("-c,--config", flags.config, "configuration file (sectioned key = value)");
  cmd->add_option("-o,--output-dir", flags.outdir, "output directory");
  if (with_run_flags) {
    cmd->add_option("--sigma-bar", flags.sigma_bar, "scaled thermal momentum spread");
    cmd->add_option("--kappa-bar", flags.kappa_bar, "scaled cavity linewidth");
    cmd->add_option("--n-particles", flags.n_particles, "number of macro-particles")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--dt", flags.dt, "integrator step (scaled time)")->check(CLI::PositiveNumber);
    cmd->add_option("--t-end", flags.t_end, "end of the simulated window (scaled time)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", flags.seed, "momentum-sampling seed");
    cmd->add_option("--a0", flags.a0, "initial field magnitude |a(0)|");
    cmd->add_option("--sample-every", flags.sample_every, "steps between output rows")
        ->check(CLI::PositiveNumber);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"cavity four-wave mixing via collective atomic recoil"};
  app.set_version_flag("--version", std::string(carlfwm::version));
  app.require_subcommand(1);

  const char* env_outdir = std::getenv("CARLFWM_OUT");
  const std::string default_outdir = env_outdir ? env_outdir : ".";

  FlagValues derive_flags{.outdir = default_outdir};
  FlagValues run_flags{.outdir = default_outdir};
  FlagValues growth_flags{.outdir = default_outdir};
  FlagValues scan_flags{.outdir = default_outdir};
  FlagValues fig3_flags{.outdir = default_outdir};
  FlagValues cs_flags{.outdir = default_outdir};

  auto* derive = app.add_subcommand("derive-params",
                                    "map a physical configuration to the dimensionless model");
  add_common_flags(derive, derive_flags, false);

  auto* run = app.add_subcommand("run", "integrate the N-particle + field equations");
  add_common_flags(run, run_flags);
  bool dump_state = false;
  run->add_flag("--dump-state", dump_state, "also write the final phase-space (theta, p)");

  auto* growth = app.add_subcommand("growth-rate",
                                    "roots of the collective-mode characteristic cubic");
  add_common_flags(growth, growth_flags, false);
  std::vector<double> kappa_list{0.0};
  growth->add_option("--kappa-bar", kappa_list, "kappa_bar values")->expected(-1);

  auto* scan = app.add_subcommand("scan-sigma", "growth/saturation metrics per sigma_bar");
  add_common_flags(scan, scan_flags);
  std::vector<double> scan_sigmas{0.0, 0.5, 1.0, 2.0};
  scan->add_option("--sigma-list", scan_sigmas, "sigma_bar values")->expected(-1);

  auto* fig3 = app.add_subcommand("fig3",
                                  "trajectories on a shared time grid for a set of sigma_bar");
  add_common_flags(fig3, fig3_flags);
  std::vector<double> fig3_sigmas{0.0, 0.1, 0.5, 1.0};
  fig3->add_option("--sigma-list", fig3_sigmas, "sigma_bar values")->expected(-1);

  auto* cs = app.add_subcommand("cs-example",
                                "full pipeline on the builtin Cs parameter set, with checks");
  add_common_flags(cs, cs_flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*derive) {
      const auto ctx = carlfwm::resolve_context(derive_flags.config, {});
      carlfwm::cmd_derive_params(ctx, derive_flags.outdir);
    } else if (*run) {
      const auto ctx = carlfwm::resolve_context(run_flags.config, run_flags.overlay());
      carlfwm::cmd_run(ctx, run_flags.outdir, dump_state);
    } else if (*growth) {
      carlfwm::cmd_growth_rate(kappa_list, growth_flags.outdir);
    } else if (*scan) {
      const auto ctx = carlfwm::resolve_context(scan_flags.config, scan_flags.overlay());
      carlfwm::cmd_scan_sigma(ctx, scan_sigmas, scan_flags.outdir);
    } else if (*fig3) {
      const auto ctx = carlfwm::resolve_context(fig3_flags.config, fig3_flags.overlay());
      carlfwm::cmd_fig3(ctx, fig3_sigmas, fig3_flags.outdir);
    } else if (*cs) {
      if (!carlfwm::cmd_cs_example(cs_flags.outdir)) return kExitCheckFailed;
    }
  } catch (const carlfwm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const carlfwm::BlowupError& e) {
    std::cerr << "numerical blow-up: " << e.what() << "\n";
    return kExitBlowup;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}
