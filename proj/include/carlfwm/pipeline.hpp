#ifndef CARLFWM_PIPELINE_HPP
#define CARLFWM_PIPELINE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carlfwm/analysis.hpp"
#include "carlfwm/config.hpp"
#include "carlfwm/parameter_map.hpp"

namespace carlfwm {

/// Fully resolved inputs of one command: optional physical system, its
/// derived parameters, the integrator configuration after
/// defaults < config file < command-line flags, and which fields the
/// flags overrode (recorded in the manifest).
struct RunContext {
  std::optional<PhysicalSystem> system;
  std::optional<DerivedParameters> derived;
  RunConfig run;
  std::vector<std::string> flag_overrides;
  std::optional<std::string> config_path;
};

RunContext resolve_context(const std::optional<std::string>& config_path,
                           const RunOverlay& flag_overlay,
                           bool use_builtin_cs = false);

/// Resolved-configuration snapshot written next to every output; valid as
/// a --config input, so a run can be reproduced from it bit-identically.
void write_manifest(const std::string& path, const std::string& command,
                    const RunContext& context);

/// derive-params: parameter report (text table + key = value block) and
/// manifest. Requires a physical system.
void cmd_derive_params(const RunContext& context, const std::string& outdir);

/// run: trajectory CSV (+ optional final phase-space dump) and manifest.
void cmd_run(const RunContext& context, const std::string& outdir, bool dump_state = false);

/// growth-rate: characteristic-cubic roots and rates per kappa_bar value.
void cmd_growth_rate(std::span<const double> kappa_bars, const std::string& outdir);

/// scan-sigma: per-sigma growth/saturation metrics table.
void cmd_scan_sigma(const RunContext& context, std::span<const double> sigmas,
                    const std::string& outdir);

/// fig3: one trajectory CSV per sigma on a shared time grid plus a summary.
void cmd_fig3(const RunContext& context, std::span<const double> sigmas,
              const std::string& outdir);

/// cs-example: full pipeline on the builtin Cs system; checks the derived
/// and simulated numbers against their reference bands, printing one
/// PASS/FAIL line each. Returns true when all checks pass.
bool cmd_cs_example(const std::string& outdir);

} // namespace carlfwm

#endif
