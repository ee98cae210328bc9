#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dnls/config.hpp"
#include "dnls/report.hpp"

namespace dnls {

struct ScenarioOptions {
  /// Progress messages (one line each); ignored when empty.
  std::function<void(const std::string&)> log;
  /// Fill the generated_at key; off gives fully reproducible reports.
  bool timestamp = true;
};

struct ScenarioResult {
  report::Json report;
  /// Base-dt trajectory of PDE scenarios.
  std::optional<Trajectory> trajectory;
  std::vector<report::Verdict> verdicts;
  bool pass = false;
};

/// Initial state described by the [initial] section.
ComplexField build_initial(const RunConfig& cfg, const BoxDomain& domain);

/// Source described by [source] (any kind except designed).
SourceSpec build_source(const RunConfig& cfg, const ComplexField& u0);

/// Model parameters with the given source.
ModelParams build_params(const RunConfig& cfg, SourceSpec source);

/// Runs whatever the config describes (PDE run with its analysis, or the
/// odi-regimes / gn-estimate studies) and evaluates the requested checks.
ScenarioResult run_scenario(const RunConfig& cfg, const ScenarioOptions& options = {});

std::vector<std::string> preset_names();
/// Config text of a named preset.
std::optional<std::string> preset_text(std::string_view name);
/// Parsed preset; throws std::invalid_argument for unknown names.
RunConfig preset_config(std::string_view name);

}  // namespace dnls
