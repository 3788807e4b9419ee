#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reebflow/flow.hpp"
#include "reebflow/quadrature.hpp"

namespace reebflow {

struct SweepSpec {
  double ratio_min = 1.0;
  double ratio_max = 4.0;
  int steps = 20;

  std::vector<double> ratios() const;
};

SweepSpec parse_sweep(std::string_view text);  // "r_min:r_max:steps"

struct RunConfig {
  int n = 1;
  QuadSettings quad;
  FlowOptions flow;
  std::optional<std::vector<double>> flow_start;
  std::vector<double> soliton_weights{1.0, 2.0};
  SweepSpec sweep;
  int soliton_grid_points = 201;
  std::string output_dir = "report";
  int verbosity = 1;

  friend bool operator==(const RunConfig&, const RunConfig&);
};

/// Plain `key = value` lines with `#` comments. Unknown keys, out-of-range
/// values and malformed numbers throw ConfigError with the line number.
RunConfig parse_config(std::string_view text);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

RunConfig load_config_file(const std::string& path);

/// REEBFLOW_SEED overrides quad.mc_seed.
void apply_env_overrides(RunConfig& config);

/// Flow start for the configured dimension: flow.start if given, otherwise a
/// fixed off-center point on the slice.
ReebVector default_start(const RunConfig& config);

}  // namespace reebflow
