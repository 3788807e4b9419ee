#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "reebflow/config.hpp"
#include "reebflow/entropy.hpp"
#include "reebflow/flow.hpp"
#include "reebflow/soliton_ode.hpp"
#include "reebflow/svg.hpp"

namespace reebflow {

/// CSV columns t, a0..an, volume, grad_norm, mu (mu empty when not attached).
std::string trajectory_csv(const FlowTrajectory& trajectory);
std::vector<Panel> trajectory_panels(const FlowTrajectory& trajectory);

/// CSV columns x, phi, K_T, f with f = b x.
std::string profile_csv(const MomentumProfile& profile);
std::vector<Panel> profile_panels(const MomentumProfile& profile);

struct SweepRow {
  double ratio;
  MomentumProfile profile;
  double min_curvature;
  double max_curvature;
  double residual;
  double futaki;  // Fut at the slice point along (1, -1)
};

std::vector<SweepRow> soliton_sweep(const std::vector<double>& ratios, double a0,
                                    const SolitonOptions& sopts, const QuadSettings& quad);
/// CSV columns ratio, a0, a1, b, x_max, min_K_T, max_K_T, residual, futaki.
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::vector<Panel> sweep_panels(const std::vector<SweepRow>& rows);

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

struct ReportResult {
  std::vector<CheckResult> checks;
  std::vector<std::string> files;

  bool all_pass() const;
};

/// Runs the full suite for the config and writes CSV, SVG and summary.txt
/// into config.output_dir.
ReportResult run_report(const RunConfig& config, std::ostream& log);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace reebflow
