#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reebflow/config.hpp"
#include "reebflow/entropy.hpp"
#include "reebflow/flow.hpp"
#include "reebflow/report.hpp"
#include "reebflow/soliton_ode.hpp"

using namespace reebflow;
using nlohmann::json;

namespace {

// Tags parse failures with the flag they came from.
struct FlagError : Error {
  FlagError(const std::string& flag, const std::string& what) : Error(flag + ": " + what) {}
};

template <class F>
auto for_flag(const std::string& flag, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw FlagError(flag, e.what());
  }
}

json reals(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

void print_line(const json& j) { std::cout << j.dump() << "\n"; }

WeightedSphereLink link_for(int n, const RunConfig& config) {
  if (n < 1 || n > 6) throw InvalidInput("dimension n = " + std::to_string(n) + " outside [1, 6]");
  return WeightedSphereLink::make(n, config.quad);
}

std::vector<double> two_weights(const std::string& flag, const std::string& text) {
  return for_flag(flag, [&] {
    auto w = parse_real_list(text);
    if (w.size() != 2 || !(w[0] > 0.0) || !(w[1] > 0.0)) throw InvalidInput("need two positive weights a0,a1");
    return w;
  });
}

void flow_human(const FlowTrajectory& traj) {
  const FlowState& end = traj.states.back();
  std::cout << "terminated by " << to_string(traj.terminated_by) << " after " << traj.states.size() - 1
            << " steps at t = " << format_real(end.t) << "\n";
  if (!traj.message.empty()) std::cout << "  " << traj.message << "\n";
  std::cout << "limit   = (" << format_reeb(end.reeb.coeffs()) << ")\n";
  std::cout << "volume  = " << format_real(end.volume) << "\n";
  std::cout << "|grad|  = " << format_real(end.grad_norm) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reebflow: Reeb cone volume minimization, Futaki invariants and n = 1 solitons"};
  app.require_subcommand(1);

  std::string config_path;
  bool as_json = false;
  app.add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  app.add_flag("--json", as_json, "JSON-lines output");

  std::vector<std::string> reeb_args;
  bool relative = false;
  auto* vol = app.add_subcommand("volume", "volume of the weighted sphere link");
  vol->add_option("--reeb", reeb_args, "Reeb vector a0,a1,... (repeatable)")->required();
  vol->add_flag("--relative", relative, "report Vol / Vol(round sphere) as the main value");

  std::string reeb_arg, dir_arg;
  auto* fut = app.add_subcommand("futaki", "Futaki invariant Fut(xi, Y)");
  fut->add_option("--reeb", reeb_arg, "Reeb vector on the slice")->required();
  fut->add_option("--dir", dir_arg, "direction Y with sum Y_i = 0")->required();

  std::string start_arg, out_arg, svg_arg;
  auto* flow = app.add_subcommand("flow", "volume-decreasing flow on the slice");
  flow->add_option("--start", start_arg, "starting Reeb vector");
  flow->add_option("--out", out_arg, "trajectory CSV")->required();
  flow->add_option("--svg", svg_arg, "trajectory SVG");

  auto* mini = app.add_subcommand("minimize", "damped Newton minimization of the volume");
  mini->add_option("--start", start_arg, "starting Reeb vector");

  std::string weights_arg, sweep_arg;
  auto* sol = app.add_subcommand("soliton", "n = 1 transverse soliton profile");
  sol->add_option("--weights", weights_arg, "weights a0,a1");
  sol->add_option("--sweep", sweep_arg, "r_min:r_max:steps ratio sweep");
  sol->add_option("--out", out_arg, "profile (or sweep) CSV")->required();
  sol->add_option("--svg", svg_arg, "profile (or sweep) SVG");

  auto* ent = app.add_subcommand("entropy", "entropy of the n = 1 soliton");
  ent->add_option("--weights", weights_arg, "weights a0,a1");

  std::string out_dir;
  auto* rep = app.add_subcommand("report", "full suite with CSV, SVG and summary output");
  rep->add_option("--out-dir", out_dir, "output directory (overrides output.dir)");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig config = config_path.empty()
                           ? RunConfig{}
                           : for_flag("--config " + config_path, [&] { return load_config_file(config_path); });
    apply_env_overrides(config);

    if (*vol) {
      for (const std::string& text : reeb_args) {
        const ReebVector xi = for_flag("--reeb", [&] { return parse_reeb(text); });
        const auto link = for_flag("--reeb", [&] { return link_for(static_cast<int>(xi.size()) - 1, config); });
        const VolumeReport r = for_flag("--reeb", [&] { return volume_report(link, xi); });
        print_line({{"reeb", reals(r.reeb.coeffs())},
                    {"volume", relative ? r.relative_volume : r.volume},
                    {"absolute_volume", r.volume},
                    {"relative_volume", r.relative_volume},
                    {"closed_form_relative_volume", closed_form_relative_volume(r.reeb)},
                    {"grad", reals(r.grad.coeffs())},
                    {"min_pairing", r.min_pairing}});
      }
      return 0;
    }

    if (*fut) {
      const ReebVector xi = for_flag("--reeb", [&] { return parse_reeb(reeb_arg); });
      const auto y = for_flag("--dir", [&] { return parse_real_list(dir_arg); });
      if (y.size() != xi.size()) throw FlagError("--dir", "length differs from --reeb");
      const TangentVector ty(y);
      if (!ty.is_tangent(1e-10)) throw FlagError("--dir", "entries must sum to 0");
      const auto link = for_flag("--reeb", [&] { return link_for(static_cast<int>(xi.size()) - 1, config); });
      const double f = for_flag("--reeb", [&] { return futaki(link, xi, ty); });
      print_line({{"reeb", reals(xi.coeffs())}, {"dir", y}, {"futaki", f}});
      return 0;
    }

    auto start_point = [&] {
      if (start_arg.empty()) return default_start(config);
      return for_flag("--start", [&] {
        const ReebVector xi = parse_reeb(start_arg);
        if (!reeb_membership(xi)) throw InvalidInput("start must have positive entries");
        return normalize_to_slice(xi);
      });
    };

    if (*flow) {
      const ReebVector start = start_point();
      const auto link = for_flag("--start", [&] { return link_for(static_cast<int>(start.size()) - 1, config); });
      FlowTrajectory traj = run_flow(link, start, config.flow);
      if (start.size() == 2) attach_soliton_entropy(traj, SolitonOptions{config.soliton_grid_points});
      for_flag("--out", [&] { write_text_file(out_arg, trajectory_csv(traj)); return 0; });
      if (!svg_arg.empty()) for_flag("--svg", [&] { write_svg(svg_arg, trajectory_panels(traj)); return 0; });
      const FlowState& end = traj.states.back();
      if (as_json) {
        print_line({{"terminated_by", to_string(traj.terminated_by)},
                    {"steps", traj.states.size() - 1},
                    {"t", end.t},
                    {"limit", reals(end.reeb.coeffs())},
                    {"volume", end.volume},
                    {"grad_norm", end.grad_norm}});
      } else {
        flow_human(traj);
      }
      return traj.terminated_by == FlowTermination::gradient_tolerance ? 0 : 1;
    }

    if (*mini) {
      const ReebVector start = start_point();
      const auto link = for_flag("--start", [&] { return link_for(static_cast<int>(start.size()) - 1, config); });
      const MinimizeResult r = minimize_volume(link, start);
      if (as_json) {
        print_line({{"minimizer", reals(r.reeb.coeffs())},
                    {"grad_norm", r.grad_norm},
                    {"iterations", r.iterations},
                    {"volume", r.volumes.back()}});
      } else {
        std::cout << "minimizer  = (" << format_reeb(r.reeb.coeffs()) << ")\n";
        std::cout << "volume     = " << format_real(r.volumes.back()) << "\n";
        std::cout << "|grad|     = " << format_real(r.grad_norm) << "\n";
        std::cout << "iterations = " << r.iterations << "\n";
      }
      return 0;
    }

    if (*sol) {
      const SolitonOptions sopts{config.soliton_grid_points};
      if (!sweep_arg.empty()) {
        const SweepSpec spec = for_flag("--sweep", [&] { return parse_sweep(sweep_arg); });
        const double a0 = weights_arg.empty() ? 1.0 : two_weights("--weights", weights_arg)[0];
        const auto rows = soliton_sweep(spec.ratios(), a0, sopts, config.quad);
        for_flag("--out", [&] { write_text_file(out_arg, sweep_csv(rows)); return 0; });
        if (!svg_arg.empty()) for_flag("--svg", [&] { write_svg(svg_arg, sweep_panels(rows)); return 0; });
        double min_k = rows.front().min_curvature;
        for (const SweepRow& r : rows) min_k = std::min(min_k, r.min_curvature);
        if (as_json) {
          print_line({{"points", rows.size()}, {"min_K_T", min_k}});
        } else {
          std::cout << rows.size() << " sweep points, min K_T = " << format_real(min_k) << "\n";
        }
        return min_k > 0.0 ? 0 : 1;
      }
      const auto w = weights_arg.empty() ? config.soliton_weights : two_weights("--weights", weights_arg);
      const MomentumProfile p = for_flag("--weights", [&] { return solve_soliton(w[0], w[1], sopts); });
      for_flag("--out", [&] { write_text_file(out_arg, profile_csv(p)); return 0; });
      if (!svg_arg.empty()) for_flag("--svg", [&] { write_svg(svg_arg, profile_panels(p)); return 0; });
      const auto k = transverse_curvature(p);
      const double min_k = *std::min_element(k.begin(), k.end());
      json meta{{"weights", reals(p.weights)},
                {"slice_weights", reals(p.slice_weights)},
                {"slopes", reals(p.slopes)},
                {"x_max", p.x_max},
                {"lambda", p.lambda},
                {"b", p.b},
                {"min_K_T", min_k},
                {"residual", soliton_residual(p)}};
      if (as_json) {
        print_line(meta);
      } else {
        std::cout << "weights      = (" << format_reeb(p.weights) << "), on slice ("
                  << format_reeb(p.slice_weights) << ")\n";
        std::cout << "end slopes   = (" << format_reeb(p.slopes) << "), x_max = " << format_real(p.x_max)
                  << ", lambda = " << format_real(p.lambda) << "\n";
        std::cout << "b            = " << format_real(p.b) << "\n";
        std::cout << "min K_T      = " << format_real(min_k) << "\n";
        std::cout << "ODE residual = " << format_real(soliton_residual(p)) << "\n";
      }
      return 0;
    }

    if (*ent) {
      const auto w = weights_arg.empty() ? config.soliton_weights : two_weights("--weights", weights_arg);
      const EntropyReport e =
          for_flag("--weights", [&] { return entropy_report(w[0], w[1], SolitonOptions{config.soliton_grid_points}); });
      print_line({{"reeb", reals(e.reeb.coeffs())},
                  {"V", e.volume},
                  {"W", e.w_constant},
                  {"mu", e.mu},
                  {"A", e.a},
                  {"bound_ok", e.bound_ok}});
      return e.bound_ok ? 0 : 1;
    }

    if (*rep) {
      if (!out_dir.empty()) config.output_dir = out_dir;
      if (as_json) config.verbosity = 0;
      const ReportResult r = run_report(config, std::cout);
      if (as_json) {
        for (const CheckResult& c : r.checks) print_line({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
      }
      if (!r.all_pass()) {
        std::string failed;
        for (const CheckResult& c : r.checks) {
          if (!c.pass) failed += (failed.empty() ? "" : ", ") + c.name;
        }
        std::cerr << "report: failed checks: " << failed << "\n";
        return 1;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
