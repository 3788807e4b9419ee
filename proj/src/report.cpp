#include "reebflow/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace reebflow {

std::string trajectory_csv(const FlowTrajectory& trajectory) {
  std::string out = "t";
  const std::size_t m = trajectory.states.empty() ? 0 : trajectory.states.front().reeb.size();
  for (std::size_t i = 0; i < m; ++i) out += ",a" + std::to_string(i);
  out += ",volume,grad_norm,mu\n";
  for (const FlowState& s : trajectory.states) {
    out += format_real(s.t);
    for (double a : s.reeb.coeffs()) out += "," + format_real(a);
    out += "," + format_real(s.volume) + "," + format_real(s.grad_norm) + ",";
    if (s.mu) out += format_real(*s.mu);
    out += "\n";
  }
  return out;
}

std::vector<Panel> trajectory_panels(const FlowTrajectory& trajectory) {
  Series vol{"volume", {}, {}, "#1f77b4"};
  Series mu{"mu", {}, {}, "#d62728"};
  for (const FlowState& s : trajectory.states) {
    vol.x.push_back(s.t);
    vol.y.push_back(s.volume);
    if (s.mu) {
      mu.x.push_back(s.t);
      mu.y.push_back(*s.mu);
    }
  }
  std::vector<Panel> panels{{"Volume along the flow", "t", "Vol", {vol}}};
  if (!mu.x.empty()) panels.push_back({"Entropy along the flow", "t", "mu", {mu}});
  return panels;
}

std::string profile_csv(const MomentumProfile& profile) {
  std::string out = "x,phi,K_T,f\n";
  const auto k = transverse_curvature(profile);
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    out += format_real(profile.grid[i]) + "," + format_real(profile.phi[i]) + "," + format_real(k[i]) +
           "," + format_real(profile.b * profile.grid[i]) + "\n";
  }
  return out;
}

std::vector<Panel> profile_panels(const MomentumProfile& profile) {
  const auto k = transverse_curvature(profile);
  return {{"Momentum profile", "x", "phi", {{"phi", profile.grid, profile.phi, "#1f77b4"}}},
          {"Transverse curvature", "x", "K_T", {{"K_T", profile.grid, k, "#2ca02c"}}}};
}

std::vector<SweepRow> soliton_sweep(const std::vector<double>& ratios, double a0,
                                    const SolitonOptions& sopts, const QuadSettings& quad) {
  const WeightedSphereLink link = WeightedSphereLink::make(1, quad);
  std::vector<SweepRow> rows;
  for (double r : ratios) {
    MomentumProfile p = solve_soliton(a0, a0 * r, sopts);
    const auto k = transverse_curvature(p);
    const ReebVector xi{p.slice_weights[0], p.slice_weights[1]};
    SweepRow row{r,
                 p,
                 *std::min_element(k.begin(), k.end()),
                 *std::max_element(k.begin(), k.end()),
                 soliton_residual(p),
                 futaki(link, xi, TangentVector{1.0, -1.0})};
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "ratio,a0,a1,b,x_max,min_K_T,max_K_T,residual,futaki\n";
  for (const SweepRow& r : rows) {
    out += format_real(r.ratio) + "," + format_real(r.profile.weights[0]) + "," +
           format_real(r.profile.weights[1]) + "," + format_real(r.profile.b) + "," +
           format_real(r.profile.x_max) + "," + format_real(r.min_curvature) + "," +
           format_real(r.max_curvature) + "," + format_real(r.residual) + "," + format_real(r.futaki) +
           "\n";
  }
  return out;
}

std::vector<Panel> sweep_panels(const std::vector<SweepRow>& rows) {
  Series kmin{"min K_T", {}, {}, "#2ca02c"};
  Series b{"b", {}, {}, "#9467bd"};
  for (const SweepRow& r : rows) {
    kmin.x.push_back(r.ratio);
    kmin.y.push_back(r.min_curvature);
    b.x.push_back(r.ratio);
    b.y.push_back(r.profile.b);
  }
  return {{"Minimum transverse curvature", "a1/a0", "min K_T", {kmin}},
          {"Soliton slope", "a1/a0", "b", {b}}};
}

bool ReportResult::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << content;
}

namespace {

double max_dev_from_ones(const ReebVector& xi) {
  double d = 0.0;
  for (double a : xi.coeffs()) d = std::max(d, std::abs(a - 1.0));
  return d;
}

double max_abs_diff(const ReebVector& a, const ReebVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

struct Checker {
  ReportResult& result;
  std::ostream& log;
  int verbosity;

  void add(std::string name, bool pass, std::string detail) {
    if (verbosity > 0) log << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    result.checks.push_back({std::move(name), pass, std::move(detail)});
  }

  // Runs a section; an exception fails the named check instead of aborting the report.
  void guard(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, false, std::string("error: ") + e.what());
    }
  }
};

}  // namespace

ReportResult run_report(const RunConfig& config, std::ostream& log) {
  ReportResult result;
  Checker check{result, log, config.verbosity};
  std::filesystem::create_directories(config.output_dir);
  auto out_path = [&](const std::string& name) {
    const std::string p = (std::filesystem::path(config.output_dir) / name).string();
    result.files.push_back(p);
    return p;
  };

  const int n = config.n;
  const WeightedSphereLink link = WeightedSphereLink::make(n, config.quad);
  const WeightedSphereLink link1 = n == 1 ? link : WeightedSphereLink::make(1, config.quad);
  const ReebVector start = default_start(config);
  const SolitonOptions sopts{config.soliton_grid_points};

  // quadrature oracles
  check.guard("quadrature_closed_form", [&] {
    const std::vector<ReebVector> probes = [&] {
      std::vector<ReebVector> v{start};
      std::vector<double> a(n + 1);
      for (int i = 0; i <= n; ++i) a[i] = 0.25 + 0.5 * i;
      v.emplace_back(a);
      for (int i = 0; i <= n; ++i) a[i] = i == 0 ? 0.1 : 1.0 + 0.3 * i;
      v.emplace_back(a);
      return v;
    }();
    double worst = 0.0;
    for (const ReebVector& xi : probes) {
      worst = std::max(worst, std::abs(volume(link, xi) / link.sphere_volume() -
                                       closed_form_relative_volume(xi)));
    }
    check.add("quadrature_closed_form", worst < 1e-8,
              "max |Vol/Vol_round - 1/prod a| = " + format_real(worst) + " (tol 1e-8)");
  });

  check.guard("quadrature_monte_carlo", [&] {
    const double eps = 0.01;
    std::vector<double> edge(n + 1, (n + 1.0 - eps) / n);
    edge[0] = eps;
    const std::vector<std::pair<std::string, std::function<double(std::span<const double>)>>> fs{
        {"u0*u1", [](std::span<const double> u) { return u[0] * u[1]; }},
        {"u0^2 + u1^4", [](std::span<const double> u) { return u[0] * u[0] + std::pow(u[1], 4); }},
        {"volume integrand near boundary",
         [&](std::span<const double> u) {
           double s = 0.0;
           for (int i = 0; i <= n; ++i) s += edge[i] * u[i];
           return std::pow(s, -(n + 1.0));
         }},
    };
    std::string detail;
    bool ok = true;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const double rule = integrate_basic(link, fs[k].second);
      const McEstimate mc = mc_integrate(link, fs[k].second, config.quad.mc_samples, config.quad.mc_seed + k);
      const double z = std::abs(rule - mc.estimate) / std::max(mc.std_error, 1e-300);
      if (!(z <= 3.0)) ok = false;
      detail += (k ? "; " : "") + fs[k].first + ": " + format_real(z) + " stderr";
    }
    check.add("quadrature_monte_carlo", ok, "rule vs Monte Carlo within 3 stderr: " + detail);
  });

  // minimizer
  MinimizeResult newton{start, 0.0, 0, {}};
  bool have_newton = false;
  check.guard("minimizer_newton", [&] {
    newton = minimize_volume(link, start);
    have_newton = true;
    bool decreasing = true;
    for (std::size_t i = 1; i < newton.volumes.size(); ++i) {
      if (newton.volumes[i] > newton.volumes[i - 1] * (1.0 + 1e-14)) decreasing = false;
    }
    const double dev = max_dev_from_ones(newton.reeb);
    check.add("minimizer_newton", dev < 1e-6 && decreasing,
              "minimizer (" + format_reeb(newton.reeb.coeffs()) + "), max |a_i - 1| = " +
                  format_real(dev) + ", " + std::to_string(newton.iterations) + " iterations");
  });

  FlowTrajectory traj;
  check.guard("minimizer_flow", [&] {
    traj = run_flow(link, start, config.flow);
    const ReebVector& end = traj.states.back().reeb;
    const double dev = max_dev_from_ones(end);
    const double agree = have_newton ? max_abs_diff(end, newton.reeb) : 1.0;
    check.add("minimizer_flow",
              traj.terminated_by == FlowTermination::gradient_tolerance && dev < 1e-6 && agree < 1e-5,
              "terminated by " + std::string(to_string(traj.terminated_by)) + " at t = " +
                  format_real(traj.states.back().t) + ", limit (" + format_reeb(end.coeffs()) +
                  "), |flow - newton| = " + format_real(agree));
    double worst_rise = -1e300;
    double worst_charge = 0.0;
    for (std::size_t i = 1; i < traj.states.size(); ++i) {
      worst_rise = std::max(worst_rise, traj.states[i].volume - traj.states[i - 1].volume);
    }
    for (const FlowState& s : traj.states) {
      worst_charge = std::max(worst_charge, std::abs(normalization_charge(s.reeb) - (n + 1.0)));
    }
    check.add("flow_volume_monotone", worst_rise <= 1e-8,
              "max volume increment per step = " + format_real(worst_rise) + " (tol 1e-8)");
    check.add("flow_slice_preserved", worst_charge < 1e-10,
              "max |c(xi) - (n+1)| = " + format_real(worst_charge));
  });

  check.guard("hessian_convexity", [&] {
    double min_eig = 1e300;
    for (const ReebVector& xi : {start, ReebVector(std::vector<double>(n + 1, 1.0))}) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hessian_volume(link, xi));
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    check.add("hessian_convexity", min_eig > 0.0, "min Hessian eigenvalue = " + format_real(min_eig));
  });

  // properness
  check.guard("properness", [&] {
    const auto table = properness_probe(link, 0, {0.3, 0.1, 0.03, 0.01});
    std::string csv = "eps,volume,relative_volume,closed_form\n";
    bool monotone = true;
    for (std::size_t i = 0; i < table.size(); ++i) {
      std::vector<double> a(n + 1, (n + 1.0 - table[i].eps) / n);
      a[0] = table[i].eps;
      csv += format_real(table[i].eps) + "," + format_real(table[i].volume) + "," +
             format_real(table[i].relative_volume) + "," +
             format_real(closed_form_relative_volume(ReebVector(a))) + "\n";
      if (i > 0 && !(table[i].volume > table[i - 1].volume)) monotone = false;
    }
    write_text_file(out_path("properness.csv"), csv);
    bool ok = monotone && table.back().relative_volume > 10.0;
    std::string detail = "relative volume at eps = 0.01: " + format_real(table.back().relative_volume);
    if (n == 1) {
      ok = ok && std::abs(table.back().relative_volume - 50.251) <= 1e-3;
      detail += " (expected 50.251 +- 0.001)";
    }
    check.add("properness", ok, detail + (monotone ? ", monotone" : ", NOT monotone"));
  });

  // entropy along an n = 1 trajectory
  check.guard("entropy_monotone", [&] {
    FlowTrajectory t1 = n == 1 && !traj.states.empty() ? traj : run_flow(link1, ReebVector{0.5, 1.5}, config.flow);
    attach_soliton_entropy(t1, sopts);
    double worst_drop = -1e300;
    bool bound = true;
    for (std::size_t i = 0; i < t1.states.size(); ++i) {
      if (i > 0) worst_drop = std::max(worst_drop, *t1.states[i - 1].mu - *t1.states[i].mu);
      bound = bound && entropy_volume_bound(t1.states[i].volume, *t1.states[i].mu, 1);
    }
    if (n == 1) traj = t1;
    check.add("entropy_monotone", worst_drop <= 1e-8,
              "max mu decrease per step = " + format_real(worst_drop) + " over " +
                  std::to_string(t1.states.size()) + " states");
    check.add("entropy_bound_trajectory", bound, "V >= exp(mu/8 - 2) along the n = 1 trajectory");
  });

  if (!traj.states.empty()) {
    write_text_file(out_path("trajectory.csv"), trajectory_csv(traj));
    write_svg(out_path("trajectory.svg"), trajectory_panels(traj));
  }

  // soliton sweep
  check.guard("soliton_sweep", [&] {
    const auto rows = soliton_sweep(config.sweep.ratios(), 1.0, sopts, config.quad);
    write_text_file(out_path("soliton_sweep.csv"), sweep_csv(rows));
    write_svg(out_path("soliton_sweep.svg"), sweep_panels(rows));
    double worst_res = 0.0;
    double min_k = 1e300;
    bool signs = true;
    for (const SweepRow& r : rows) {
      worst_res = std::max(worst_res, r.residual);
      min_k = std::min(min_k, r.min_curvature);
      if (std::abs(r.ratio - 1.0) > 1e-12 && (r.profile.b > 0.0) != (r.futaki > 0.0)) signs = false;
    }
    check.add("soliton_residual", worst_res < 1e-10, "max ODE residual = " + format_real(worst_res));
    check.add("soliton_positive_curvature", min_k > 0.0, "min K_T over sweep = " + format_real(min_k));
    check.add("futaki_sign", signs, "sign(b) == sign(Fut) at every non-Einstein sweep point");

    const MomentumProfile p = solve_soliton(config.soliton_weights[0], config.soliton_weights[1], sopts);
    write_text_file(out_path("soliton_profile.csv"), profile_csv(p));
    write_svg(out_path("soliton_profile.svg"), profile_panels(p));
  });

  // entropy table
  check.guard("entropy_bound", [&] {
    std::string csv = "ratio,a0,a1,volume,w_constant,mu,a,bound_ok\n";
    bool ok = true;
    double worst_ratio = 0.0;
    for (double r : config.sweep.ratios()) {
      const EntropyReport e = entropy_report(1.0, r, sopts);
      ok = ok && e.bound_ok;
      csv += format_real(r) + "," + format_real(e.reeb[0]) + "," + format_real(e.reeb[1]) + "," +
             format_real(e.volume) + "," + format_real(e.w_constant) + "," + format_real(e.mu) + "," +
             format_real(e.a) + "," + (e.bound_ok ? "true" : "false") + "\n";
      const EntropyDatum d = soliton_datum(solve_soliton(1.0, r, sopts));
      worst_ratio = std::max(worst_ratio, std::abs(w_cone(d) / w_link(d) - cone_link_ratio(1)));
    }
    const EntropyDatum round = round_datum(1);
    ok = ok && entropy_volume_bound(sphere_volume(1), w_link(round), 1);
    write_text_file(out_path("entropy.csv"), csv);
    check.add("entropy_bound", ok, "V >= exp(mu/(4(n+1)) - 2n) for every sweep point and round S^3");
    check.add("entropy_cone_link_ratio", worst_ratio < 1e-8,
              "max |W_cone/W_link - 4| = " + format_real(worst_ratio));
  });

  std::ostringstream summary;
  summary << "reebflow report\n";
  summary << "n = " << n << ", start = (" << format_reeb(start.coeffs()) << ")\n";
  if (have_newton) summary << "minimizer = (" << format_reeb(newton.reeb.coeffs()) << ")\n";
  for (const CheckResult& c : result.checks) {
    summary << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  summary << (result.all_pass() ? "ALL CHECKS PASSED\n" : "SOME CHECKS FAILED\n");
  write_text_file(out_path("summary.txt"), summary.str());
  write_text_file(out_path("config.txt"), serialize_config(config));
  return result;
}

}  // namespace reebflow
