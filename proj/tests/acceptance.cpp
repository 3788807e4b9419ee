// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "reebflow/report.hpp"
#include "support.hpp"

using namespace reebflow;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double max_dev_from_ones(const ReebVector& xi) {
  double d = 0.0;
  for (double a : xi.coeffs()) d = std::max(d, std::abs(a - 1.0));
  return d;
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome minimizer() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  bool flow_ok = true;
  const std::vector<ReebVector> starts{{0.5, 1.5}, {0.2, 0.8, 2.0}, {0.4, 0.8, 1.2, 1.6}};
  for (const ReebVector& s : starts) {
    const auto link = WeightedSphereLink::make(s.dim());
    worst = std::max(worst, max_dev_from_ones(minimize_volume(link, s).reeb));
    const FlowTrajectory traj = run_flow(link, s);
    flow_ok = flow_ok && traj.terminated_by == FlowTermination::gradient_tolerance;
    worst = std::max(worst, max_dev_from_ones(traj.states.back().reeb));
  }
  const double t = seconds_since(t0);
  return {worst < 1e-6 && flow_ok && t < 60.0,
          "max |a_i - 1| = " + format_real(worst) + " over n = 1,2,3, " + format_real(t) + " s"};
}

Outcome closed_form() {
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto link = WeightedSphereLink::make(n);
    for (int k = 0; k < 50; ++k) {
      const ReebVector xi = testing::random_slice_point(rng, n);
      worst = std::max(worst, std::abs(volume(link, xi) / link.sphere_volume() - closed_form_relative_volume(xi)));
    }
  }
  return {worst < 1e-8, "max deviation " + format_real(worst) + " on 150 random points"};
}

Outcome futaki_derivative() {
  std::mt19937_64 rng(1002);
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto link = WeightedSphereLink::make(n);
    for (int k = 0; k < 10; ++k) {
      const ReebVector xi = testing::random_slice_point(rng, n, 0.4, 2.5);
      const TangentVector y = testing::random_direction(rng, n);
      const double h = 1e-4;
      const double fd = (volume(link, testing::shifted(xi, y.coeffs(), h)) -
                         volume(link, testing::shifted(xi, y.coeffs(), -h))) /
                        (2 * h);
      worst = std::max(worst, testing::rel_err(-2.0 * futaki(link, xi, y), fd));
    }
  }
  return {worst < 1e-6, "max relative error " + format_real(worst)};
}

Outcome convexity() {
  std::mt19937_64 rng(1003);
  double min_eig = 1e300;
  for (int n = 1; n <= 2; ++n) {
    const auto link = WeightedSphereLink::make(n);
    for (int k = 0; k < 10; ++k) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hessian_volume(link, testing::random_slice_point(rng, n)));
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
  }
  return {min_eig > 0.0, "min eigenvalue " + format_real(min_eig)};
}

Outcome properness() {
  const auto table = properness_probe(WeightedSphereLink::make(1), 0, {0.3, 0.1, 0.03, 0.01});
  bool monotone = true;
  for (std::size_t i = 1; i < table.size(); ++i) monotone = monotone && table[i].volume > table[i - 1].volume;
  const double rel = table.back().relative_volume;
  return {monotone && std::abs(rel - 50.251) <= 1e-3,
          "relative volume at 0.01 = " + format_real(rel) + (monotone ? ", monotone" : ", not monotone")};
}

Outcome soliton() {
  const MomentumProfile round = solve_soliton(1.0, 1.0);
  double worst_round = std::abs(round.b);
  const auto k1 = transverse_curvature(round);
  for (std::size_t i = 0; i < round.grid.size(); ++i) {
    const double x = round.grid[i];
    worst_round = std::max({worst_round, std::abs(round.phi[i] - (2 * x - 4 * x * x)), std::abs(k1[i] - 4.0)});
  }
  const auto rows = soliton_sweep(SweepSpec{1.0, 4.0, 20}.ratios(), 1.0, {}, {});
  double worst_res = 0.0, min_k = 1e300;
  for (const SweepRow& r : rows) {
    worst_res = std::max(worst_res, r.residual);
    min_k = std::min(min_k, r.min_curvature);
  }
  return {worst_round < 1e-8 && worst_res < 1e-10 && min_k > 0.0 && rows.size() == 20,
          "round error " + format_real(worst_round) + ", max residual " + format_real(worst_res) +
              ", min K_T " + format_real(min_k)};
}

Outcome futaki_sign() {
  const auto rows = soliton_sweep(SweepSpec{1.0, 4.0, 20}.ratios(), 1.0, {}, {});
  int checked = 0;
  bool ok = true;
  for (const SweepRow& r : rows) {
    if (r.ratio == 1.0) continue;
    ++checked;
    ok = ok && r.profile.b != 0.0 && (r.profile.b > 0.0) == (r.futaki > 0.0);
  }
  return {ok && checked == 19, std::to_string(checked) + " non-Einstein points"};
}

Outcome proportionality() {
  double worst_ratio = 0.0, worst_moment = 0.0;
  for (int n = 1; n <= 2; ++n) {
    const EntropyDatum d = round_datum(n);
    worst_ratio = std::max(worst_ratio, std::abs(w_cone(d) / w_link(d) - cone_link_ratio(n)));
  }
  const EntropyDatum s = soliton_datum(solve_soliton(1.0, 2.0));
  worst_ratio = std::max(worst_ratio, std::abs(w_cone(s) / w_link(s) - cone_link_ratio(1)));
  for (int k = 0; k <= 8; ++k) {
    worst_moment = std::max(worst_moment, testing::rel_err(radial_moment_numeric(2 * k + 1),
                                                           std::ldexp(std::tgamma(k + 1.0), k)));
  }
  return {worst_ratio < 1e-8 && worst_moment < 1e-10,
          "ratio error " + format_real(worst_ratio) + ", moment error " + format_real(worst_moment)};
}

Outcome entropy_bound() {
  bool ok = true;
  int count = 0;
  for (double r : SweepSpec{0.25, 4.0, 16}.ratios()) {
    const EntropyReport e = entropy_report(1.0, r);
    ok = ok && e.bound_ok && e.volume >= std::exp(e.mu / 8.0 - 2.0);
    ++count;
  }
  const double v = 2 * std::numbers::pi * std::numbers::pi;
  const double mu = w_link(round_datum(1));
  const bool round_ok = std::abs(mu - (6.0 + 8.0 * std::log(v))) < 1e-12 && entropy_volume_bound(v, mu, 1);
  return {ok && round_ok, std::to_string(count) + " soliton pairs and round S^3 (mu = " + format_real(mu) + ")"};
}

Outcome monotonicity() {
  const auto t0 = Clock::now();
  FlowTrajectory traj = run_flow(WeightedSphereLink::make(1), ReebVector{0.5, 1.5});
  double worst_vol = -1e300;
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    worst_vol = std::max(worst_vol, traj.states[i].volume - traj.states[i - 1].volume);
  }
  // ten evenly spaced states including both ends
  FlowTrajectory sampled;
  const std::size_t m = traj.states.size();
  for (int k = 0; k < 10; ++k) sampled.states.push_back(traj.states[k * (m - 1) / 9]);
  attach_soliton_entropy(sampled);
  double worst_mu = -1e300;
  for (std::size_t i = 1; i < sampled.states.size(); ++i) {
    worst_mu = std::max(worst_mu, *sampled.states[i - 1].mu - *sampled.states[i].mu);
  }
  const double t = seconds_since(t0);
  return {worst_vol <= 1e-8 && worst_mu <= 1e-8 && traj.terminated_by == FlowTermination::gradient_tolerance &&
              t < 10.0,
          "max volume rise " + format_real(worst_vol) + ", max mu drop " + format_real(worst_mu) + ", " +
              std::to_string(m) + " states, " + format_real(t) + " s"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  std::vector<fs::path> dirs;
  for (const char* name : {"reebflow_accept_a", "reebflow_accept_b"}) {
    dirs.push_back(fs::temp_directory_path() / name);
    fs::remove_all(dirs.back());
  }
  std::ostringstream sink;
  for (const fs::path& d : dirs) {
    RunConfig c;
    c.output_dir = d.string();
    c.verbosity = 0;
    run_report(c, sink);
  }
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(dirs[0])) {
    if (entry.path().extension() != ".csv") continue;
    const fs::path other = dirs[1] / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
      return {false, entry.path().filename().string() + " differs"};
    }
    ++compared;
  }
  return {compared >= 5, std::to_string(compared) + " CSV files byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"volume minimizer", minimizer},
      {"closed-form volume oracle", closed_form},
      {"futaki is minus half the volume derivative", futaki_derivative},
      {"hessian convexity", convexity},
      {"properness", properness},
      {"soliton solver", soliton},
      {"futaki sign consistency", futaki_sign},
      {"entropy cone/link proportionality", proportionality},
      {"entropy volume bound", entropy_bound},
      {"volume and entropy monotonicity", monotonicity},
      {"report determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
