#include "reebflow/flow.hpp"

#include <algorithm>
#include <cmath>

namespace reebflow {

namespace {

// Relative slack for comparing two volume evaluations that differ only by
// quadrature rounding.
constexpr double kVolumeRoundoff = 1e-14;

void require_on_slice(const ReebVector& xi, double tol, const char* who) {
  const HyperplaneSlice slice = HyperplaneSlice::standard(xi.dim());
  if (!slice.contains(xi, tol)) {
    throw InvalidInput(std::string(who) + ": start is not normalized (charge " +
                       format_real(slice.charge(xi)) + ", expected " + format_real(slice.level) + ")");
  }
}

void require_guard(const ReebVector& xi, double guard, const char* who) {
  if (!reeb_membership(xi)) throw InvalidInput(std::string(who) + ": point is outside the Reeb cone");
  if (xi.min_coeff() < guard) {
    throw BoundaryProximity(std::string(who) + ": min a_i = " + format_real(xi.min_coeff()) +
                            " below boundary guard " + format_real(guard));
  }
}

std::vector<double> axpy(std::span<const double> x, double h, std::span<const double> d) {
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * d[i];
  return out;
}

std::vector<double> descent_field(const WeightedSphereLink& link, std::span<const double> x) {
  const TangentVector g = grad_volume(link, ReebVector(std::vector<double>(x.begin(), x.end())));
  std::vector<double> out(g.coeffs().begin(), g.coeffs().end());
  for (double& v : out) v = -v;
  return out;
}

}  // namespace

const char* to_string(FlowTermination t) {
  switch (t) {
    case FlowTermination::gradient_tolerance: return "gradient_tolerance";
    case FlowTermination::max_time: return "max_time";
    case FlowTermination::boundary_guard: return "boundary_guard";
    case FlowTermination::step_failure: return "step_failure";
  }
  return "unknown";
}

FlowState make_flow_state(const WeightedSphereLink& link, const ReebVector& xi, double t,
                          double boundary_guard) {
  require_on_slice(xi, 1e-10, "flow state");
  require_guard(xi, boundary_guard, "flow state");
  FlowState s;
  s.t = t;
  s.reeb = xi;
  s.volume = volume(link, xi);
  s.grad_norm = grad_volume(link, xi).norm();
  return s;
}

FlowState flow_step(const WeightedSphereLink& link, const FlowState& state, double dt,
                    const FlowOptions& opts) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("flow_step: dt must be > 0");
  require_on_slice(state.reeb, 1e-10, "flow_step");
  require_guard(state.reeb, opts.boundary_guard, "flow_step");

  const std::span<const double> x = state.reeb.coeffs();
  const std::vector<double> k1 = descent_field(link, x);
  bool last_was_guard = false;
  double h = dt;
  for (int attempt = 0; attempt <= opts.max_halvings; ++attempt, h *= 0.5) {
    try {
      const auto k2 = descent_field(link, axpy(x, 0.5 * h, k1));
      const auto k3 = descent_field(link, axpy(x, 0.5 * h, k2));
      const auto k4 = descent_field(link, axpy(x, h, k3));
      std::vector<double> next(x.begin(), x.end());
      for (std::size_t i = 0; i < next.size(); ++i) {
        next[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
      ReebVector xi = ReebVector(std::move(next));
      if (!reeb_membership(xi) || xi.min_coeff() < opts.boundary_guard) {
        last_was_guard = true;
        continue;
      }
      xi = normalize_to_slice(xi);
      if (xi.min_coeff() < opts.boundary_guard) {
        last_was_guard = true;
        continue;
      }
      const double v = volume(link, xi);
      if (v > state.volume * (1.0 + kVolumeRoundoff)) {
        last_was_guard = false;
        continue;
      }
      FlowState out;
      out.t = state.t + h;
      out.reeb = std::move(xi);
      out.volume = v;
      out.grad_norm = grad_volume(link, out.reeb).norm();
      return out;
    } catch (const BoundaryProximity&) {
      last_was_guard = true;
    } catch (const InvalidInput&) {
      // an RK stage left the cone
      last_was_guard = true;
    }
  }
  if (last_was_guard) {
    throw BoundaryProximity("flow_step: boundary guard tripped after " +
                            std::to_string(opts.max_halvings) + " halvings");
  }
  throw StepFailure("flow_step: volume did not decrease after " + std::to_string(opts.max_halvings) +
                    " halvings of dt = " + format_real(dt));
}

FlowTrajectory run_flow(const WeightedSphereLink& link, const ReebVector& start,
                        const FlowOptions& opts) {
  if (!(opts.dt0 > 0.0) || !(opts.grad_tol > 0.0) || !(opts.t_max > 0.0)) {
    throw InvalidInput("run_flow: dt0, grad_tol and t_max must be positive");
  }
  FlowTrajectory traj;
  traj.states.push_back(make_flow_state(link, start, 0.0, opts.boundary_guard));
  while (true) {
    const FlowState& cur = traj.states.back();
    if (cur.grad_norm < opts.grad_tol) {
      traj.terminated_by = FlowTermination::gradient_tolerance;
      break;
    }
    if (cur.t >= opts.t_max) {
      traj.terminated_by = FlowTermination::max_time;
      break;
    }
    const double dt = std::min(opts.dt0, opts.t_max - cur.t);
    try {
      FlowState next = flow_step(link, cur, dt, opts);
      traj.states.push_back(std::move(next));
    } catch (const BoundaryProximity& e) {
      traj.terminated_by = FlowTermination::boundary_guard;
      traj.message = e.what();
      break;
    } catch (const StepFailure& e) {
      traj.terminated_by = FlowTermination::step_failure;
      traj.message = e.what();
      break;
    }
  }
  return traj;
}

MinimizeResult minimize_volume(const WeightedSphereLink& link, const ReebVector& start,
                               const MinimizeOptions& opts) {
  require_on_slice(start, 1e-10, "minimize_volume");
  require_guard(start, opts.boundary_guard, "minimize_volume");
  const int n = link.n();
  const auto basis = tangent_basis(n);
  Eigen::MatrixXd q(n + 1, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r <= n; ++r) q(r, c) = basis[c][r];
  }

  MinimizeResult res;
  res.reeb = start;
  double v = volume(link, start);
  res.volumes.push_back(v);
  for (res.iterations = 0; res.iterations < opts.max_iterations; ++res.iterations) {
    const std::vector<double> partials = volume_partials(link, res.reeb);
    const Eigen::VectorXd full = Eigen::Map<const Eigen::VectorXd>(partials.data(), n + 1);
    const Eigen::VectorXd gq = q.transpose() * full;
    res.grad_norm = gq.norm();
    if (res.grad_norm < opts.grad_tol) return res;

    const Eigen::MatrixXd h = hessian_volume(link, res.reeb);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
    Eigen::VectorXd s = -gq;
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
      Eigen::VectorXd newton = ldlt.solve(-gq);
      if (newton.allFinite() && newton.dot(gq) < 0.0) s = newton;
    }
    const Eigen::VectorXd d = q * s;
    const double slope = gq.dot(s);

    // largest step keeping every coordinate at least halfway to the guard
    double alpha = 1.0;
    for (int i = 0; i <= n; ++i) {
      if (d(i) < 0.0) {
        alpha = std::min(alpha, 0.5 * (res.reeb[i] - opts.boundary_guard) / -d(i));
      }
    }

    bool accepted = false;
    for (int bt = 0; bt < 60 && alpha > 1e-16; ++bt, alpha *= 0.5) {
      std::vector<double> trial(res.reeb.coeffs().begin(), res.reeb.coeffs().end());
      for (int i = 0; i <= n; ++i) trial[i] += alpha * d(i);
      ReebVector xi(std::move(trial));
      if (!reeb_membership(xi) || xi.min_coeff() < opts.boundary_guard) continue;
      xi = normalize_to_slice(xi);
      const double vt = volume(link, xi);
      const bool armijo = vt <= v + 1e-4 * alpha * slope;
      // below rounding level the predicted decrease cannot be resolved
      const bool flat = std::abs(alpha * slope) < 1e-12 * v && vt <= v * (1.0 + kVolumeRoundoff);
      if (armijo || flat) {
        res.reeb = std::move(xi);
        v = vt;
        res.volumes.push_back(v);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw StepFailure("minimize_volume: line search failed at grad_norm " +
                        format_real(res.grad_norm));
    }
  }
  throw StepFailure("minimize_volume: no convergence after " + std::to_string(opts.max_iterations) +
                    " iterations");
}

std::vector<ProperPoint> properness_probe(const WeightedSphereLink& link, int boundary_index,
                                          const std::vector<double>& eps_list) {
  const int n = link.n();
  if (boundary_index < 0 || boundary_index > n) throw InvalidInput("properness_probe: bad index");
  const double level = n + 1.0;
  std::vector<ProperPoint> out;
  for (double eps : eps_list) {
    if (!(eps > 0.0) || !(eps < level)) {
      throw InvalidInput("properness_probe: eps = " + format_real(eps) + " outside (0, level)");
    }
    std::vector<double> a(n + 1, (level - eps) / n);
    a[boundary_index] = eps;
    const double v = volume(link, ReebVector(std::move(a)));
    out.push_back({eps, v, v / link.sphere_volume()});
  }
  return out;
}

}  // namespace reebflow
