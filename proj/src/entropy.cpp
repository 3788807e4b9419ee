#include "reebflow/entropy.hpp"

#include <cmath>
#include <numeric>

namespace reebflow {

namespace {

struct LinkIntegrals {
  double mass;      // int e^{-f}
  double curv_grad; // int e^{-f} (R + |grad f|^2)
  double f_weight;  // int e^{-f} f
};

double round_scalar_curvature(int n) { return 2.0 * n * (2.0 * n + 1.0); }

const RoundSphereMetric* as_round(const EntropyDatum& d) {
  return std::get_if<RoundSphereMetric>(&d.metric);
}

void check_datum(const EntropyDatum& d) {
  if (const auto* round = as_round(d)) {
    if (round->n != d.n) throw InvalidInput("entropy datum: dimension mismatch");
    if (!d.f.is_constant()) throw InvalidInput("entropy datum: round metric only carries constant f");
  } else if (d.n != 1) {
    throw InvalidInput("entropy datum: toric profile metrics are n = 1");
  }
  if (d.f.coeffs.empty()) throw InvalidInput("entropy datum: empty basic function");
}

template <class F>
double integrate_momentum(const ToricSurfaceMetric& m, int points, F&& integrand) {
  const GaussRule g = gauss_legendre_unit(points);
  double s = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * integrand(m.x_max * g.nodes[i]);
  return m.fiber_measure * m.x_max * s;
}

LinkIntegrals link_integrals(const EntropyDatum& d, const EntropyOptions& opts) {
  check_datum(d);
  if (const auto* round = as_round(d)) {
    const double f = d.f.coeffs[0];
    const double mass = std::exp(-f) * sphere_volume(round->n);
    return {mass, mass * round_scalar_curvature(round->n), mass * f};
  }
  const auto& m = std::get<ToricSurfaceMetric>(d.metric);
  LinkIntegrals out{0.0, 0.0, 0.0};
  out.mass = integrate_momentum(m, opts.quad_points, [&](double x) { return std::exp(-d.f.value(x)); });
  out.curv_grad = integrate_momentum(m, opts.quad_points, [&](double x) {
    const double r = 2.0 * m.transverse_curvature(x) - 2.0;
    const double fp = d.f.d1(x);
    return std::exp(-d.f.value(x)) * (r + m.phi(x) * fp * fp);
  });
  out.f_weight = integrate_momentum(m, opts.quad_points, [&](double x) {
    const double f = d.f.value(x);
    return std::exp(-f) * f;
  });
  return out;
}

void require_normalized(const LinkIntegrals& li) {
  if (std::abs(li.mass - 1.0) > 1e-10) {
    throw InvalidInput("entropy datum is not normalized: int e^{-f} dv = " + format_real(li.mass));
  }
}

}  // namespace

double BasicFunction::value(double x) const {
  double s = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) s = s * x + coeffs[k];
  return s;
}

double BasicFunction::d1(double x) const {
  double s = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) s = s * x + k * coeffs[k];
  return s;
}

double BasicFunction::d2(double x) const {
  double s = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 2;) s = s * x + k * (k - 1.0) * coeffs[k];
  return s;
}

bool BasicFunction::is_constant() const {
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    if (coeffs[k] != 0.0) return false;
  }
  return true;
}

double metric_volume(const MetricData& metric) {
  if (const auto* round = std::get_if<RoundSphereMetric>(&metric)) return sphere_volume(round->n);
  return std::get<ToricSurfaceMetric>(metric).volume();
}

double normalization_mass(const EntropyDatum& datum, const EntropyOptions& opts) {
  return link_integrals(datum, opts).mass;
}

EntropyDatum normalize(EntropyDatum datum, const EntropyOptions& opts) {
  const double mass = normalization_mass(datum, opts);
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidInput("normalize: degenerate mass");
  datum.f.coeffs[0] += std::log(mass);
  return datum;
}

EntropyDatum round_datum(int n) {
  if (n < 1) throw InvalidInput("round_datum: n must be >= 1");
  return {RoundSphereMetric{n}, BasicFunction{{std::log(sphere_volume(n))}}, n};
}

EntropyDatum soliton_datum(const MomentumProfile& profile, PotentialSign sign,
                           const EntropyOptions& opts) {
  const ReebVector xi{profile.slice_weights[0], profile.slice_weights[1]};
  const double slope = sign == PotentialSign::perelman ? -profile.b : profile.b;
  EntropyDatum d{attach_metric(profile, xi), BasicFunction{{0.0, slope}}, 1};
  return normalize(std::move(d), opts);
}

double w_link(const EntropyDatum& datum, const EntropyOptions& opts) {
  const LinkIntegrals li = link_integrals(datum, opts);
  require_normalized(li);
  return li.curv_grad + 4.0 * (datum.n + 1.0) * li.f_weight;
}

double radial_moment_numeric(int m) {
  if (m < 0) throw InvalidInput("radial_moment_numeric: m must be >= 0");
  // e^{-r^2/2} r^m is below 1e-300 of its peak well before r = 45
  return integrate_adaptive([m](double r) { return std::exp(-0.5 * r * r) * std::pow(r, m); }, 0.0,
                            45.0, 1e-14);
}

double w_cone(const EntropyDatum& datum, const EntropyOptions& opts) {
  const LinkIntegrals li = link_integrals(datum, opts);
  require_normalized(li);
  const int n = datum.n;
  // R_X = R / r^2 and |grad_X f|^2 = |grad f|^2 / r^2 lower the radial power by 2
  const double inner = radial_moment_numeric(2 * n - 1);
  const double outer = radial_moment_numeric(2 * n + 1);
  return 2.0 * (n + 1.0) * (inner * li.curv_grad + (2.0 + 2.0 / n) * outer * li.f_weight);
}

double cone_link_ratio(int n) {
  if (n < 1) throw InvalidInput("cone_link_ratio: n must be >= 1");
  double fact = 1.0;
  for (int k = 2; k <= n - 1; ++k) fact *= k;
  return (2.0 * n + 2.0) * std::ldexp(1.0, n - 1) * fact;
}

double gaussian_moment(int k) {
  if (k < 0) throw InvalidInput("gaussian_moment: k must be >= 0");
  double fact = 1.0;
  for (int j = 2; j <= k; ++j) fact *= j;
  return std::ldexp(fact, k);
}

std::vector<double> minimizer_lhs(const EntropyDatum& datum, const EntropyOptions& opts) {
  check_datum(datum);
  const int n = datum.n;
  if (const auto* round = as_round(datum)) {
    return {round_scalar_curvature(round->n) + 4.0 * (n + 1.0) * datum.f.coeffs[0]};
  }
  const auto& m = std::get<ToricSurfaceMetric>(datum.metric);
  const int pts = std::max(opts.grid_points, 2);
  std::vector<double> out(pts);
  for (int i = 0; i < pts; ++i) {
    const double x = i == pts - 1 ? m.x_max : m.x_max * i / (pts - 1.0);
    const double fp = datum.f.d1(x);
    // Lap f = (phi f')' for basic f in momentum coordinates
    const double lap = m.dphi(x) * fp + m.phi(x) * datum.f.d2(x);
    const double grad2 = m.phi(x) * fp * fp;
    const double r = 2.0 * m.transverse_curvature(x) - 2.0 * n;
    out[i] = 2.0 * lap - grad2 + r + 4.0 * (n + 1.0) * datum.f.value(x);
  }
  return out;
}

double minimizer_residual(const EntropyDatum& datum, double a, const EntropyOptions& opts) {
  double worst = 0.0;
  for (double v : minimizer_lhs(datum, opts)) worst = std::max(worst, std::abs(v - a));
  return worst;
}

double best_fit_a(const EntropyDatum& datum, const EntropyOptions& opts) {
  const auto lhs = minimizer_lhs(datum, opts);
  return std::accumulate(lhs.begin(), lhs.end(), 0.0) / static_cast<double>(lhs.size());
}

bool entropy_volume_bound(double volume, double mu, int n) {
  if (!(volume > 0.0)) throw InvalidInput("entropy_volume_bound: volume must be > 0");
  return volume >= std::exp(mu / (4.0 * (n + 1.0)) - 2.0 * n);
}

double mu_of_soliton(const MomentumProfile& profile, const EntropyOptions& opts) {
  return w_link(soliton_datum(profile, PotentialSign::perelman, opts), opts);
}

EntropyReport entropy_report(double a0, double a1, const SolitonOptions& sopts,
                             const EntropyOptions& opts) {
  const MomentumProfile profile = solve_soliton(a0, a1, sopts);
  const EntropyDatum sol = soliton_datum(profile, PotentialSign::perelman, opts);
  const EntropyDatum flat = normalize(EntropyDatum{sol.metric, BasicFunction{{0.0}}, 1}, opts);
  EntropyReport r{ReebVector{profile.slice_weights[0], profile.slice_weights[1]},
                  metric_volume(sol.metric),
                  w_link(flat, opts),
                  w_link(sol, opts),
                  best_fit_a(sol, opts),
                  false};
  r.bound_ok = entropy_volume_bound(r.volume, r.mu, 1);
  return r;
}

void attach_soliton_entropy(FlowTrajectory& trajectory, const SolitonOptions& sopts,
                            const EntropyOptions& opts) {
  for (FlowState& s : trajectory.states) {
    if (s.reeb.dim() != 1) throw InvalidInput("attach_soliton_entropy: trajectory is not n = 1");
    s.mu = mu_of_soliton(solve_soliton(s.reeb[0], s.reeb[1], sopts), opts);
  }
}

}  // namespace reebflow
