#include "reebflow/quadrature.hpp"

#include <cstdio>
#include <numbers>
#include <random>

namespace reebflow {

GaussRule gauss_legendre_unit(int points) {
  if (points < 1) throw InvalidInput("Gauss-Legendre rule needs at least one point");
  const int m = points;
  GaussRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  // Newton iteration on P_m from the Chebyshev-like initial guess; nodes are
  // produced in increasing order on [0, 1].
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= m; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = m * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[m - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[m - 1 - i] = 0.5 * w;
  }
  return rule;
}

int default_quad_points(int n) {
  switch (n) {
    case 1: return 128;
    case 2: return 64;
    case 3: return 40;
    default: return 24;
  }
}

double sphere_volume(int n) {
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  return 2.0 * std::pow(std::numbers::pi, n + 1) / fact;
}

namespace {

// Conical product (Duffy) map from [0,1]^n onto the simplex:
//   u_0 = t_1, u_k = t_{k+1} prod_{j<=k} (1 - t_j), u_n = prod_j (1 - t_j),
// with Jacobian prod_k (1 - t_k)^{n-k}.
std::vector<SimplexNode> conical_gauss_rule(int n, int points) {
  const GaussRule g = gauss_legendre_unit(points);
  std::vector<SimplexNode> nodes;
  std::vector<int> idx(n, 0);
  double total = 0.0;
  while (true) {
    SimplexNode node{std::vector<double>(n + 1), 1.0};
    double rem = 1.0;
    for (int k = 0; k < n; ++k) {
      const double t = g.nodes[idx[k]];
      node.u[k] = rem * t;
      node.weight *= g.weights[idx[k]] * std::pow(1.0 - t, n - 1 - k);
      rem *= 1.0 - t;
    }
    node.u[n] = rem;
    total += node.weight;
    nodes.push_back(std::move(node));

    int k = n - 1;
    while (k >= 0 && ++idx[k] == points) idx[k--] = 0;
    if (k < 0) break;
  }
  for (SimplexNode& node : nodes) node.weight /= total;
  return nodes;
}

}  // namespace

WeightedSphereLink WeightedSphereLink::make(int n, const QuadSettings& settings) {
  if (n < 1 || n > 6) throw InvalidInput("link dimension n must be in [1, 6]");
  if (settings.rule != "gauss") throw InvalidInput("unknown quadrature rule '" + settings.rule + "'");
  const int points = settings.points > 0 ? settings.points : default_quad_points(n);
  if (std::pow(static_cast<double>(points), n) > 2e7) {
    throw InvalidInput("quadrature rule too large: points^n exceeds 2e7");
  }
  WeightedSphereLink link;
  link.n_ = n;
  link.points_ = points;
  link.rule_ = conical_gauss_rule(n, points);
  link.mc_seed_ = settings.mc_seed;
  link.mc_samples_ = settings.mc_samples;
  link.sphere_volume_ = reebflow::sphere_volume(n);
  return link;
}

namespace detail {

void report_bad_node(std::span<const double> u, double value) {
  std::string where = "(";
  for (std::size_t i = 0; i < u.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.6g", i ? ", " : "", u[i]);
    where += buf;
  }
  where += ")";
  if (std::isfinite(value)) {
    throw BoundaryProximity("integrand exceeds singular cutoff at u = " + where +
                            "; evaluation point is too close to the cone boundary");
  }
  throw IntegrationFailure("non-finite integrand at u = " + where);
}

}  // namespace detail

McEstimate mc_integrate(const WeightedSphereLink& link,
                        const std::function<double(std::span<const double>)>& f,
                        std::int64_t samples, std::uint64_t seed) {
  if (samples < 1000) throw InvalidInput("mc_integrate: need at least 1000 samples");
  std::mt19937_64 gen(seed);
  const int m = link.n() + 1;
  std::vector<double> u(m);
  // Welford accumulation keeps a constant integrand at exactly zero variance.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
      // uniform in (0, 1) from the top 53 bits; exponential spacings give a
      // uniform point on the simplex after normalization
      const double unif = (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
      u[i] = -std::log(unif);
      total += u[i];
    }
    for (double& x : u) x /= total;
    const double v = f(u);
    if (!std::isfinite(v)) detail::report_bad_node(u, v);
    const double delta = v - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (v - mean);
  }
  const double var = m2 / static_cast<double>(samples - 1);
  const double vol = link.sphere_volume();
  return {vol * mean, vol * std::sqrt(var / static_cast<double>(samples))};
}

namespace {

double gauss_panel(const std::function<double(double)>& f, const GaussRule& g, double a, double b) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * f(a + (b - a) * g.nodes[i]);
  return s * (b - a);
}

double adapt(const std::function<double(double)>& f, const GaussRule& lo, const GaussRule& hi,
             double a, double b, double scale, double rel_tol, int depth) {
  const double coarse = gauss_panel(f, lo, a, b);
  const double fine = gauss_panel(f, hi, a, b);
  if (std::abs(fine - coarse) <= rel_tol * scale || depth == 0) return fine;
  const double mid = 0.5 * (a + b);
  return adapt(f, lo, hi, a, mid, scale, rel_tol, depth - 1) +
         adapt(f, lo, hi, mid, b, scale, rel_tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_depth) {
  static const GaussRule lo = gauss_legendre_unit(10);
  static const GaussRule hi = gauss_legendre_unit(20);
  // scale estimate from a fixed 16-panel pass
  double scale = 0.0;
  for (int k = 0; k < 16; ++k) {
    scale += std::abs(gauss_panel(f, hi, a + (b - a) * k / 16.0, a + (b - a) * (k + 1) / 16.0));
  }
  if (scale == 0.0) return 0.0;
  return adapt(f, lo, hi, a, b, scale, rel_tol, max_depth);
}

}  // namespace reebflow
