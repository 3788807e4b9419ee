#include "reebflow/soliton_ode.hpp"

#include <algorithm>
#include <numbers>

#include "reebflow/errors.hpp"

namespace reebflow {

namespace {

struct Kernels {
  double h1, h2, dh1, dh2;
};

// h1(z) = sum (-z)^j / (j+1)!,  h2(z) = sum (-z)^j / (j+2)!
Kernels exp_kernels(double z) {
  if (std::abs(z) <= 1.0) {
    Kernels k{0.0, 0.0, 0.0, 0.0};
    double zj = 1.0;    // (-z)^j
    double fact1 = 1.0;  // (j+1)!
    double fact2 = 2.0;  // (j+2)!
    for (int j = 0; j < 30; ++j) {
      k.h1 += zj / fact1;
      k.h2 += zj / fact2;
      // h1'(z) = -sum (j+1) (-z)^j / (j+2)!,  h2'(z) = -sum (j+1) (-z)^j / (j+3)!
      k.dh1 -= (j + 1.0) * zj / fact2;
      k.dh2 -= (j + 1.0) * zj / (fact2 * (j + 3.0));
      zj *= -z;
      fact1 *= j + 2.0;
      fact2 *= j + 3.0;
    }
    return k;
  }
  const double e = std::exp(-z);
  const double em1 = std::expm1(-z);
  Kernels k;
  k.h1 = -em1 / z;
  k.h2 = (em1 + z) / (z * z);
  k.dh1 = (e - k.h1) / z;
  k.dh2 = (k.h1 - 2.0 * k.h2) / z;
  return k;
}

std::array<double, 2> slice_normalize(double a0, double a1) {
  const double c = a0 + a1;
  return {2.0 * a0 / c, 2.0 * a1 / c};
}

}  // namespace

double ProfileShape::value(double x) const {
  const Kernels k = exp_kernels(rate * x);
  return s0 * x * k.h1 - lambda * x * x * k.h2;
}

double ProfileShape::slope(double x) const {
  const Kernels k = exp_kernels(rate * x);
  return s0 * std::exp(-rate * x) - lambda * x * k.h1;
}

double ProfileShape::rate_derivative(double x) const {
  const Kernels k = exp_kernels(rate * x);
  return s0 * x * x * k.dh1 - lambda * x * x * x * k.dh2;
}

MomentumProfile solve_soliton(double a0, double a1, const SolitonOptions& opts) {
  if (!(a0 > 0.0) || !(a1 > 0.0) || !std::isfinite(a0) || !std::isfinite(a1)) {
    throw InvalidInput("solve_soliton: weights must be positive and finite");
  }
  if (opts.grid_points < 3) throw InvalidInput("solve_soliton: need at least 3 grid points");

  MomentumProfile p;
  p.weights = {a0, a1};
  p.slice_weights = slice_normalize(a0, a1);
  p.slopes = {2.0 / p.slice_weights[0], 2.0 / p.slice_weights[1]};
  p.lambda = kEinsteinLambda;
  p.x_max = (p.slopes[0] + p.slopes[1]) / p.lambda;

  const double s0 = p.slopes[0];
  const double s1 = p.slopes[1];
  const double x_max = p.x_max;
  auto endpoint = [&](double b) { return ProfileShape{s0, b, p.lambda}.value(x_max); };

  double b = 0.0;
  if (std::abs(s0 - s1) > 1e-15 * (s0 + s1)) {
    // phi_0(x_max) = x_max (s0 - s1) / 2, and phi_b(x_max) decreases in b
    const double dir = s0 > s1 ? 1.0 : -1.0;
    double lo = 0.0;
    double hi = dir;
    while (endpoint(hi) * dir > 0.0) {
      lo = hi;
      hi *= 2.0;
      if (std::abs(hi) > 1e4) {
        throw RootBracketFailure("solve_soliton: no sign change of phi(x_max) for b in [0, " +
                                 format_real(hi) + "]");
      }
    }
    // bracket [lo, hi] in the direction of dir; f(lo) has the sign of dir
    for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-9 * std::max(1.0, std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (endpoint(mid) * dir > 0.0) lo = mid;
      else hi = mid;
    }
    b = 0.5 * (lo + hi);
    for (int it = 0; it < 20; ++it) {
      const ProfileShape s{s0, b, p.lambda};
      const double g = s.value(x_max);
      const double dg = s.rate_derivative(x_max);
      if (dg == 0.0) break;
      const double next = b - g / dg;
      if (next <= std::min(lo, hi) || next >= std::max(lo, hi)) break;
      const double step = std::abs(next - b);
      b = next;
      if (step <= 1e-16 * std::abs(b)) break;
    }
  }
  p.b = b;
  p.shape = {s0, b, p.lambda};

  const int m = opts.grid_points;
  p.grid.resize(m);
  p.phi.resize(m);
  for (int i = 0; i < m; ++i) {
    p.grid[i] = i == m - 1 ? x_max : x_max * i / (m - 1.0);
    p.phi[i] = p.shape.value(p.grid[i]);
  }
  for (int i = 1; i < m - 1; ++i) {
    if (!(p.phi[i] > 0.0)) {
      throw Error("solve_soliton: nonpositive interior profile at x = " + format_real(p.grid[i]));
    }
  }
  return p;
}

std::vector<double> transverse_curvature(const MomentumProfile& profile) {
  std::vector<double> k(profile.grid.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    k[i] = 0.5 * (profile.lambda + profile.b * profile.shape.slope(profile.grid[i]));
  }
  return k;
}

double soliton_residual(const MomentumProfile& profile) {
  const ProfileShape shape = profile.shape;
  return ode_residual([&](double x) { return shape.value(x); }, profile.lambda, profile.b,
                      profile.grid, profile.x_max / 64.0);
}

double ToricSurfaceMetric::transverse_area() const { return 2.0 * std::numbers::pi * x_max; }

ToricSurfaceMetric attach_metric(const MomentumProfile& profile, const ReebVector& xi) {
  if (xi.dim() != 1) throw InvalidInput("attach_metric: the soliton profile is for n = 1");
  const ReebVector normalized = normalize_to_slice(xi);
  for (int i = 0; i < 2; ++i) {
    if (std::abs(normalized[i] - profile.slice_weights[i]) > 1e-12) {
      throw InvalidInput("attach_metric: weight mismatch between profile (" +
                         format_reeb(profile.slice_weights) + ") and Reeb vector (" +
                         format_reeb(normalized.coeffs()) + ")");
    }
  }
  ToricSurfaceMetric m;
  m.shape = profile.shape;
  m.lambda = profile.lambda;
  m.b = profile.b;
  m.x_max = profile.x_max;
  m.fiber_measure = 4.0 * std::numbers::pi * std::numbers::pi;
  return m;
}

}  // namespace reebflow
