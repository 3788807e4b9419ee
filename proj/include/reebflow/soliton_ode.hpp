#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "reebflow/reeb_cone.hpp"

namespace reebflow {

/// Einstein constant of the momentum ODE: Ric^T = 2(n+1) g^T at n = 1 gives
/// K^T = 4, i.e. -phi'' = 8 for the round profile.
inline constexpr double kEinsteinLambda = 8.0;

/// phi(x) = s0 * x * h1(k x) - lambda * x^2 * h2(k x), with
/// h1(z) = (1 - e^{-z}) / z and h2(z) = (e^{-z} - 1 + z) / z^2.
/// This is the solution of -phi'' = lambda + k phi' with phi(0) = 0,
/// phi'(0) = s0; small |k x| goes through the power series of h1, h2.
struct ProfileShape {
  double s0 = 0.0;
  double rate = 0.0;
  double lambda = kEinsteinLambda;

  double value(double x) const;
  double slope(double x) const;
  /// d phi(x) / d rate
  double rate_derivative(double x) const;
};

struct MomentumProfile {
  std::array<double, 2> weights{};        // as passed in
  std::array<double, 2> slice_weights{};  // normalized to a0 + a1 = 2
  std::array<double, 2> slopes{};         // (phi'(0), -phi'(x_max))
  double x_max = 0.0;
  std::vector<double> grid;
  std::vector<double> phi;
  double b = 0.0;
  double lambda = kEinsteinLambda;
  ProfileShape shape;
};

struct SolitonOptions {
  int grid_points = 201;
};

/// Toric n = 1 transverse Kahler-Ricci soliton on the weighted S^3 in the
/// momentum ansatz g^T = dx^2 / phi + phi dtheta^2 with soliton potential
/// f = b x, so that Ric^T - 4 g^T = Hess(b x) becomes
///   -phi'' = lambda + b phi',  phi(0) = phi(x_max) = 0.
/// Boundary slopes are s_i = 2 / a_i with a normalized to the slice, so the
/// round profile 2x - 4x^2 is recovered at unit weights and the Futaki sign
/// matches sign(b). x_max = (s0 + s1) / lambda and b is the root of
/// phi_b(x_max) = 0.
MomentumProfile solve_soliton(double a0, double a1, const SolitonOptions& opts = {});

/// K^T(x) = (lambda + b phi'(x)) / 2 on the profile grid.
std::vector<double> transverse_curvature(const MomentumProfile& profile);

/// Second derivative and first derivative by 8th-order central differences.
template <class Phi>
double ode_residual(Phi&& phi, double lambda, double b, std::span<const double> grid, double h) {
  static constexpr double d2[5] = {-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};
  static constexpr double d1[5] = {0.0, 4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  double worst = 0.0;
  for (double x : grid) {
    double second = d2[0] * phi(x);
    double first = 0.0;
    for (int k = 1; k <= 4; ++k) {
      const double plus = phi(x + k * h);
      const double minus = phi(x - k * h);
      second += d2[k] * (plus + minus);
      first += d1[k] * (plus - minus);
    }
    second /= h * h;
    first /= h;
    worst = std::max(worst, std::abs(-second - lambda - b * first));
  }
  return worst;
}

/// sup over the grid of |-phi'' - lambda - b phi'| using the profile's closed
/// form (analytic past the endpoints) and finite differences.
double soliton_residual(const MomentumProfile& profile);

/// Sasaki metric g = eta (x) eta + g^T over a toric n = 1 profile. Basic
/// integrals reduce to fiber_measure * int_0^{x_max} F(x) dx.
struct ToricSurfaceMetric {
  ProfileShape shape;
  double lambda = kEinsteinLambda;
  double b = 0.0;
  double x_max = 0.0;
  /// Reeb orbit length times the theta period, (2 pi)^2.
  double fiber_measure = 0.0;

  double phi(double x) const { return shape.value(x); }
  double dphi(double x) const { return shape.slope(x); }
  double transverse_curvature(double x) const { return 0.5 * (lambda + b * dphi(x)); }
  double volume() const { return fiber_measure * x_max; }
  double transverse_area() const;
};

ToricSurfaceMetric attach_metric(const MomentumProfile& profile, const ReebVector& xi);

}  // namespace reebflow
