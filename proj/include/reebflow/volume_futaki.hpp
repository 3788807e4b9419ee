#pragma once

#include <Eigen/Dense>

#include "reebflow/quadrature.hpp"
#include "reebflow/reeb_cone.hpp"

namespace reebflow {

/// Optimizer-facing calls reject Reeb vectors with min_i a_i below this.
inline constexpr double kVolumeBoundaryGuard = 1e-8;

struct VolumeReport {
  ReebVector reeb;
  double volume;
  double relative_volume;
  TangentVector grad;
  double min_pairing;
};

/// Volume of the Sasaki structure with Reeb field xi:
///   Vol(xi) = int_{S^{2n+1}} eta_0(xi)^{-(n+1)} dv_{g_0},
/// which equals the round volume at xi = (1, ..., 1).
double volume(const WeightedSphereLink& link, const ReebVector& xi);

/// 1 / prod a_i. Conjectured closed form of Vol(xi) / Vol(1); only used as a
/// cross-check against volume().
double closed_form_relative_volume(const ReebVector& xi);

/// Fut(JY) at xi, pinned so that d/dt Vol(xi + tY)|_0 = -2 Fut(JY):
///   Fut = (n+1)/2 int eta_0(Y) eta_0(xi)^{-(n+2)}.
double futaki(const WeightedSphereLink& link, const ReebVector& xi, const TangentVector& y);

/// Full (unprojected) gradient dVol/da_i = -(n+1) int u_i eta_0(xi)^{-(n+2)}.
std::vector<double> volume_partials(const WeightedSphereLink& link, const ReebVector& xi);

/// Slice-tangent gradient: g . Y = d_Y Vol for every Y with sum Y = 0.
TangentVector grad_volume(const WeightedSphereLink& link, const ReebVector& xi);

/// Hessian of Vol restricted to the slice tangent space, in the orthonormal
/// basis returned by tangent_basis(n).
Eigen::MatrixXd hessian_volume(const WeightedSphereLink& link, const ReebVector& xi);

VolumeReport volume_report(const WeightedSphereLink& link, const ReebVector& xi);

}  // namespace reebflow
