#include "reebflow/volume_futaki.hpp"

#include <cmath>

namespace reebflow {

namespace {

void check_args(const WeightedSphereLink& link, const ReebVector& xi) {
  if (xi.dim() != link.n()) throw InvalidInput("Reeb vector dimension does not match the link");
  if (!reeb_membership(xi)) throw InvalidInput("Reeb vector is not in the Reeb cone (min a_i <= 0)");
  if (xi.min_coeff() < kVolumeBoundaryGuard) {
    throw BoundaryProximity("min a_i = " + format_real(xi.min_coeff()) +
                            " is below the boundary guard");
  }
}

double pairing(const ReebVector& xi, std::span<const double> u) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += xi[i] * u[i];
  return s;
}

}  // namespace

double volume(const WeightedSphereLink& link, const ReebVector& xi) {
  check_args(link, xi);
  const double p = -(link.n() + 1.0);
  return integrate_basic(link, [&](std::span<const double> u) { return std::pow(pairing(xi, u), p); });
}

double closed_form_relative_volume(const ReebVector& xi) {
  double prod = 1.0;
  for (double a : xi.coeffs()) {
    if (!(a > 0.0)) throw InvalidInput("closed_form_relative_volume: entries must be positive");
    prod *= a;
  }
  return 1.0 / prod;
}

double futaki(const WeightedSphereLink& link, const ReebVector& xi, const TangentVector& y) {
  check_args(link, xi);
  if (y.size() != xi.size()) throw InvalidInput("futaki: direction dimension mismatch");
  if (!y.is_tangent(1e-10)) throw InvalidInput("futaki: direction is not tangent to the slice");
  const int n = link.n();
  const double p = -(n + 2.0);
  const double integral = integrate_basic(link, [&](std::span<const double> u) {
    double eta_y = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) eta_y += y[i] * u[i];
    return eta_y * std::pow(pairing(xi, u), p);
  });
  return 0.5 * (n + 1.0) * integral;
}

std::vector<double> volume_partials(const WeightedSphereLink& link, const ReebVector& xi) {
  check_args(link, xi);
  const int n = link.n();
  const double p = -(n + 2.0);
  std::vector<double> d = integrate_basic_many(
      link, xi.size(), [&](std::span<const double> u, std::span<double> out) {
        const double w = std::pow(pairing(xi, u), p);
        for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * w;
      });
  for (double& v : d) v *= -(n + 1.0);
  return d;
}

TangentVector grad_volume(const WeightedSphereLink& link, const ReebVector& xi) {
  return project_tangent(volume_partials(link, xi));
}

Eigen::MatrixXd hessian_volume(const WeightedSphereLink& link, const ReebVector& xi) {
  check_args(link, xi);
  const int n = link.n();
  const std::size_t m = xi.size();
  const double p = -(n + 3.0);
  // upper triangle of d^2 Vol / da_i da_j = (n+1)(n+2) int u_i u_j eta^{-(n+3)}
  const std::vector<double> upper =
      integrate_basic_many(link, m * (m + 1) / 2, [&](std::span<const double> u, std::span<double> out) {
        const double w = std::pow(pairing(xi, u), p);
        std::size_t k = 0;
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = i; j < m; ++j) out[k++] = u[i] * u[j] * w;
        }
      });
  Eigen::MatrixXd full(m, m);
  std::size_t k = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      full(i, j) = full(j, i) = (n + 1.0) * (n + 2.0) * upper[k++];
    }
  }
  const auto basis = tangent_basis(n);
  Eigen::MatrixXd q(m, n);
  for (int c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < m; ++r) q(r, c) = basis[c][r];
  }
  Eigen::MatrixXd h = q.transpose() * full * q;
  return 0.5 * (h + h.transpose());
}

VolumeReport volume_report(const WeightedSphereLink& link, const ReebVector& xi) {
  const double v = volume(link, xi);
  return {xi, v, v / link.sphere_volume(), grad_volume(link, xi), xi.min_coeff()};
}

}  // namespace reebflow
