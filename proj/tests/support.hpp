#pragma once

#include <random>
#include <vector>

#include "reebflow/reeb_cone.hpp"

namespace testing {

// Random interior slice point with entries drawn from [lo, hi] before rescaling.
inline reebflow::ReebVector random_slice_point(std::mt19937_64& rng, int n, double lo = 0.2,
                                               double hi = 3.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> a(n + 1);
  for (double& v : a) v = d(rng);
  return reebflow::normalize_to_slice(reebflow::ReebVector(a));
}

inline reebflow::TangentVector random_direction(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> d;
  std::vector<double> y(n + 1);
  for (double& v : y) v = d(rng);
  return reebflow::project_tangent(y);
}

inline reebflow::ReebVector shifted(const reebflow::ReebVector& xi, std::span<const double> y, double h) {
  std::vector<double> a(xi.coeffs().begin(), xi.coeffs().end());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += h * y[i];
  return reebflow::ReebVector(a);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace testing
