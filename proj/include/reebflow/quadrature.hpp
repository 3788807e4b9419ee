#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reebflow/errors.hpp"

namespace reebflow {

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre_unit(int points);

/// Node of a rule on the standard simplex, stored as the full barycentric
/// vector (u_0, ..., u_n) with sum 1.
struct SimplexNode {
  std::vector<double> u;
  double weight;
};

struct QuadSettings {
  std::string rule = "gauss";
  int points = 0;  // 0 selects the per-dimension default
  std::int64_t mc_samples = 1'000'000;
  std::uint64_t mc_seed = 20240611;
};

int default_quad_points(int n);

/// S^{2n+1} with its standard Sasaki structure. Torus-invariant integrands are
/// functions of u_i = |z_i|^2, which are uniformly distributed on the simplex,
/// so every link integral is Vol(S^{2n+1}) times a simplex average.
class WeightedSphereLink {
 public:
  static WeightedSphereLink make(int n, const QuadSettings& settings = {});

  int n() const { return n_; }
  std::span<const SimplexNode> rule() const { return rule_; }
  std::uint64_t mc_seed() const { return mc_seed_; }
  std::int64_t mc_samples() const { return mc_samples_; }
  int points_per_dim() const { return points_; }
  /// Reference total mass 2 pi^{n+1} / n!.
  double sphere_volume() const { return sphere_volume_; }

 private:
  int n_ = 1;
  int points_ = 0;
  std::vector<SimplexNode> rule_;
  std::uint64_t mc_seed_ = 0;
  std::int64_t mc_samples_ = 0;
  double sphere_volume_ = 0.0;
};

double sphere_volume(int n);

/// Integrand values above this abort with BoundaryProximity.
inline constexpr double kSingularCutoff = 1e12;

namespace detail {
[[noreturn]] void report_bad_node(std::span<const double> u, double value);
}

/// Integrates several basic integrands in one pass. `eval(u, out)` fills
/// `out` (size `count`) at the barycentric point u. Reduction order is the
/// fixed node order.
template <class Eval>
std::vector<double> integrate_basic_many(const WeightedSphereLink& link, std::size_t count,
                                         Eval&& eval) {
  std::vector<double> acc(count, 0.0);
  std::vector<double> vals(count, 0.0);
  for (const SimplexNode& node : link.rule()) {
    eval(std::span<const double>(node.u), std::span<double>(vals));
    for (std::size_t k = 0; k < count; ++k) {
      const double v = vals[k];
      if (!std::isfinite(v) || std::abs(v) > kSingularCutoff) detail::report_bad_node(node.u, v);
      acc[k] += node.weight * v;
    }
  }
  for (double& a : acc) a *= link.sphere_volume();
  return acc;
}

template <class F>
double integrate_basic(const WeightedSphereLink& link, F&& f) {
  return integrate_basic_many(link, 1, [&](std::span<const double> u, std::span<double> out) {
    out[0] = f(u);
  })[0];
}

struct McEstimate {
  double estimate;
  double std_error;
};

/// Plain Monte Carlo over uniform points of the simplex, seeded and
/// bit-reproducible. Requires samples >= 1000.
McEstimate mc_integrate(const WeightedSphereLink& link,
                        const std::function<double(std::span<const double>)>& f,
                        std::int64_t samples, std::uint64_t seed);

/// Adaptive Gauss-Legendre on [a, b]: panels are bisected until the 10- and
/// 20-point estimates agree to `rel_tol` of the running total.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-14, int max_depth = 20);

}  // namespace reebflow
