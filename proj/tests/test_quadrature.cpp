#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "reebflow/quadrature.hpp"
#include "support.hpp"

using namespace reebflow;
using std::numbers::pi;

namespace {

// Dirichlet(1,...,1) moment: E[prod u_i^k_i] = n! prod k_i! / (n + sum k_i)!
double dirichlet_moment(const std::vector<int>& k) {
  const int n = static_cast<int>(k.size()) - 1;
  double num = std::tgamma(n + 1.0);
  int total = 0;
  for (int ki : k) {
    num *= std::tgamma(ki + 1.0);
    total += ki;
  }
  return num / std::tgamma(n + total + 1.0);
}

double monomial(std::span<const double> u, const std::vector<int>& k) {
  double p = 1.0;
  for (std::size_t i = 0; i < k.size(); ++i) p *= std::pow(u[i], k[i]);
  return p;
}

}  // namespace

TEST_CASE("gauss-legendre on [0,1] is exact to degree 2p-1") {
  for (int p : {1, 2, 5, 12, 40, 128}) {
    const GaussRule g = gauss_legendre_unit(p);
    REQUIRE(g.nodes.size() == static_cast<std::size_t>(p));
    for (int deg = 0; deg <= std::min(2 * p - 1, 60); ++deg) {
      double s = 0.0;
      for (int i = 0; i < p; ++i) s += g.weights[i] * std::pow(g.nodes[i], deg);
      CHECK(std::abs(s - 1.0 / (deg + 1)) < 1e-14);
    }
    for (double x : g.nodes) CHECK((x > 0.0 && x < 1.0));
  }
  CHECK_THROWS_AS(gauss_legendre_unit(0), InvalidInput);
}

TEST_CASE("simplex rule: weights sum to one, nodes are barycentric") {
  for (int n = 1; n <= 4; ++n) {
    const auto link = WeightedSphereLink::make(n, QuadSettings{"gauss", 6});
    double w = 0.0;
    for (const SimplexNode& node : link.rule()) {
      REQUIRE(node.u.size() == static_cast<std::size_t>(n + 1));
      CHECK(std::abs(std::accumulate(node.u.begin(), node.u.end(), 0.0) - 1.0) < 1e-14);
      for (double u : node.u) CHECK(u >= 0.0);
      CHECK(node.weight > 0.0);
      w += node.weight;
    }
    CHECK(std::abs(w - 1.0) < 1e-14);
  }
}

TEST_CASE("sphere volume and constant integrand") {
  CHECK(sphere_volume(1) == doctest::Approx(2 * pi * pi));
  CHECK(sphere_volume(2) == doctest::Approx(pi * pi * pi));
  CHECK(sphere_volume(3) == doctest::Approx(std::pow(pi, 4) / 3));
  for (int n = 1; n <= 3; ++n) {
    const auto link = WeightedSphereLink::make(n);
    CHECK(testing::rel_err(integrate_basic(link, [](auto) { return 1.0; }), sphere_volume(n)) < 1e-14);
  }
}

TEST_CASE("polynomial moments match the Dirichlet closed form") {
  const std::vector<std::vector<int>> cases{
      {1, 0}, {2, 3}, {7, 1}, {1, 1, 1}, {4, 0, 2}, {2, 2, 2, 1}, {3, 0, 1, 2}};
  for (const auto& k : cases) {
    const int n = static_cast<int>(k.size()) - 1;
    const auto link = WeightedSphereLink::make(n);
    const double got = integrate_basic(link, [&](std::span<const double> u) { return monomial(u, k); });
    CHECK(testing::rel_err(got, sphere_volume(n) * dirichlet_moment(k)) < 1e-13);
  }
}

TEST_CASE("n = 1 link integrals reduce to a one-dimensional integral") {
  const auto link = WeightedSphereLink::make(1);
  auto f = [](double t) { return std::exp(t) / std::pow(0.3 * t + 1.2 * (1 - t), 2.5); };
  const double rule = integrate_basic(link, [&](std::span<const double> u) { return f(u[0]); });
  const double oracle = sphere_volume(1) * integrate_adaptive(f, 0.0, 1.0);
  CHECK(testing::rel_err(rule, oracle) < 1e-13);
}

TEST_CASE("adaptive 1-d quadrature") {
  CHECK(std::abs(integrate_adaptive([](double x) { return std::exp(-x * x); }, 0.0, 3.0) -
                 std::sqrt(pi) / 2 * std::erf(3.0)) < 1e-14);
  CHECK(testing::rel_err(integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0), 2.0 / 3.0) <
        1e-10);
  CHECK(std::abs(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, pi) - 2.0) < 1e-14);
}

TEST_CASE("monte carlo agrees with the rule and is reproducible") {
  for (int n = 1; n <= 3; ++n) {
    const auto link = WeightedSphereLink::make(n);
    auto f = [n](std::span<const double> u) {
      double s = 0.0;
      for (int i = 0; i <= n; ++i) s += (0.4 + 0.5 * i) * u[i];
      return std::pow(s, -(n + 1.0));
    };
    const double rule = integrate_basic(link, f);
    const McEstimate a = mc_integrate(link, f, 200'000, 99);
    const McEstimate b = mc_integrate(link, f, 200'000, 99);
    const McEstimate c = mc_integrate(link, f, 200'000, 100);
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_error == b.std_error);
    CHECK(a.estimate != c.estimate);
    CHECK(a.std_error > 0.0);
    CHECK(std::abs(a.estimate - rule) < 4.0 * a.std_error);
  }
  const auto link = WeightedSphereLink::make(1);
  CHECK_THROWS_AS(mc_integrate(link, [](auto) { return 1.0; }, 10, 1), InvalidInput);
}

TEST_CASE("singular and non-finite integrands are reported") {
  const auto link = WeightedSphereLink::make(1);
  CHECK_THROWS_AS(integrate_basic(link, [](std::span<const double> u) { return std::pow(1e-5 * u[0], -3.0); }),
                  BoundaryProximity);
  CHECK_THROWS_AS(integrate_basic(link, [](auto) { return NAN; }), IntegrationFailure);
}

TEST_CASE("link construction validates its settings") {
  CHECK_THROWS_AS(WeightedSphereLink::make(0), InvalidInput);
  CHECK_THROWS_AS(WeightedSphereLink::make(7), InvalidInput);
  CHECK_THROWS_AS(WeightedSphereLink::make(1, QuadSettings{"simpson"}), InvalidInput);
  CHECK_THROWS_AS(WeightedSphereLink::make(4, QuadSettings{"gauss", 1000}), InvalidInput);
  CHECK(WeightedSphereLink::make(2).points_per_dim() == default_quad_points(2));
  CHECK(WeightedSphereLink::make(2, QuadSettings{"gauss", 9}).rule().size() == 81u);
}
