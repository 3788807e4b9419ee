#include <doctest.h>

#include <cmath>
#include <numbers>

#include "reebflow/entropy.hpp"
#include "support.hpp"

using namespace reebflow;
using std::numbers::pi;

TEST_CASE("gaussian moments") {
  for (int k = 0; k <= 8; ++k) {
    CAPTURE(k);
    const double closed = gaussian_moment(k);
    CHECK(closed == std::ldexp(std::tgamma(k + 1.0), k));
    CHECK(testing::rel_err(radial_moment_numeric(2 * k + 1), closed) < 1e-10);
  }
  // even powers: 2^{(m-1)/2} Gamma((m+1)/2)
  for (int m : {0, 2, 4, 6}) {
    const double want = std::pow(2.0, (m - 1) / 2.0) * std::tgamma((m + 1) / 2.0);
    CHECK(testing::rel_err(radial_moment_numeric(m), want) < 1e-10);
  }
  CHECK_THROWS_AS(gaussian_moment(-1), InvalidInput);
}

TEST_CASE("round sphere entropy") {
  const EntropyDatum d = round_datum(1);
  CHECK(normalization_mass(d) == doctest::Approx(1.0).epsilon(1e-14));
  const double w = w_link(d);
  CHECK(w == doctest::Approx(6.0 + 8.0 * std::log(2 * pi * pi)).epsilon(1e-14));
  CHECK(entropy_volume_bound(2 * pi * pi, w, 1));
  // the minimizer equation holds with A = W
  CHECK(minimizer_residual(d, w) < 1e-12);
  CHECK(best_fit_a(d) == doctest::Approx(w));
}

TEST_CASE("cone to link proportionality") {
  CHECK(cone_link_ratio(1) == 4.0);
  CHECK(cone_link_ratio(2) == 12.0);
  for (int n = 1; n <= 2; ++n) {
    const EntropyDatum d = round_datum(n);
    CHECK(std::abs(w_cone(d) / w_link(d) - cone_link_ratio(n)) < 1e-8);
  }
  for (double r : {1.5, 3.0}) {
    const EntropyDatum d = soliton_datum(solve_soliton(1.0, r));
    CHECK(std::abs(w_cone(d) / w_link(d) - 4.0) < 1e-8);
  }
}

TEST_CASE("soliton potential solves the minimizer equation") {
  for (double r : {1.0, 1.3, 2.0, 4.0}) {
    CAPTURE(r);
    const MomentumProfile p = solve_soliton(1.0, r);
    const EntropyDatum d = soliton_datum(p);
    CHECK(normalization_mass(d) == doctest::Approx(1.0).epsilon(1e-12));
    const double a = best_fit_a(d);
    CHECK(minimizer_residual(d, a) < 1e-8);
    CHECK(testing::rel_err(a, w_link(d)) < 1e-10);
    if (r > 1.0) {
      // the opposite sign convention does not solve it
      const EntropyDatum wrong = soliton_datum(p, PotentialSign::lie_derivative);
      CHECK(minimizer_residual(wrong, best_fit_a(wrong)) > 1e-3);
    }
  }
}

TEST_CASE("mu is at most W of the constant function") {
  for (double r : {1.5, 2.0, 4.0}) {
    const EntropyReport e = entropy_report(1.0, r);
    CHECK(e.mu <= e.w_constant + 1e-10);
    CHECK(e.mu == doctest::Approx(e.a));
  }
}

TEST_CASE("entropy volume bound holds across the sweep") {
  for (double r = 1.0; r <= 4.0; r += 0.25) {
    const EntropyReport e = entropy_report(1.0, r);
    CHECK(e.bound_ok);
    CHECK(e.volume >= std::exp(e.mu / 8.0 - 2.0));
  }
}

TEST_CASE("mu peaks at the Einstein point and increases along the flow") {
  const double mu1 = entropy_report(1.0, 1.0).mu;
  CHECK(entropy_report(1.0, 2.0).mu < mu1);
  CHECK(entropy_report(2.0, 1.0).mu < mu1);

  const auto link = WeightedSphereLink::make(1);
  FlowTrajectory traj = run_flow(link, ReebVector{0.5, 1.5});
  attach_soliton_entropy(traj);
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    REQUIRE(traj.states[i].mu.has_value());
    CHECK(*traj.states[i].mu - *traj.states[i - 1].mu >= -1e-8);
  }
  CHECK(*traj.states.back().mu == doctest::Approx(mu1).epsilon(1e-8));
}

TEST_CASE("basic function polynomial") {
  const BasicFunction f{{1.0, -2.0, 3.0}};
  CHECK(f.value(2.0) == 9.0);
  CHECK(f.d1(2.0) == 10.0);
  CHECK(f.d2(2.0) == 6.0);
  CHECK_FALSE(f.is_constant());
  CHECK(BasicFunction{{4.0}}.is_constant());
}

TEST_CASE("entropy inputs are validated") {
  EntropyDatum d = round_datum(1);
  d.f.coeffs[0] += 1.0;  // no longer normalized
  CHECK_THROWS_AS(w_link(d), InvalidInput);
  EntropyDatum e = round_datum(1);
  e.f.coeffs.push_back(1.0);  // non-constant on the round metric
  CHECK_THROWS_AS(normalization_mass(e), InvalidInput);
  const auto link = WeightedSphereLink::make(2);
  FlowTrajectory traj = run_flow(link, ReebVector{0.5, 1.0, 1.5}, FlowOptions{0.01, 1e-8, 0.02});
  CHECK_THROWS_AS(attach_soliton_entropy(traj), InvalidInput);
}
