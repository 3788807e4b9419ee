#pragma once

#include <variant>
#include <vector>

#include "reebflow/flow.hpp"
#include "reebflow/soliton_ode.hpp"

namespace reebflow {

/// Round S^{2n+1}: transverse Einstein with Ric^T = 2(n+1) g^T.
struct RoundSphereMetric {
  int n = 1;
};

using MetricData = std::variant<RoundSphereMetric, ToricSurfaceMetric>;

/// Basic function given as a polynomial in the momentum coordinate x. On the
/// round metric only constants are allowed.
struct BasicFunction {
  std::vector<double> coeffs;  // f(x) = sum_k coeffs[k] x^k

  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;
  bool is_constant() const;
};

struct EntropyDatum {
  MetricData metric;
  BasicFunction f;
  int n = 1;
};

/// Which sign of the soliton potential enters the W functional. With the
/// momentum ODE written as Ric^T - 4 g^T = Hess(b x), the Perelman form
/// Ric^T + Hess f = 4 g^T needs f = -b x.
enum class PotentialSign { perelman, lie_derivative };

struct EntropyOptions {
  int quad_points = 64;   // Gauss-Legendre nodes on [0, x_max]
  int grid_points = 201;  // residual grid
};

double metric_volume(const MetricData& metric);

/// int_M e^{-f} dv_g
double normalization_mass(const EntropyDatum& datum, const EntropyOptions& opts = {});

/// Shifts the constant term of f so that int_M e^{-f} dv_g = 1.
EntropyDatum normalize(EntropyDatum datum, const EntropyOptions& opts = {});

/// Round sphere with the normalized constant f = log Vol(S^{2n+1}).
EntropyDatum round_datum(int n);

/// Soliton metric attached at the profile's own Reeb vector with f = -+ b x,
/// normalized.
EntropyDatum soliton_datum(const MomentumProfile& profile,
                           PotentialSign sign = PotentialSign::perelman,
                           const EntropyOptions& opts = {});

/// W(g, f) = int_M e^{-f} (R + |grad f|^2 + 4(n+1) f) dv_g with R = R^T - 2n.
double w_link(const EntropyDatum& datum, const EntropyOptions& opts = {});

/// W on the cone C(M), from radial quadrature of e^{-r^2/2} r^m against the
/// link integrals, using dV_X = 2(n+1) r^{2n+1} dr dv_g.
double w_cone(const EntropyDatum& datum, const EntropyOptions& opts = {});

/// (2n+2) 2^{n-1} (n-1)!
double cone_link_ratio(int n);

/// int_0^inf e^{-r^2/2} r^{2k+1} dr = 2^k k!
double gaussian_moment(int k);

/// int_0^inf e^{-r^2/2} r^m dr by adaptive quadrature (m >= 0).
double radial_moment_numeric(int m);

/// 2 Lap f - |grad f|^2 + R + 4(n+1) f on the residual grid.
std::vector<double> minimizer_lhs(const EntropyDatum& datum, const EntropyOptions& opts = {});

/// sup over the grid of |2 Lap f - |grad f|^2 + R + 4(n+1) f - A|.
double minimizer_residual(const EntropyDatum& datum, double a, const EntropyOptions& opts = {});

/// Least-squares constant A for the minimizer equation (the grid mean).
double best_fit_a(const EntropyDatum& datum, const EntropyOptions& opts = {});

/// V >= exp(mu / (4(n+1)) - 2n)
bool entropy_volume_bound(double volume, double mu, int n);

/// mu = W(g, f) at the normalized soliton potential.
double mu_of_soliton(const MomentumProfile& profile, const EntropyOptions& opts = {});

struct EntropyReport {
  ReebVector reeb;
  double volume;
  double w_constant;  // W at the normalized constant f
  double mu;
  double a;
  bool bound_ok;
};

EntropyReport entropy_report(double a0, double a1, const SolitonOptions& sopts = {},
                             const EntropyOptions& opts = {});

/// Fills FlowState::mu along an n = 1 trajectory with the entropy of the
/// soliton attached at each state's Reeb vector.
void attach_soliton_entropy(FlowTrajectory& trajectory, const SolitonOptions& sopts = {},
                            const EntropyOptions& opts = {});

}  // namespace reebflow
