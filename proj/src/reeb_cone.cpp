#include "reebflow/reeb_cone.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "reebflow/errors.hpp"

namespace reebflow {

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw InvalidInput(std::string(what) + ": non-finite coefficient");
  }
}

}  // namespace

ReebVector::ReebVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) throw InvalidInput("Reeb vector needs at least 2 coefficients");
  require_finite(coeffs_, "Reeb vector");
}

double ReebVector::min_coeff() const { return *std::min_element(coeffs_.begin(), coeffs_.end()); }

TangentVector::TangentVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) throw InvalidInput("tangent vector needs at least 2 coefficients");
  require_finite(coeffs_, "tangent vector");
}

double TangentVector::sum() const { return std::accumulate(coeffs_.begin(), coeffs_.end(), 0.0); }

double TangentVector::norm() const {
  double s = 0.0;
  for (double b : coeffs_) s += b * b;
  return std::sqrt(s);
}

bool TangentVector::is_tangent(double tol) const { return std::abs(sum()) <= tol; }

HyperplaneSlice HyperplaneSlice::standard(int n) {
  if (n < 1) throw InvalidInput("slice dimension must be >= 1");
  return {static_cast<double>(n + 1), std::vector<double>(static_cast<std::size_t>(n + 1), 1.0)};
}

double HyperplaneSlice::charge(const ReebVector& xi) const {
  if (xi.size() != charge_functional.size()) throw InvalidInput("slice/Reeb dimension mismatch");
  double c = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) c += charge_functional[i] * xi[i];
  return c;
}

bool HyperplaneSlice::contains(const ReebVector& xi, double tol) const {
  return std::abs(charge(xi) - level) <= tol;
}

double contact_pairing(const ReebVector& xi, std::span<const std::complex<double>> z) {
  if (z.size() != xi.size()) throw InvalidInput("point dimension does not match Reeb vector");
  double norm2 = 0.0;
  double pairing = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double m = std::norm(z[i]);
    norm2 += m;
    pairing += xi[i] * m;
  }
  if (std::abs(norm2 - 1.0) > 1e-12) throw InvalidInput("point is not on the unit sphere");
  return pairing;
}

bool reeb_membership(const ReebVector& xi) { return xi.min_coeff() > 0.0; }

double normalization_charge(const ReebVector& xi) {
  return std::accumulate(xi.coeffs().begin(), xi.coeffs().end(), 0.0);
}

ReebVector normalize_to_slice(const ReebVector& xi) {
  return normalize_to_slice(xi, HyperplaneSlice::standard(xi.dim()));
}

ReebVector normalize_to_slice(const ReebVector& xi, const HyperplaneSlice& slice) {
  if (!reeb_membership(xi)) throw InvalidInput("normalize_to_slice: vector is not in the Reeb cone");
  const double c = slice.charge(xi);
  if (!(c > 0.0)) throw InvalidInput("normalize_to_slice: nonpositive charge, ray misses the slice");
  const double scale = slice.level / c;
  std::vector<double> out(xi.coeffs().begin(), xi.coeffs().end());
  for (double& a : out) a *= scale;
  return ReebVector(std::move(out));
}

TangentVector project_tangent(std::span<const double> y) {
  if (y.size() < 2) throw InvalidInput("project_tangent: need at least 2 coefficients");
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  std::vector<double> out(y.begin(), y.end());
  for (double& b : out) b -= mean;
  return TangentVector(std::move(out));
}

ReebVector homothetic(const ReebVector& xi, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidInput("homothetic: lambda must be > 0");
  std::vector<double> out(xi.coeffs().begin(), xi.coeffs().end());
  for (double& a : out) a /= lambda;
  return ReebVector(std::move(out));
}

std::vector<std::vector<double>> tangent_basis(int n) {
  std::vector<std::vector<double>> basis;
  for (int k = 1; k <= n; ++k) {
    std::vector<double> q(static_cast<std::size_t>(n + 1), 0.0);
    const double s = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) q[i] = s;
    q[k] = -k * s;
    basis.push_back(std::move(q));
  }
  return basis;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw InvalidInput("malformed number '" + std::string(tok) + "'");
    }
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

ReebVector parse_reeb(std::string_view text) { return ReebVector(parse_real_list(text)); }

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_reeb(std::span<const double> coeffs) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out += ',';
    out += format_real(coeffs[i]);
  }
  return out;
}

}  // namespace reebflow
