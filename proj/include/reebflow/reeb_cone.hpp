#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace reebflow {

/// Coefficients of a Reeb vector field in the standard basis of the torus Lie
/// algebra acting on C^{n+1}. All entries are finite; length is n+1 >= 2.
class ReebVector {
 public:
  ReebVector() = default;
  explicit ReebVector(std::vector<double> coeffs);
  ReebVector(std::initializer_list<double> coeffs) : ReebVector(std::vector<double>(coeffs)) {}

  std::size_t size() const { return coeffs_.size(); }
  /// Complex transverse dimension n.
  int dim() const { return static_cast<int>(coeffs_.size()) - 1; }
  double operator[](std::size_t i) const { return coeffs_[i]; }
  std::span<const double> coeffs() const { return coeffs_; }

  double min_coeff() const;

  friend bool operator==(const ReebVector&, const ReebVector&) = default;

 private:
  std::vector<double> coeffs_;
};

/// Element of the torus Lie algebra used as a variation direction.
class TangentVector {
 public:
  TangentVector() = default;
  explicit TangentVector(std::vector<double> coeffs);
  TangentVector(std::initializer_list<double> coeffs)
      : TangentVector(std::vector<double>(coeffs)) {}

  std::size_t size() const { return coeffs_.size(); }
  double operator[](std::size_t i) const { return coeffs_[i]; }
  std::span<const double> coeffs() const { return coeffs_; }

  double sum() const;
  double norm() const;
  /// Tangent to the normalization hyperplane iff the coefficients sum to zero.
  bool is_tangent(double tol = 1e-12) const;

 private:
  std::vector<double> coeffs_;
};

/// The hyperplane {c(xi) = level}. For C^{n+1} the charge functional is the
/// all-ones vector and the level is n+1.
struct HyperplaneSlice {
  double level;
  std::vector<double> charge_functional;

  static HyperplaneSlice standard(int n);

  int dim() const { return static_cast<int>(charge_functional.size()) - 1; }
  double charge(const ReebVector& xi) const;
  bool contains(const ReebVector& xi, double tol = 1e-12) const;
};

/// eta_0(xi) at the point z in C^{n+1}: sum_i a_i |z_i|^2. Rejects |z| != 1.
double contact_pairing(const ReebVector& xi, std::span<const std::complex<double>> z);

/// True iff eta_0(xi) > 0 on the whole link, i.e. min_i a_i > 0.
bool reeb_membership(const ReebVector& xi);

double normalization_charge(const ReebVector& xi);

ReebVector normalize_to_slice(const ReebVector& xi);
ReebVector normalize_to_slice(const ReebVector& xi, const HyperplaneSlice& slice);

TangentVector project_tangent(std::span<const double> y);

/// xi -> xi / lambda, the Reeb part of the homothetic transformation.
ReebVector homothetic(const ReebVector& xi, double lambda);

/// Orthonormal basis of {sum b_i = 0} in R^{n+1}, column k is the k-th
/// Helmert contrast. Returned column-major as n vectors of length n+1.
std::vector<std::vector<double>> tangent_basis(int n);

ReebVector parse_reeb(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);
std::string format_real(double v);
std::string format_reeb(std::span<const double> coeffs);

}  // namespace reebflow
