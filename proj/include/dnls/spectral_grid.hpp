#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace dnls {

using Complex = std::complex<double>;

/// Raised when two fields (or a field and a buffer) live on different grids.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Box (0,L_1) x ... x (0,L_N), N in {1,2,3}, sampled at the interior nodes
/// x_i = (i+1) L/(n+1), i = 0..n-1. Boundary nodes are implicit zeros.
class BoxDomain {
 public:
  static constexpr int kMinPoints = 8;

  BoxDomain(std::vector<double> lengths, std::vector<int> points);

  /// Same length and resolution on every axis.
  static BoxDomain cube(int dims, double length, int points);

  int dims() const { return static_cast<int>(lengths_.size()); }
  double length(int axis) const { return lengths_.at(axis); }
  int points(int axis) const { return points_.at(axis); }
  const std::vector<double>& lengths() const { return lengths_; }
  const std::vector<int>& points() const { return points_; }

  double spacing(int axis) const { return lengths_.at(axis) / (points_.at(axis) + 1); }
  double node(int axis, int i) const { return (i + 1) * spacing(axis); }
  double cell_volume() const;
  /// |Omega|.
  double volume() const;
  std::size_t size() const;

  /// Multi-index of a flat row-major position (last axis fastest).
  std::array<int, 3> unflatten(std::size_t flat) const;

  bool operator==(const BoxDomain&) const = default;

 private:
  std::vector<double> lengths_;
  std::vector<int> points_;
};

/// Complex samples of u at the interior nodes of a BoxDomain, row-major.
class ComplexField {
 public:
  explicit ComplexField(BoxDomain domain);
  ComplexField(BoxDomain domain, std::vector<Complex> values);

  /// Evaluates fn at every interior node; coordinates beyond dims() are 0.
  static ComplexField sample(const BoxDomain& domain,
                             const std::function<Complex(const std::array<double, 3>&)>& fn);

  /// Product sine mode prod_j sin(k_j pi x_j / L_j) scaled by amplitude.
  static ComplexField sine_mode(const BoxDomain& domain, const std::vector<int>& modes,
                                Complex amplitude = 1.0);

  const BoxDomain& domain() const { return domain_; }
  std::span<Complex> values() { return values_; }
  std::span<const Complex> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

  bool is_zero() const;
  bool all_finite() const;

  ComplexField& operator+=(const ComplexField& other);
  ComplexField& operator-=(const ComplexField& other);
  ComplexField& operator*=(Complex s);

  friend ComplexField operator+(ComplexField lhs, const ComplexField& rhs) { return lhs += rhs; }
  friend ComplexField operator-(ComplexField lhs, const ComplexField& rhs) { return lhs -= rhs; }
  friend ComplexField operator*(ComplexField lhs, Complex s) { return lhs *= s; }
  friend ComplexField operator*(Complex s, ComplexField rhs) { return rhs *= s; }

  bool operator==(const ComplexField&) const = default;

 private:
  BoxDomain domain_;
  std::vector<Complex> values_;
};

/// Coefficients c_k of u(x) = sum_k c_k prod_j sin(k_j pi x_j / L_j), k_j = 1..n_j.
class SpectralField {
 public:
  explicit SpectralField(BoxDomain domain);
  SpectralField(BoxDomain domain, std::vector<Complex> coeffs);

  const BoxDomain& domain() const { return domain_; }
  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  /// L^2 weight of a single coefficient: prod_j L_j/2.
  double parseval_weight() const;

 private:
  BoxDomain domain_;
  std::vector<Complex> coeffs_;
};

void require_same_domain(const BoxDomain& a, const BoxDomain& b);

SpectralField sine_transform(const ComplexField& u);
ComplexField inverse_sine_transform(const SpectralField& c);

/// In-place transforms on a raw buffer laid out like a ComplexField on domain.
void sine_transform_in_place(const BoxDomain& domain, std::span<Complex> data);
void inverse_sine_transform_in_place(const BoxDomain& domain, std::span<Complex> data);

/// Dirichlet eigenvalues lambda_k = sum_j (k_j pi / L_j)^2 in coefficient order.
const std::vector<double>& laplacian_eigenvalues(const BoxDomain& domain);

ComplexField laplacian_apply(const ComplexField& u);

/// Discrete L^2 pairing int u conj(v) dx (uniform interior cell weights).
Complex inner_product(const ComplexField& u, const ComplexField& v);

double norm_lp(const ComplexField& u, double p);
double norm_l2(const ComplexField& u);
/// ||u||_{L^{m+1}}^{m+1}, the dissipation density of the mass law.
double lp_power(const ComplexField& u, double p);

/// Full Sobolev norm: ||u||_{H^l}^2 = sum_k (1 + lambda_k)^l |c_k|^2 w.
double norm_hl(const ComplexField& u, int ell);
double norm_h1(const ComplexField& u);
double norm_h2(const ComplexField& u);

/// All spectral quantities from a single transform.
struct SpectralNorms {
  double l2 = 0.0;
  double gradient = 0.0;   // ||grad u||_{L^2}
  double laplacian = 0.0;  // ||Delta u||_{L^2}
  double h1 = 0.0;
  double h2 = 0.0;
};
SpectralNorms spectral_norms(const ComplexField& u);
SpectralNorms spectral_norms(const SpectralField& c);

/// ||v||_2^{((2l+N)+m(2l-N))/(2l)} / (||v||_{m+1}^{m+1} ||v||_{H^l}^{N(1-m)/(2l)}).
double gn_ratio(const ComplexField& v, double m, int ell);

/// ||grad u||^2 <= ||u|| ||Delta u||, evaluated in coefficient space.
bool gradient_interpolation_check(const ComplexField& u);
/// ||u|| ||Delta u|| - ||grad u||^2 (nonnegative up to rounding).
double gradient_interpolation_slack(const ComplexField& u);

}  // namespace dnls
