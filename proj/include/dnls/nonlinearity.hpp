#pragma once

#include <span>

#include "dnls/spectral_grid.hpp"

namespace dnls {

/// Damping coefficient a and exponent m of the term a |u|^{m-1} u.
///
/// The checked constructor enforces 0 < m <= 1, Im(a) > 0 and, for m < 1,
/// the damping dominance condition 2 sqrt(m) Im(a) >= (1-m) |Re(a)| under
/// which -i a g(.) is accretive. Conservative reference models (Im(a) = 0,
/// e.g. the linear Schroedinger flow a = 0) go through unchecked().
class DampingCoefficient {
 public:
  DampingCoefficient(Complex a, double m);

  /// Only validates 0 < m <= 1 and finiteness.
  static DampingCoefficient unchecked(Complex a, double m);

  static bool admissible(Complex a, double m);

  Complex a() const { return a_; }
  double m() const { return m_; }
  double im() const { return a_.imag(); }
  double re() const { return a_.real(); }

 private:
  struct NoCheck {};
  DampingCoefficient(Complex a, double m, NoCheck);

  Complex a_;
  double m_;
};

/// epsilon in (0,1) for the regularized nonlinearity g_eps.
class RegularizationEps {
 public:
  explicit RegularizationEps(double eps);
  double value() const { return eps_; }

 private:
  double eps_;
};

/// g(z) = |z|^{m-1} z with g(0) = 0.
Complex g_apply(Complex z, double m);

/// g_eps(z) = (|z|^2 + eps)^{-(1-m)/2} z. Accepts any eps >= 0 (eps = 0 gives g).
Complex g_eps_apply(Complex z, double m, double eps);
Complex g_eps_apply(Complex z, double m, RegularizationEps eps);

struct PairingParts {
  double re = 0.0;
  double im = 0.0;
};

/// Re and Im of (g(z1) - g(z2)) conj(z1 - z2).
PairingParts monotonicity_gap(Complex z1, Complex z2, double m);

/// re >= 0 and 2 sqrt(m) |im| <= (1-m) re, with rounding slack.
bool monotonicity_check(Complex z1, Complex z2, double m);

/// |g(z1) - g(z2)| <= 3 |z1 - z2|^m, with rounding slack.
bool holder_bound_check(Complex z1, Complex z2, double m);

/// Quadrature of Re(-i a (g(u) - g(v)) conj(u - v)); nonnegative for admissible a.
double accretivity_pairing(const ComplexField& u, const ComplexField& v,
                           const DampingCoefficient& a);

/// Magnitude scale of the accretivity pairing: sum |g(u)-g(v)| |u-v| |a| dx.
double accretivity_scale(const ComplexField& u, const ComplexField& v,
                         const DampingCoefficient& a);

/// Exact solution at time dt of i z' + a |z|^{m-1} z = 0 started from z0.
///
/// The modulus follows rho' = -Im(a) rho^m and reaches exactly zero in finite
/// time when m < 1; from then on the value is 0.
Complex pointwise_damping_flow(Complex z0, const DampingCoefficient& a, double dt);

/// Applies pointwise_damping_flow to every entry.
void apply_damping_flow(std::span<Complex> values, const DampingCoefficient& a, double dt);

}  // namespace dnls
