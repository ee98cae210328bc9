#include "dnls/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <stdexcept>

namespace dnls {

namespace {

constexpr double kRelSlack = 1e-12;
constexpr double kAbsFloor = 1e-300;
constexpr double kLogFloor = 1e-300;

void require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::domain_error(std::string(what) + ": non-finite input");
  }
}

void require_exponent(double m, const char* what) {
  if (!(m > 0.0 && m <= 1.0)) {
    throw std::domain_error(std::string(what) + ": exponent m must lie in (0,1]");
  }
}

}  // namespace

DampingCoefficient::DampingCoefficient(Complex a, double m, NoCheck) : a_(a), m_(m) {
  require_finite(a, "DampingCoefficient");
  require_exponent(m, "DampingCoefficient");
}

DampingCoefficient::DampingCoefficient(Complex a, double m)
    : DampingCoefficient(a, m, NoCheck{}) {
  if (!(a.imag() > 0.0)) {
    throw std::invalid_argument("DampingCoefficient: Im(a) must be positive");
  }
  if (!admissible(a, m)) {
    throw std::invalid_argument(
        "DampingCoefficient: inadmissible (a, m), need 2 sqrt(m) Im(a) >= (1-m) |Re(a)|");
  }
}

DampingCoefficient DampingCoefficient::unchecked(Complex a, double m) {
  return DampingCoefficient(a, m, NoCheck{});
}

bool DampingCoefficient::admissible(Complex a, double m) {
  if (!(m > 0.0 && m <= 1.0) || !(a.imag() > 0.0)) return false;
  if (m == 1.0) return true;
  const double lhs = 2.0 * std::sqrt(m) * a.imag();
  const double rhs = (1.0 - m) * std::abs(a.real());
  // Equality is admissible; allow rounding when a was built on the boundary.
  return lhs >= rhs * (1.0 - kRelSlack);
}

RegularizationEps::RegularizationEps(double eps) : eps_(eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("RegularizationEps: eps must lie in (0,1)");
  }
}

Complex g_apply(Complex z, double m) {
  require_finite(z, "g_apply");
  require_exponent(m, "g_apply");
  if (z == Complex{0.0, 0.0}) return {0.0, 0.0};
  if (m == 1.0) return z;
  return std::pow(std::abs(z), m - 1.0) * z;
}

Complex g_eps_apply(Complex z, double m, double eps) {
  require_finite(z, "g_eps_apply");
  require_exponent(m, "g_eps_apply");
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::domain_error("g_eps_apply: eps must be finite and nonnegative");
  }
  if (eps == 0.0) return g_apply(z, m);
  return std::pow(std::norm(z) + eps, -(1.0 - m) / 2.0) * z;
}

Complex g_eps_apply(Complex z, double m, RegularizationEps eps) {
  return g_eps_apply(z, m, eps.value());
}

PairingParts monotonicity_gap(Complex z1, Complex z2, double m) {
  const Complex p = (g_apply(z1, m) - g_apply(z2, m)) * std::conj(z1 - z2);
  return {p.real(), p.imag()};
}

bool monotonicity_check(Complex z1, Complex z2, double m) {
  const PairingParts gap = monotonicity_gap(z1, z2, m);
  const double scale = (std::abs(g_apply(z1, m)) + std::abs(g_apply(z2, m))) *
                       (std::abs(z1) + std::abs(z2));
  const double slack = kRelSlack * scale + kAbsFloor;
  return gap.re >= -slack && 2.0 * std::sqrt(m) * std::abs(gap.im) <= (1.0 - m) * gap.re + slack;
}

bool holder_bound_check(Complex z1, Complex z2, double m) {
  const Complex g1 = g_apply(z1, m);
  const Complex g2 = g_apply(z2, m);
  const double lhs = std::abs(g1 - g2);
  const double rhs = 3.0 * std::pow(std::abs(z1 - z2), m);
  const double slack = kRelSlack * (std::abs(g1) + std::abs(g2)) + kAbsFloor;
  return lhs <= rhs + slack;
}

double accretivity_pairing(const ComplexField& u, const ComplexField& v,
                           const DampingCoefficient& a) {
  require_same_domain(u.domain(), v.domain());
  const double m = a.m();
  const Complex mia = Complex{0.0, -1.0} * a.a();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Complex d = (g_apply(u[i], m) - g_apply(v[i], m)) * std::conj(u[i] - v[i]);
    s += (mia * d).real();
  }
  return s * u.domain().cell_volume();
}

double accretivity_scale(const ComplexField& u, const ComplexField& v,
                         const DampingCoefficient& a) {
  require_same_domain(u.domain(), v.domain());
  const double m = a.m();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    s += std::abs(g_apply(u[i], m) - g_apply(v[i], m)) * std::abs(u[i] - v[i]);
  }
  return s * std::abs(a.a()) * u.domain().cell_volume();
}

Complex pointwise_damping_flow(Complex z0, const DampingCoefficient& a, double dt) {
  if (!(dt >= 0.0)) throw std::domain_error("pointwise_damping_flow: dt must be nonnegative");
  if (z0 == Complex{0.0, 0.0}) return {0.0, 0.0};
  const double m = a.m();
  if (m == 1.0) return z0 * std::exp(Complex{0.0, 1.0} * a.a() * dt);

  const double rho0 = std::abs(z0);
  const double s0 = std::pow(rho0, 1.0 - m);
  const double decay = (1.0 - m) * a.im() * dt;
  const double s = s0 - decay;
  if (s <= 0.0) return {0.0, 0.0};

  const double rho = std::pow(s, 1.0 / (1.0 - m));
  double dtheta = 0.0;
  if (a.im() != 0.0) {
    // ln(s/s0) = log1p(-decay/s0); the argument is floored on the step that
    // approaches extinction so the phase stays finite.
    const double ratio = std::max(s / s0, kLogFloor);
    const double log_ratio = ratio > 0.5 ? std::log1p(-decay / s0) : std::log(ratio);
    dtheta = -a.re() / ((1.0 - m) * a.im()) * log_ratio;
  } else {
    dtheta = a.re() * dt / s0;
  }
  return z0 * (rho / rho0) * std::polar(1.0, dtheta);
}

void apply_damping_flow(std::span<Complex> values, const DampingCoefficient& a, double dt) {
  for (auto& z : values) z = pointwise_damping_flow(z, a, dt);
}

}  // namespace dnls
