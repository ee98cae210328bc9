#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dnls/source.hpp"

using namespace dnls;
using std::numbers::pi;

TEST_SUITE("source") {

TEST_CASE("compact support vanishes after T0") {
  const BoxDomain d = BoxDomain::cube(1, pi, 63);
  const SourceSpec f = SourceSpec::compact_support(2.0, 3.0, ComplexField::sine_mode(d, {1}));
  CHECK(f.support_end() == 2.0);
  CHECK(f.amplitude(0.0) == 3.0);
  CHECK(f.amplitude(1.0) == doctest::Approx(0.75));
  CHECK(f.amplitude(2.0) == 0.0);
  CHECK(f.amplitude(2.0 + 1e-12) == 0.0);
  CHECK(f.evaluate(5.0).is_zero());
  CHECK(f.l2_norm(0.0) == doctest::Approx(3.0 * std::sqrt(pi / 2)).epsilon(1e-13));
}

TEST_CASE("critical decay profile") {
  const BoxDomain d = BoxDomain::cube(1, pi, 63);
  const double q = 2.5;
  const SourceSpec f = SourceSpec::critical_decay(1.0, 2.0, q, ComplexField::sine_mode(d, {1}));
  for (double t : {0.0, 0.3, 0.9}) {
    CHECK(f.amplitude(t) == doctest::Approx(2.0 * std::pow(1.0 - t, q)).epsilon(1e-14));
  }
  // c(t)^2 / (T0 - t)^{2q} is constant
  const double k0 = std::pow(f.amplitude(0.1), 2) / std::pow(0.9, 2 * q);
  const double k1 = std::pow(f.amplitude(0.7), 2) / std::pow(0.3, 2 * q);
  CHECK(k0 == doctest::Approx(k1).epsilon(1e-12));
  CHECK(f.amplitude(1.5) == 0.0);
  CHECK_THROWS(SourceSpec::critical_decay(0.0, 1.0, q, ComplexField::sine_mode(d, {1})));
  CHECK_THROWS(SourceSpec::critical_decay(1.0, 1.0, -1.0, ComplexField::sine_mode(d, {1})));
}

TEST_CASE("table interpolation") {
  const BoxDomain d = BoxDomain::cube(1, pi, 31);
  const SourceSpec f = SourceSpec::table({0.0, 1.0, 3.0}, {0.0, 2.0, 1.0}, ComplexField::sine_mode(d, {1}));
  CHECK(f.amplitude(0.5) == doctest::Approx(1.0));
  CHECK(f.amplitude(2.0) == doctest::Approx(1.5));
  CHECK(f.amplitude(3.5) == 0.0);
  CHECK(f.support_end() == 3.0);
  CHECK_THROWS(SourceSpec::table({0.0, 0.0}, {1.0, 1.0}, ComplexField::sine_mode(d, {1})));
}

TEST_CASE("time integrals against quadrature") {
  const BoxDomain d = BoxDomain::cube(1, pi, 63);
  const ComplexField phi = ComplexField::sine_mode(d, {2});
  for (const SourceSpec& f : {SourceSpec::compact_support(1.5, -2.0, phi),
                              SourceSpec::critical_decay(1.5, 0.7, 3.0, phi),
                              SourceSpec::table({0.0, 0.5, 1.5}, {1.0, -1.0, 0.0}, phi)}) {
    const int n = 300000;
    const double T = f.support_end();
    double l2 = 0.0, grad = 0.0, tv = 0.0, sup = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = T * (i + 0.5) / n;
      l2 += f.l2_norm(t) * T / n;
      grad += f.gradient_norm(t) * T / n;
      tv += std::abs(f.amplitude(T * (i + 1.0) / n) - f.amplitude(T * i / n)) * f.profile_l2();
      sup = std::max(sup, f.l2_norm(T * i / n));
    }
    CHECK(f.time_integral_l2() == doctest::Approx(l2).epsilon(1e-6));
    CHECK(f.time_integral_gradient() == doctest::Approx(grad).epsilon(1e-6));
    // the jump to zero at t = 0 counts for sources starting at a nonzero value
    CHECK(f.time_integral_derivative_l2() >= tv * (1 - 1e-6));
    CHECK(f.sup_l2() == doctest::Approx(sup).epsilon(1e-6));
  }
}

TEST_CASE("pairing and scaling") {
  const BoxDomain d = BoxDomain::cube(1, pi, 63);
  const ComplexField phi = ComplexField::sine_mode(d, {1});
  const SourceSpec f = SourceSpec::compact_support(1.0, 1.0, phi);
  // Im int f conj(i phi) = -||phi||^2
  CHECK(f.pairing(phi * Complex(0.0, 1.0), 0.0) == doctest::Approx(-pi / 2).epsilon(1e-13));
  CHECK(f.scaled(3.0).amplitude(0.5) == doctest::Approx(3.0 * f.amplitude(0.5)));
  CHECK(f.scaled(3.0).support_end() == f.support_end());
  CHECK(SourceSpec::zero().is_zero());
  CHECK(SourceSpec::zero().pairing(phi, 0.0) == 0.0);
}

}
