#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "dnls/nonlinearity.hpp"
#include "test_support.hpp"

using namespace dnls;

TEST_SUITE("nonlinearity") {

TEST_CASE("g_apply reference values") {
  CHECK(g_apply(0.0, 0.5) == Complex(0.0));
  CHECK(std::abs(g_apply(1.0, 0.5) - 1.0) < 1e-15);
  CHECK(std::abs(g_apply(4.0, 0.5) - 2.0) < 1e-15);
  CHECK(std::abs(g_apply(Complex(0.0, -9.0), 0.5) - Complex(0.0, -3.0)) < 1e-15);
}

TEST_CASE("|g(z)| = |z|^m") {
  std::mt19937_64 rng(1);
  for (double m : {0.1, 0.3, 0.5, 0.77, 1.0}) {
    for (int i = 0; i < 2000; ++i) {
      const Complex z = test::random_complex(rng, 1e3);
      const double want = std::pow(std::abs(z), m);
      CHECK(std::abs(std::abs(g_apply(z, m)) - want) <= 1e-13 * want);
      // g preserves the argument
      if (std::abs(z) > 0.0) CHECK(std::abs(std::arg(g_apply(z, m)) - std::arg(z)) < 1e-12);
    }
  }
}

TEST_CASE("g_eps values") {
  CHECK(g_eps_apply(0.0, 0.5, 0.3) == Complex(0.0));
  CHECK(std::abs(g_eps_apply(1.0, 0.5, 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(g_eps_apply(1.0, 0.5, 1e-14) - 1.0) < 1e-13);
  CHECK(std::abs(g_eps_apply(1.0, 0.5, 3.0) - 0.70710678118654752440) < 1e-15);
  CHECK_THROWS_AS(RegularizationEps(0.0), std::invalid_argument);
  CHECK_THROWS_AS(RegularizationEps(1.0), std::invalid_argument);
  CHECK(std::abs(g_eps_apply(2.0, 0.5, RegularizationEps(0.5)) - 2.0 * std::pow(4.5, -0.25)) < 1e-15);
}

TEST_CASE("monotonicity gap") {
  const auto same = monotonicity_gap({0.3, -2.0}, {0.3, -2.0}, 0.4);
  CHECK(same.re == 0.0);
  CHECK(same.im == 0.0);
  const auto unit = monotonicity_gap(1.0, 0.0, 0.5);
  CHECK(unit.re == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(unit.im == doctest::Approx(0.0));

  const Complex z1{1.0, 1.0}, z2{2.0, -1.0};
  const double m = 1.0 / 3.0;
  const Complex direct = (g_apply(z1, m) - g_apply(z2, m)) * std::conj(z1 - z2);
  const auto gap = monotonicity_gap(z1, z2, m);
  CHECK(gap.re == doctest::Approx(direct.real()).epsilon(1e-14));
  CHECK(gap.im == doctest::Approx(direct.imag()).epsilon(1e-14));
  CHECK(gap.re >= 0.0);
  CHECK(2.0 * std::sqrt(m) * std::abs(gap.im) <= (1.0 - m) * gap.re);
  CHECK(monotonicity_check(z1, z2, m));
}

TEST_CASE("Hoelder bound") {
  CHECK(holder_bound_check(1.0, 0.0, 0.5));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> r(0.0, 100.0);
  for (double m : {0.1, 0.5, 0.9}) {
    for (int i = 0; i < 1000; ++i) {
      const double t = r(rng), s = r(rng);
      CHECK(std::abs(std::pow(t, m) - std::pow(s, m)) <= std::pow(std::abs(t - s), m) * (1 + 1e-12));
    }
  }
  for (double m : {0.1, 0.2, 0.5, 0.8, 1.0}) {
    int bad = 0;
    for (int i = 0; i < 10000; ++i) {
      const Complex a = test::random_complex(rng, 1e3), b = test::random_complex(rng, 1e3);
      bad += !holder_bound_check(a, b, m) + !monotonicity_check(a, b, m);
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("damping coefficient admissibility") {
  CHECK_NOTHROW(DampingCoefficient({0.0, 1.0}, 0.5));
  // boundary of the dominance condition: 2 sqrt(m) Im(a) = (1-m) |Re(a)|
  const double m = 0.25;
  const double re = 2.0 * std::sqrt(m) * 1.0 / (1.0 - m);
  CHECK(DampingCoefficient::admissible({re, 1.0}, m));
  CHECK_FALSE(DampingCoefficient::admissible({re * 1.01, 1.0}, m));
  CHECK_THROWS(DampingCoefficient({re * 1.01, 1.0}, m));
  CHECK_THROWS(DampingCoefficient({0.0, 0.0}, 0.5));
  CHECK_THROWS(DampingCoefficient({0.0, 1.0}, 0.0));
  CHECK_THROWS(DampingCoefficient({0.0, 1.0}, 1.5));
  CHECK(DampingCoefficient({100.0, 1.0}, 1.0).re() == 100.0);
  CHECK_NOTHROW(DampingCoefficient::unchecked({0.0, 0.0}, 0.5));
}

TEST_CASE("accretivity pairing") {
  const BoxDomain d = BoxDomain::cube(1, std::numbers::pi, 31);
  std::mt19937_64 rng(3);
  const ComplexField u = test::random_field(d, rng);
  CHECK(accretivity_pairing(u, u, DampingCoefficient({0.0, 1.0}, 0.5)) == 0.0);
  CHECK(accretivity_pairing(u, ComplexField(d), DampingCoefficient({0.0, 1.0}, 0.5)) >= 0.0);

  const double m = 0.3;
  const double re_edge = 2.0 * std::sqrt(m) / (1.0 - m);
  for (Complex a : {Complex(0.0, 1.0), Complex(re_edge, 1.0), Complex(-re_edge, 1.0),
                    Complex(0.5 * re_edge, 2.0)}) {
    const DampingCoefficient dc(a, m);
    for (int i = 0; i < 50; ++i) {
      const ComplexField v = test::random_field(d, rng, 3.0);
      const ComplexField w = test::random_field(d, rng, 0.01);
      const double scale = accretivity_scale(v, w, dc);
      CHECK(accretivity_pairing(v, w, dc) >= -1e-12 * scale);
    }
  }
}

TEST_CASE("pointwise damping flow") {
  const DampingCoefficient lin({0.0, 1.0}, 1.0);
  CHECK(pointwise_damping_flow(0.0, lin, 0.7) == Complex(0.0));
  CHECK(std::abs(pointwise_damping_flow(1.0, lin, 1.0) - 0.36787944117144232160) < 1e-15);

  const DampingCoefficient half({0.0, 1.0}, 0.5);
  for (double dt : {0.1, 0.5, 1.0, 1.9}) {
    const double want = std::pow(1.0 - dt / 2.0, 2.0);
    CHECK(std::abs(pointwise_damping_flow(1.0, half, dt)) == doctest::Approx(want).epsilon(1e-14));
  }
  CHECK(pointwise_damping_flow(1.0, half, 2.0) == Complex(0.0));
  CHECK(pointwise_damping_flow(1.0, half, 5.0) == Complex(0.0));
}

TEST_CASE("pointwise damping flow against RK4 on the polar system") {
  // rho' = -Im(a) rho^m, theta' = Re(a) rho^{m-1}
  const double m = 0.6;
  const Complex a{0.4, 1.3};
  const DampingCoefficient dc(a, m);
  const Complex z0 = std::polar(2.0, 0.3);
  const double T = 1.2;
  double rho = std::abs(z0), th = std::arg(z0);
  const int n = 20000;
  const double h = T / n;
  auto f = [&](double r) { return std::array<double, 2>{-a.imag() * std::pow(r, m), a.real() * std::pow(r, m - 1.0)}; };
  for (int i = 0; i < n; ++i) {
    const auto k1 = f(rho);
    const auto k2 = f(rho + 0.5 * h * k1[0]);
    const auto k3 = f(rho + 0.5 * h * k2[0]);
    const auto k4 = f(rho + h * k3[0]);
    rho += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    th += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
  }
  const Complex z = pointwise_damping_flow(z0, dc, T);
  CHECK(std::abs(z - std::polar(rho, th)) < 1e-10);
}

}
