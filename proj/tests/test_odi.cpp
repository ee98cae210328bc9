#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

#include "dnls/odi.hpp"

using namespace dnls::odi;

namespace {

double max_envelope_error(const OdiParams& p, double span) {
  OracleOptions o;
  o.t_end = p.T0 + span;
  const SampledTrace tr = odi_oracle(p, o);
  const OdiEnvelope e = make_envelope(p);
  double err = 0.0;
  for (std::size_t i = 0; i < tr.t.size(); ++i) err = std::max(err, std::abs(envelope_eval(e, tr.t[i]) - tr.y[i]));
  return err;
}

}  // namespace

TEST_SUITE("odi") {

TEST_CASE("closed forms in the three regimes") {
  const OdiEnvelope sub = make_envelope({0.5, 0.5, 0.0, 1.0});
  CHECK(sub.regime == Regime::sub);
  REQUIRE(sub.extinction_time);
  CHECK(*sub.extinction_time == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(envelope_eval(sub, 2.0) == 0.0);
  CHECK(envelope_eval(sub, 7.0) == 0.0);
  CHECK(envelope_eval(sub, 1.0) == doctest::Approx(0.25));

  const OdiEnvelope lin = make_envelope({1.0, 1.0, 0.0, 1.0});
  CHECK(lin.regime == Regime::linear);
  CHECK_FALSE(lin.extinction_time);
  CHECK(envelope_eval(lin, 1.0) == doctest::Approx(0.13533528323661269189).epsilon(1e-15));

  const OdiEnvelope sup = make_envelope({0.5, 2.0, 0.0, 1.0});
  CHECK(sup.regime == Regime::super);
  for (double t : {0.0, 1.0, 3.5, 10.0}) CHECK(envelope_eval(sup, t) == doctest::Approx(1.0 / (1.0 + t)).epsilon(1e-14));
  CHECK_THROWS_AS(envelope_eval(sup, -1.0), std::domain_error);
}

TEST_CASE("extinction time") {
  CHECK(extinction_time_sub({1.0, 0.5, 3.0, 0.0}) == 3.0);
  CHECK(extinction_time_sub({0.5, 0.5, 0.0, 1.0}) == doctest::Approx(2.0));
  const double t1 = extinction_time_sub({0.7, 0.3, 1.0, 2.0});
  const double t2 = extinction_time_sub({1.4, 0.3, 1.0, 2.0});
  CHECK(t2 - 1.0 == doctest::Approx((t1 - 1.0) / 2.0).epsilon(1e-14));
  CHECK_THROWS(extinction_time_sub({1.0, 1.0, 0.0, 1.0}));
}

TEST_CASE("ystar and xstar") {
  CHECK(ystar(1.0, 0.5) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(xstar(1.0, 0.5, 4.0) == doctest::Approx(1.0).epsilon(1e-15));
  // x* maximizes the profit function with maximum y*
  for (auto [alpha, delta, T0] : {std::tuple{1.0, 0.5, 4.0}, {0.3, 0.8, 2.0}, {2.0, 0.6, 0.5}}) {
    const double xs = xstar(alpha, delta, T0);
    double best = -1.0, arg = 0.0;
    const double hi = std::pow(alpha * (1 - delta) * T0, 1.0 / (1 - delta));
    for (int i = 0; i <= 20000; ++i) {
      const double x = hi * i / 20000.0;
      const double v = comparison_profit(alpha, delta, T0, x);
      if (v > best) best = v, arg = x;
    }
    CHECK(arg == doctest::Approx(xs).epsilon(1e-3));
    CHECK(comparison_profit(alpha, delta, T0, xs) == doctest::Approx(ystar(alpha, delta)).epsilon(1e-12));
    CHECK(best <= ystar(alpha, delta) * (1 + 1e-12));
  }
}

TEST_CASE("RK4 oracle") {
  OracleOptions o;
  o.t_end = 5.0;
  const SampledTrace lin = odi_oracle({1.0, 1.0, 0.0, 1.0}, o);
  for (std::size_t i = 0; i < lin.t.size(); ++i) CHECK(std::abs(lin.y[i] - std::exp(-2.0 * lin.t[i])) < 1e-8);

  const SampledTrace sub = odi_oracle({0.5, 0.5, 0.0, 1.0}, o);
  const auto z = first_zero(sub);
  REQUIRE(z);
  CHECK(std::abs(*z - 2.0) < 1e-5);

  o.t_end = 10.0;
  const SampledTrace sup = odi_oracle({0.5, 2.0, 0.0, 1.0}, o);
  CHECK(std::abs(sup.y.back() - 1.0 / 11.0) < 1e-6);
  CHECK_FALSE(first_zero(sup));
}

TEST_CASE("envelopes match the oracle on random draws") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ua(0.2, 2.0), uy(0.1, 3.0), ut(0.0, 2.0);
  std::uniform_real_distribution<double> dsub(0.1, 0.9), dsup(1.1, 3.0);
  for (int i = 0; i < 10; ++i) {
    CHECK(max_envelope_error({ua(rng), dsub(rng), ut(rng), uy(rng)}, 10.0) < 1e-5);
    CHECK(max_envelope_error({ua(rng), 1.0, ut(rng), uy(rng)}, 10.0) < 1e-5);
    CHECK(max_envelope_error({ua(rng), dsup(rng), ut(rng), uy(rng)}, 10.0) < 1e-5);
  }
}

TEST_CASE("forced extinction certificate") {
  const OdiParams p{1.0, 0.5, 4.0, 0.0};
  SampledTrace zero{{0.0, 1.0, 4.0, 5.0}, {0.0, 0.0, 0.0, 0.0}};
  CHECK(forced_extinction_certificate(zero, p).pass());

  SampledTrace z;
  for (int i = 0; i <= 100; ++i) {
    const double t = 5.0 * i / 100;
    z.t.push_back(t);
    z.y.push_back(comparison_function(1.0, 0.5, 4.0, t));
  }
  const CertificateVerdict v = forced_extinction_certificate(z, p);
  CHECK(v.pass());
  CHECK(v.comparison_margin == doctest::Approx(0.0));
  CHECK(v.initial_condition_ok);
  CHECK(comparison_function(1.0, 0.5, 4.0, 0.0) == doctest::Approx(xstar(1.0, 0.5, 4.0)));

  // the extremal forced problem, solved by RK4 from y(0) = x*
  for (auto [alpha, delta, T0] : {std::tuple{1.0, 0.5, 4.0}, {0.5, 0.75, 2.0}}) {
    OracleOptions o;
    o.decay_factor = 1.0;
    o.forcing = [=](double t) { return forced_rhs_bound(alpha, delta, T0, t); };
    o.t_end = T0 + 1.0;
    const OdiParams q{alpha, delta, 0.0, xstar(alpha, delta, T0)};
    const SampledTrace tr = odi_oracle(q, o);
    const CertificateVerdict c = forced_extinction_certificate(tr, {alpha, delta, T0, 0.0}, 1e-6, 1e-6);
    CHECK(c.pass());
    const auto fz = first_zero(tr);
    REQUIRE(fz);
    CHECK(*fz <= T0 + 1e-2);
  }

  SampledTrace over = z;
  over.y[10] += 0.1;
  CHECK_FALSE(forced_extinction_certificate(over, p).pass());
  SampledTrace late = z;
  late.y.back() = 1e-3;
  CHECK_FALSE(forced_extinction_certificate(late, p).extinct_after_T0);
}

TEST_CASE("exponent algebra") {
  for (double m = 0.05; m < 0.96; m += 0.05) {
    const double d1 = delta_exponent(1, m, 1);
    CHECK(d1 == doctest::Approx((3.0 + m) / 4.0).epsilon(1e-15));
    CHECK((2 * d1 - 1) / (1 - d1) == doctest::Approx(2 * (1 + m) / (1 - m)).epsilon(1e-13));
    const double d3 = delta_exponent(3, m, 2);
    CHECK((2 * d3 - 1) / (1 - d3) == doctest::Approx(2 * (3 + m) / (1 - m)).epsilon(1e-13));
    for (int N = 1; N <= 3; ++N) {
      const int ell = default_ell(N);
      CHECK(2 * ell - N >= 1);
      const double d = delta_exponent(N, m, ell);
      CHECK(d > 0.5);
      CHECK(d < 1.0);
      CHECK(delta_identities_check(N, m, ell));
    }
  }
  for (int N = 1; N <= 3; ++N) CHECK(delta_exponent(N, 1.0, default_ell(N)) == doctest::Approx(1.0));
  CHECK(default_ell(1) == 1);
  CHECK(default_ell(2) == 2);
  CHECK(default_ell(3) == 2);
}

TEST_CASE("epsilon star") {
  CHECK(epsilon_star(1.0, 1.0, 0.75) == doctest::Approx(0.012457715459165616009).epsilon(1e-14));
  CHECK(epsilon_star(2.0, 1.0, 0.75) > epsilon_star(1.0, 1.0, 0.75));
  CHECK(epsilon_star(1.0, 2.0, 0.75) < epsilon_star(1.0, 1.0, 0.75));
  CHECK_THROWS(epsilon_star(1.0, 1.0, 0.5));
  CHECK_THROWS(epsilon_star(1.0, 1.0, 1.0));
}

}
