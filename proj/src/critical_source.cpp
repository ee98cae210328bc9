#include "dnls/critical_source.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dnls/odi.hpp"

namespace dnls {

double apriori_hl_bound(const ComplexField& u0, const DampingCoefficient& a, const SourceSpec& f,
                        int ell) {
  const SpectralNorms n0 = spectral_norms(u0);
  const double L = n0.l2 + f.time_integral_l2();
  const double G = n0.gradient + f.time_integral_gradient();
  if (ell == 1) return std::hypot(L, G);
  if (ell != 2) throw std::domain_error("apriori_hl_bound: only l = 1, 2 supported");

  ComplexField r = laplacian_apply(u0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += a.a() * g_apply(u0[i], a.m());
  if (!f.is_zero()) f.add_to(r.values(), 0.0, -1.0);
  const double vol = u0.domain().volume();
  const double D = norm_l2(r) + f.time_integral_derivative_l2() +
                   std::abs(a.a()) * std::pow(vol, (1.0 - a.m()) / 2.0) * std::pow(L, a.m()) +
                   f.sup_l2();
  return std::sqrt(L * L + 2.0 * std::min(G * G, L * D) + D * D);
}

double critical_decay_bound(const CriticalSourceDesign& d, int N, double t) {
  const double r = d.T0 - t;
  if (r <= 0.0) return 0.0;
  const double twice_ell = 2.0 * d.ell;
  return d.epsilon_star * std::pow(d.sup_bound, -2.0 * N / (twice_ell - N)) *
         std::pow(r, (2.0 * d.delta - 1.0) / (1.0 - d.delta));
}

namespace {

struct DesignContext {
  const ModelParams& p;
  double T0;
  int ell;
  int N;
  double delta;
  double eps_star;
  double exponent;
  ComplexField phi;

  double amplitude_for(double S) const {
    return std::exp(0.5 * std::log(eps_star) - N / (2.0 * ell - N) * std::log(S));
  }
  SourceSpec source_for(double S) const {
    return SourceSpec::critical_decay(T0, amplitude_for(S), exponent, phi);
  }
  double smallness_rhs(double c_gn) const {
    return p.damping.im() / c_gn * delta * (1.0 - delta) * T0;
  }

  /// Smallest S with S >= apriori(u0, f(S)); the map is decreasing in S.
  double fixed_point(const ComplexField& u0) const {
    auto excess = [&](double S) {
      return S - apriori_hl_bound(u0, p.damping, source_for(S), ell);
    };
    const double base = apriori_hl_bound(u0, p.damping, SourceSpec::zero(), ell);
    double lo = base > 0.0 ? base : 1e-30;
    double hi = std::max(lo, 1.0);
    while (excess(hi) <= 0.0) {
      hi *= 2.0;
      if (!std::isfinite(hi)) throw std::domain_error("design_critical_source: no fixed point");
    }
    if (excess(lo) > 0.0) return lo;
    for (int i = 0; i < 200; ++i) {
      const double mid = std::sqrt(lo * hi);
      if (mid <= lo || mid >= hi) break;
      (excess(mid) > 0.0 ? hi : lo) = mid;
    }
    return hi;
  }
};

}  // namespace

CriticalSourceDesign design_critical_source(const ComplexField& u0, const ModelParams& p,
                                            double T0, double c_gn, int ell,
                                            const std::optional<ComplexField>& profile) {
  const int N = p.domain.dims();
  const double m = p.m();
  if (!(m < 1.0)) throw std::domain_error("design_critical_source: requires m < 1");
  if (2 * ell <= N) throw std::domain_error("design_critical_source: requires 2l > N");
  if (!(T0 > 0.0)) throw std::domain_error("design_critical_source: T0 must be > 0");
  if (!(c_gn > 0.0)) throw std::domain_error("design_critical_source: C_GN must be > 0");
  require_same_domain(u0.domain(), p.domain);

  ComplexField phi = profile ? *profile
                     : u0.is_zero() ? ComplexField::sine_mode(p.domain, std::vector<int>(N, 1))
                                    : u0;
  require_same_domain(phi.domain(), p.domain);
  const double phi_norm = norm_l2(phi);
  if (!(phi_norm > 0.0)) throw std::domain_error("design_critical_source: zero profile");
  phi *= 1.0 / phi_norm;

  const double delta = odi::delta_exponent(N, m, ell);
  DesignContext ctx{p,     T0,    ell, N, delta, odi::epsilon_star(p.damping.im(), c_gn, delta),
                    (2.0 * delta - 1.0) / (2.0 * (1.0 - delta)), std::move(phi)};

  const double rhs = ctx.smallness_rhs(c_gn);
  auto passes = [&](const ComplexField& u) {
    return std::pow(ctx.fixed_point(u), 1.0 - m) <= rhs;
  };

  const double S = ctx.fixed_point(u0);
  const double lhs = std::pow(S, 1.0 - m);
  if (!(lhs <= rhs)) {
    double lo = 0.0, hi = 1.0;
    if (!passes(0.0 * u0)) {
      throw SmallnessViolation(
          "smallness condition fails even for u0 = 0; increase T0", 0.0);
    }
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (passes(mid * u0) ? lo : hi) = mid;
    }
    std::ostringstream msg;
    msg << "smallness condition violated: S^(1-m) = " << lhs << " > " << rhs
        << "; rescale u0 by at most " << lo;
    throw SmallnessViolation(msg.str(), lo);
  }

  CriticalSourceDesign d;
  d.source = ctx.source_for(S);
  d.T0 = T0;
  d.ell = ell;
  d.delta = delta;
  d.c_gn = c_gn;
  d.epsilon_star = ctx.eps_star;
  d.sup_bound = S;
  d.smallness_lhs = lhs;
  d.smallness_rhs = rhs;
  d.amplitude = ctx.amplitude_for(S);
  d.exponent = ctx.exponent;
  return d;
}

SourcePrecheck check_critical_preconditions(const ComplexField& u0, const ModelParams& p,
                                            double T0, double c_gn, int ell, int samples) {
  const int N = p.domain.dims();
  const double m = p.m();
  if (!(m < 1.0)) throw std::domain_error("check_critical_preconditions: requires m < 1");
  if (2 * ell <= N) throw std::domain_error("check_critical_preconditions: requires 2l > N");

  SourcePrecheck out;
  CriticalSourceDesign d;
  d.T0 = T0;
  d.ell = ell;
  d.delta = odi::delta_exponent(N, m, ell);
  d.c_gn = c_gn;
  d.epsilon_star = odi::epsilon_star(p.damping.im(), c_gn, d.delta);
  d.sup_bound = apriori_hl_bound(u0, p.damping, p.source, ell);

  out.sup_bound = d.sup_bound;
  out.smallness_lhs = std::pow(d.sup_bound, 1.0 - m);
  out.smallness_rhs = p.damping.im() / c_gn * d.delta * (1.0 - d.delta) * T0;
  out.smallness_ok = out.smallness_lhs <= out.smallness_rhs;

  bool vanishes_after = p.source.is_zero() || p.source.support_end() <= T0;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = T0 * i / samples;
    const double f2 = std::pow(p.source.l2_norm(t), 2);
    const double b = critical_decay_bound(d, N, t);
    if (f2 > 0.0) worst = std::max(worst, b > 0.0 ? f2 / b : HUGE_VAL);
  }
  out.worst_decay_ratio = worst;
  out.decay_ok = vanishes_after && worst <= 1.0 + 1e-12;
  return out;
}

}  // namespace dnls
