#include "dnls/odi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dnls::odi {

void OdiParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::domain_error("odi: alpha must be > 0");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::domain_error("odi: delta must be > 0");
  if (!(y0 >= 0.0) || !std::isfinite(y0)) throw std::domain_error("odi: y0 must be >= 0");
  if (!(T0 >= 0.0) || !std::isfinite(T0)) throw std::domain_error("odi: T0 must be >= 0");
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::sub: return "sub";
    case Regime::linear: return "linear";
    case Regime::super: return "super";
  }
  return "unknown";
}

OdiEnvelope make_envelope(const OdiParams& p) {
  p.validate();
  if (p.delta < 1.0) return {Regime::sub, p, extinction_time_sub(p)};
  if (p.delta == 1.0) return {Regime::linear, p, std::nullopt};
  return {Regime::super, p, std::nullopt};
}

double envelope_eval(const OdiEnvelope& e, double t) {
  const OdiParams& p = e.params;
  if (t < p.T0) throw std::domain_error("envelope_eval: t precedes T0");
  const double s = t - p.T0;
  switch (e.regime) {
    case Regime::sub: {
      const double base = std::pow(p.y0, 1.0 - p.delta) - 2.0 * p.alpha * (1.0 - p.delta) * s;
      return base <= 0.0 ? 0.0 : std::pow(base, 1.0 / (1.0 - p.delta));
    }
    case Regime::linear:
      return p.y0 * std::exp(-2.0 * p.alpha * s);
    case Regime::super: {
      if (p.y0 == 0.0) return 0.0;
      const double d = p.delta - 1.0;
      return p.y0 / std::pow(1.0 + 2.0 * p.alpha * d * std::pow(p.y0, d) * s, 1.0 / d);
    }
  }
  return 0.0;
}

double extinction_time_sub(const OdiParams& p) {
  p.validate();
  if (!(p.delta < 1.0)) throw std::domain_error("extinction_time_sub: delta must be < 1");
  return p.T0 + std::pow(p.y0, 1.0 - p.delta) / (2.0 * p.alpha * (1.0 - p.delta));
}

namespace {

void require_unit_interval(double delta, const char* what) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error(std::string(what) + ": delta must lie in (0,1)");
  }
}

}  // namespace

double ystar(double alpha, double delta) {
  require_unit_interval(delta, "ystar");
  if (!(alpha > 0.0)) throw std::domain_error("ystar: alpha must be > 0");
  return std::pow(alpha * std::pow(delta, delta) * (1.0 - delta), 1.0 / (1.0 - delta));
}

double xstar(double alpha, double delta, double T0) {
  require_unit_interval(delta, "xstar");
  if (!(alpha > 0.0) || !(T0 > 0.0)) throw std::domain_error("xstar: alpha, T0 must be > 0");
  return std::pow(alpha * delta * (1.0 - delta) * T0, 1.0 / (1.0 - delta));
}

double forced_rhs_bound(double alpha, double delta, double T0, double t) {
  const double r = T0 - t;
  if (r <= 0.0) return 0.0;
  return ystar(alpha, delta) * std::pow(r, delta / (1.0 - delta));
}

double comparison_function(double alpha, double delta, double T0, double t) {
  const double r = T0 - t;
  if (r <= 0.0) return 0.0;
  return xstar(alpha, delta, T0) * std::pow(r / T0, 1.0 / (1.0 - delta));
}

double comparison_profit(double alpha, double delta, double T0, double x) {
  require_unit_interval(delta, "comparison_profit");
  if (x < 0.0) throw std::domain_error("comparison_profit: x must be >= 0");
  return std::pow(T0, -1.0 / (1.0 - delta)) / (1.0 - delta) * std::pow(x, delta) *
         (alpha * (1.0 - delta) * T0 - std::pow(x, 1.0 - delta));
}

CertificateVerdict forced_extinction_certificate(const SampledTrace& trace, const OdiParams& p,
                                                 double tol, double floor) {
  require_unit_interval(p.delta, "forced_extinction_certificate");
  if (trace.t.empty() || trace.t.size() != trace.y.size()) {
    throw std::domain_error("forced_extinction_certificate: empty or ragged trace");
  }
  if (trace.t.back() < p.T0) {
    throw std::domain_error("forced_extinction_certificate: trace does not reach T0");
  }
  const double x_star = xstar(p.alpha, p.delta, p.T0);
  const double scale = std::max(x_star, 1e-300);

  CertificateVerdict v;
  v.comparison_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trace.t.size(); ++i) {
    const double t = trace.t[i];
    const double y = trace.y[i];
    if (t <= p.T0) {
      v.comparison_margin =
          std::min(v.comparison_margin, comparison_function(p.alpha, p.delta, p.T0, t) - y);
    }
    if (t >= p.T0) v.max_after_T0 = std::max(v.max_after_T0, y);
  }
  v.below_comparison = v.comparison_margin >= -tol * scale;
  v.extinct_after_T0 = v.max_after_T0 <= floor;
  v.initial_condition_ok = trace.y.front() <= x_star * (1.0 + tol);
  return v;
}

double delta_exponent(int N, double m, int ell) {
  if (N < 1 || ell < 1) throw std::domain_error("delta_exponent: need N >= 1, ell >= 1");
  if (!(m > 0.0 && m <= 1.0)) throw std::domain_error("delta_exponent: m must lie in (0,1]");
  return ((2.0 * ell + N) + m * (2.0 * ell - N)) / (4.0 * ell);
}

int default_ell(int N) { return N / 2 + 1; }

namespace {

bool close_rel(double a, double b, double rel) {
  if (a == b) return true;
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

bool delta_identities_check(int N, double m, int ell) {
  const double d = delta_exponent(N, m, ell);
  const double L = ell;
  const double product = (2.0 * L - N) * (1.0 - m) * ((2.0 * L + N) + m * (2.0 * L - N)) /
                         (16.0 * L * L);
  if (!close_rel(d * (1.0 - d), product, 1e-14) &&
      std::abs(d * (1.0 - d) - product) > 1e-15) {
    return false;
  }
  if (m == 1.0) return true;
  const double lhs = (2.0 * d - 1.0) / (1.0 - d);
  const double rhs = 2.0 * (N * (1.0 - m) + 2.0 * L * m) / ((2.0 * L - N) * (1.0 - m));
  return close_rel(lhs, rhs, 1e-14);
}

double epsilon_star(double im_a, double c_gn, double delta) {
  if (!(delta > 0.5 && delta < 1.0)) throw std::domain_error("epsilon_star: delta must lie in (1/2,1)");
  if (!(im_a > 0.0) || !(c_gn > 0.0)) throw std::domain_error("epsilon_star: Im(a), C_GN must be > 0");
  const double q = 2.0 * delta - 1.0;
  return std::pow(q, -q / delta) * std::pow(im_a / c_gn * delta, 1.0 / (1.0 - delta)) *
         std::pow(1.0 - delta, q / (delta * (1.0 - delta)));
}

namespace {
constexpr double kTolRel = 1e-12;
constexpr double kTolAbs = 1e-300;
}  // namespace

SampledTrace odi_oracle(const OdiParams& p, const OracleOptions& opts) {
  p.validate();
  if (!(opts.t_end >= p.T0)) throw std::domain_error("odi_oracle: t_end precedes T0");
  const double span = opts.t_end - p.T0;
  const double h0 = opts.dt > 0.0 ? opts.dt : 1e-4 * std::max(span, 1e-12);
  const double kappa = opts.decay_factor * p.alpha;
  const double delta = p.delta;
  auto rhs = [&](double t, double y) {
    double r = -kappa * (y > 0.0 ? std::pow(y, delta) : 0.0);
    if (opts.forcing) r += opts.forcing(t);
    return r;
  };

  // One classical RK4 step; false when a stage leaves y >= 0.
  auto rk4 = [&](double t0, double y0, double h, double& y1) {
    const double k1 = rhs(t0, y0);
    const double y2 = y0 + 0.5 * h * k1;
    if (y2 < 0.0) return false;
    const double k2 = rhs(t0 + 0.5 * h, y2);
    const double y3 = y0 + 0.5 * h * k2;
    if (y3 < 0.0) return false;
    const double k3 = rhs(t0 + 0.5 * h, y3);
    const double y4 = y0 + h * k3;
    if (y4 < 0.0) return false;
    y1 = y0 + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + rhs(t0 + h, y4));
    return y1 >= 0.0;
  };

  SampledTrace out;
  out.t.push_back(p.T0);
  out.y.push_back(p.y0);
  double t = p.T0;
  double y = p.y0;
  double h = h0;
  long base_steps = 0;
  const int stride = std::max(opts.stride, 1);
  const double t_tol = 1e-15 * std::max(1.0, std::abs(opts.t_end));

  while (t < opts.t_end - t_tol) {
    const double target = std::min(p.T0 + static_cast<double>(base_steps + 1) * h0, opts.t_end);
    // Step doubling inside [t, target] with relative error control; steps
    // that leave y >= 0 are halved.
    while (t < target - t_tol) {
      h = std::min(h, target - t);
      double full = 0.0, half = 0.0, two = 0.0;
      const bool ok = rk4(t, y, h, full) && rk4(t, y, 0.5 * h, half) && rk4(t + 0.5 * h, half, 0.5 * h, two);
      const bool was_positive = y > 0.0;
      const double err = std::abs(two - full) / 15.0;
      const double bound = kTolAbs + kTolRel * std::abs(two);
      if (ok && err <= bound) {
        t += h;
        y = two;
        if (err <= bound / 32.0) h = std::min(2.0 * h, h0);
      } else if (h < 1e-14) {
        // Below resolution: the trajectory has reached zero.
        t += h;
        y = 0.0;
      } else {
        h *= 0.5;
        continue;
      }
      if (was_positive && y == 0.0) {
        out.t.push_back(t);
        out.y.push_back(y);
      }
    }
    t = target;
    ++base_steps;
    if (base_steps % stride == 0 || t >= opts.t_end - t_tol) {
      if (out.t.back() != t) {
        out.t.push_back(t);
        out.y.push_back(y);
      }
    }
  }
  return out;
}

std::optional<double> first_zero(const SampledTrace& trace) {
  for (std::size_t i = 0; i < trace.y.size(); ++i) {
    if (trace.y[i] == 0.0) return trace.t[i];
  }
  return std::nullopt;
}

}  // namespace dnls::odi
