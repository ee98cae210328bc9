#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace dnls::odi {

/// Data of the inequality y' + 2 alpha y^delta <= 0 on (T0, inf), y(T0) = y0.
struct OdiParams {
  double alpha = 1.0;
  double delta = 1.0;
  double T0 = 0.0;
  double y0 = 0.0;

  void validate() const;
};

enum class Regime { sub, linear, super };

const char* to_string(Regime regime);

/// Closed-form comparison solution of y' + 2 alpha y^delta = 0.
struct OdiEnvelope {
  Regime regime;
  OdiParams params;
  /// Present iff regime == sub.
  std::optional<double> extinction_time;
};

OdiEnvelope make_envelope(const OdiParams& p);

/// Envelope value at t >= T0. Throws std::domain_error for t < T0.
double envelope_eval(const OdiEnvelope& e, double t);

/// T0 + y0^{1-delta} / (2 alpha (1-delta)), delta < 1.
double extinction_time_sub(const OdiParams& p);

/// (alpha delta^delta (1-delta))^{1/(1-delta)}.
double ystar(double alpha, double delta);
/// (alpha delta (1-delta) T0)^{1/(1-delta)}.
double xstar(double alpha, double delta, double T0);

/// Forcing bound ystar (T0 - t)_+^{delta/(1-delta)} of the forced inequality
/// y' + alpha y^delta <= rhs.
double forced_rhs_bound(double alpha, double delta, double T0, double t);

/// z(t) = xstar T0^{-1/(1-delta)} (T0 - t)_+^{1/(1-delta)}, the extremal
/// solution of the forced inequality with equality.
double comparison_function(double alpha, double delta, double T0, double t);

/// (1-delta)^{-1} T0^{-1/(1-delta)} x^delta (alpha (1-delta) T0 - x^{1-delta});
/// its maximum over x >= 0 is ystar, attained at xstar.
double comparison_profit(double alpha, double delta, double T0, double x);

struct SampledTrace {
  std::vector<double> t;
  std::vector<double> y;
};

struct CertificateVerdict {
  bool below_comparison = false;  // y <= z on [0, T0]
  bool extinct_after_T0 = false;  // y <= floor on [T0, end]
  /// min over samples in [0,T0] of z - y (negative when violated).
  double comparison_margin = 0.0;
  double max_after_T0 = 0.0;
  bool initial_condition_ok = false;  // y(0) <= xstar
  bool pass() const { return below_comparison && extinct_after_T0; }
};

/// Checks a sampled nonnegative trace against the forced-extinction
/// comparison: y <= z on [0,T0] (within tol) and y <= floor after T0.
/// The trace must extend to T0; params use alpha/delta/T0 (y0 is ignored).
CertificateVerdict forced_extinction_certificate(const SampledTrace& trace, const OdiParams& p,
                                                 double tol = 1e-9, double floor = 1e-12);

/// ((2l+N) + m(2l-N)) / (4l).
double delta_exponent(int N, double m, int ell);

/// Both exponent identities for delta(N, m, ell) to 1e-14 relative:
/// delta(1-delta) = (2l-N)(1-m)((2l+N)+m(2l-N))/(16 l^2), and for m < 1
/// (2delta-1)/(1-delta) = 2(N(1-m) + 2lm)/((2l-N)(1-m)).
bool delta_identities_check(int N, double m, int ell);

/// [N/2] + 1.
int default_ell(int N);

/// epsilon_star of the critically decaying source bound:
/// (2d-1)^{-(2d-1)/d} (Im(a) C^{-1} d)^{1/(1-d)} (1-d)^{(2d-1)/(d(1-d))}.
double epsilon_star(double im_a, double c_gn, double delta);

struct OracleOptions {
  /// y' = -decay_factor alpha y^delta + forcing(t); 2 for the plain
  /// inequality, 1 for the forced one.
  double decay_factor = 2.0;
  std::function<double(double)> forcing;
  double t_end = 10.0;
  /// Sampling step (and largest RK4 step); 0 picks 1e-4 times the span.
  double dt = 0.0;
  /// Record every k-th base sample.
  int stride = 1;
};

/// Classical RK4 from (T0, y0) with step-doubling error control, clamped at 0.
/// Steps whose stages would go negative are halved (down to 1e-14); the time
/// at which y first reaches 0 is recorded as an extra sample.
SampledTrace odi_oracle(const OdiParams& p, const OracleOptions& opts = {});

/// First sample time with y == 0 (nullopt if none).
std::optional<double> first_zero(const SampledTrace& trace);

}  // namespace dnls::odi
