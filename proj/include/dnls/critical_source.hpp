#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "dnls/integrator.hpp"

namespace dnls {

/// Data-side bound on sup_t ||u(t)||_{H^l} for the forced problem.
///
/// l = 1: sqrt(L^2 + G^2) with L = ||u0|| + int ||f||, G = ||grad u0|| + int ||grad f||.
/// l = 2: sqrt(L^2 + 2 min(G^2, L D) + D^2) with
///        D = ||Delta u0 + a g(u0) - f(0)|| + int ||f'|| + |a| |Omega|^{(1-m)/2} L^m + sup ||f||.
/// Throws std::domain_error for other l.
double apriori_hl_bound(const ComplexField& u0, const DampingCoefficient& a, const SourceSpec& f,
                        int ell);

/// Raised when no source can satisfy the smallness condition for the given u0.
/// required_scale() is the largest factor r such that r u0 passes (0 when
/// even u0 = 0 fails, i.e. T0 must grow).
class SmallnessViolation : public std::domain_error {
 public:
  SmallnessViolation(const std::string& what, double required_scale)
      : std::domain_error(what), required_scale_(required_scale) {}
  double required_scale() const { return required_scale_; }

 private:
  double required_scale_;
};

struct CriticalSourceDesign {
  SourceSpec source;
  double T0 = 0.0;
  int ell = 1;
  double delta = 0.0;
  double c_gn = 0.0;
  double epsilon_star = 0.0;
  /// S: a-priori sup_t ||u||_{H^l} including the designed source.
  double sup_bound = 0.0;
  /// S^{1-m} <= Im(a) C^{-1} delta (1-delta) T0.
  double smallness_lhs = 0.0;
  double smallness_rhs = 0.0;
  /// c(t) = amplitude (T0 - t)_+^exponent.
  double amplitude = 0.0;
  double exponent = 0.0;
};

/// eps_star S^{-2N/(2l-N)} (T0 - t)_+^{(2 delta - 1)/(1 - delta)}.
double critical_decay_bound(const CriticalSourceDesign& d, int N, double t);

/// Builds f(t,x) = c(t) phi(x), ||phi|| = 1, whose squared norm equals the
/// critical decay bound, with S the smallest fixed point of S >= bound(u0, f(S)).
/// phi defaults to u0 / ||u0|| (the ground sine mode when u0 = 0).
/// Requires m < 1 and 2l > N; throws SmallnessViolation when the smallness
/// condition fails.
CriticalSourceDesign design_critical_source(const ComplexField& u0, const ModelParams& p,
                                            double T0, double c_gn, int ell,
                                            const std::optional<ComplexField>& profile = std::nullopt);

struct SourcePrecheck {
  double sup_bound = 0.0;
  double smallness_lhs = 0.0;
  double smallness_rhs = 0.0;
  bool smallness_ok = false;
  /// max over samples of ||f(t)||^2 / bound(t) on [0,T0); f must vanish after T0.
  double worst_decay_ratio = 0.0;
  bool decay_ok = false;
  bool pass() const { return smallness_ok && decay_ok; }
};

/// Checks the smallness and decay conditions for the source already in p.
SourcePrecheck check_critical_preconditions(const ComplexField& u0, const ModelParams& p,
                                            double T0, double c_gn, int ell, int samples = 1000);

}  // namespace dnls
