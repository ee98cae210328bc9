#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dnls/spectral_grid.hpp"

namespace dnls {

enum class SourceKind { zero, compact_support, critical_decay, table };

const char* to_string(SourceKind kind);

/// Separable forcing f(t, x) = c(t) phi(x) with a fixed spatial profile phi.
///
///   compact_support: c(t) = A (1 - t/T0)_+^2
///   critical_decay:  c(t) = A (T0 - t)_+^q
///   table:           piecewise-linear c through (t_i, c_i), 0 outside [t_0, t_last]
///
/// All kinds vanish for t > support_end().
class SourceSpec {
 public:
  SourceSpec() = default;

  static SourceSpec zero() { return {}; }
  static SourceSpec compact_support(double T0, double amplitude, ComplexField profile);
  static SourceSpec critical_decay(double T0, double amplitude, double exponent,
                                   ComplexField profile);
  static SourceSpec table(std::vector<double> times, std::vector<double> amplitudes,
                          ComplexField profile);

  SourceKind kind() const { return kind_; }
  bool is_zero() const { return kind_ == SourceKind::zero || amplitude_ == 0.0; }
  double T0() const { return T0_; }
  double amplitude_scale() const { return amplitude_; }
  double exponent() const { return exponent_; }
  const std::vector<double>& table_times() const { return times_; }
  const std::vector<double>& table_values() const { return values_; }
  const std::optional<ComplexField>& profile() const { return profile_; }

  /// f vanishes for every t > support_end(); 0 for the zero source.
  double support_end() const;

  /// c(t).
  double amplitude(double t) const;

  /// Same source with c multiplied by factor.
  SourceSpec scaled(double factor) const;

  double l2_norm(double t) const { return std::abs(amplitude(t)) * profile_l2_; }
  double gradient_norm(double t) const { return std::abs(amplitude(t)) * profile_grad_; }
  double profile_l2() const { return profile_l2_; }
  double profile_gradient() const { return profile_grad_; }

  /// int_0^inf ||f(t)||_{L^2} dt.
  double time_integral_l2() const;
  /// int_0^inf ||grad f(t)||_{L^2} dt.
  double time_integral_gradient() const;
  /// int_0^inf ||f'(t)||_{L^2} dt (total variation of c times ||phi||).
  double time_integral_derivative_l2() const;
  /// sup_t ||f(t)||_{L^2}.
  double sup_l2() const;

  /// u += factor f(t), entrywise.
  void add_to(std::span<Complex> u, double t, Complex factor) const;

  /// Im int f(t) conj(u) dx.
  double pairing(const ComplexField& u, double t) const;

  /// f(t) as a field on the profile's grid.
  ComplexField evaluate(double t) const;

 private:
  void set_profile(ComplexField profile);

  SourceKind kind_ = SourceKind::zero;
  double T0_ = 0.0;
  double amplitude_ = 0.0;
  double exponent_ = 0.0;
  std::vector<double> times_;
  std::vector<double> values_;
  std::optional<ComplexField> profile_;
  double profile_l2_ = 0.0;
  double profile_grad_ = 0.0;
};

}  // namespace dnls
