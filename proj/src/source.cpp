#include "dnls/source.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dnls {

const char* to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::zero: return "zero";
    case SourceKind::compact_support: return "compact_support";
    case SourceKind::critical_decay: return "critical_decay";
    case SourceKind::table: return "table";
  }
  return "unknown";
}

void SourceSpec::set_profile(ComplexField profile) {
  const SpectralNorms n = spectral_norms(profile);
  profile_l2_ = n.l2;
  profile_grad_ = n.gradient;
  profile_ = std::move(profile);
}

SourceSpec SourceSpec::compact_support(double T0, double amplitude, ComplexField profile) {
  if (!(T0 > 0.0) || !std::isfinite(amplitude)) {
    throw std::invalid_argument("compact_support source: need T0 > 0 and finite amplitude");
  }
  SourceSpec s;
  s.kind_ = SourceKind::compact_support;
  s.T0_ = T0;
  s.amplitude_ = amplitude;
  s.set_profile(std::move(profile));
  return s;
}

SourceSpec SourceSpec::critical_decay(double T0, double amplitude, double exponent,
                                      ComplexField profile) {
  if (!(T0 > 0.0) || !std::isfinite(amplitude) || !(exponent >= 0.0)) {
    throw std::invalid_argument("critical_decay source: need T0 > 0, exponent >= 0");
  }
  SourceSpec s;
  s.kind_ = SourceKind::critical_decay;
  s.T0_ = T0;
  s.amplitude_ = amplitude;
  s.exponent_ = exponent;
  s.set_profile(std::move(profile));
  return s;
}

SourceSpec SourceSpec::table(std::vector<double> times, std::vector<double> amplitudes,
                             ComplexField profile) {
  if (times.size() < 2 || times.size() != amplitudes.size()) {
    throw std::invalid_argument("table source: need >= 2 (t, c) pairs");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("table source: times must increase");
  }
  SourceSpec s;
  s.kind_ = SourceKind::table;
  s.T0_ = times.back();
  s.amplitude_ = 1.0;
  s.times_ = std::move(times);
  s.values_ = std::move(amplitudes);
  s.set_profile(std::move(profile));
  return s;
}

double SourceSpec::support_end() const { return kind_ == SourceKind::zero ? 0.0 : T0_; }

double SourceSpec::amplitude(double t) const {
  switch (kind_) {
    case SourceKind::zero:
      return 0.0;
    case SourceKind::compact_support: {
      if (t < 0.0 || t > T0_) return 0.0;
      const double r = 1.0 - t / T0_;
      return amplitude_ * r * r;
    }
    case SourceKind::critical_decay:
      if (t < 0.0 || t >= T0_) return 0.0;
      return amplitude_ * std::pow(T0_ - t, exponent_);
    case SourceKind::table: {
      if (t < times_.front() || t > times_.back()) return 0.0;
      const auto it = std::upper_bound(times_.begin(), times_.end(), t);
      if (it == times_.end()) return amplitude_ * values_.back();
      const std::size_t i = static_cast<std::size_t>(it - times_.begin());
      const double w = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
      return amplitude_ * ((1.0 - w) * values_[i - 1] + w * values_[i]);
    }
  }
  return 0.0;
}

SourceSpec SourceSpec::scaled(double factor) const {
  SourceSpec s = *this;
  s.amplitude_ *= factor;
  return s;
}

double SourceSpec::time_integral_l2() const {
  double c = 0.0;
  switch (kind_) {
    case SourceKind::zero: return 0.0;
    case SourceKind::compact_support: c = std::abs(amplitude_) * T0_ / 3.0; break;
    case SourceKind::critical_decay:
      c = std::abs(amplitude_) * std::pow(T0_, exponent_ + 1.0) / (exponent_ + 1.0);
      break;
    case SourceKind::table:
      // |c| of a piecewise-linear c; exact when no segment changes sign.
      for (std::size_t i = 1; i < times_.size(); ++i) {
        const double a = values_[i - 1], b = values_[i], h = times_[i] - times_[i - 1];
        if (a * b >= 0.0) {
          c += 0.5 * h * (std::abs(a) + std::abs(b));
        } else {
          c += 0.5 * h * (a * a + b * b) / (std::abs(a) + std::abs(b));
        }
      }
      c *= std::abs(amplitude_);
      break;
  }
  return c * profile_l2_;
}

double SourceSpec::time_integral_gradient() const {
  if (profile_l2_ == 0.0) return 0.0;
  return time_integral_l2() / profile_l2_ * profile_grad_;
}

double SourceSpec::time_integral_derivative_l2() const {
  double tv = 0.0;
  switch (kind_) {
    case SourceKind::zero: return 0.0;
    case SourceKind::compact_support: tv = std::abs(amplitude_); break;
    case SourceKind::critical_decay: tv = std::abs(amplitude_) * std::pow(T0_, exponent_); break;
    case SourceKind::table:
      tv = std::abs(values_.front()) + std::abs(values_.back());
      for (std::size_t i = 1; i < values_.size(); ++i) tv += std::abs(values_[i] - values_[i - 1]);
      if (times_.front() <= 0.0) tv -= std::abs(values_.front());
      tv *= std::abs(amplitude_);
      break;
  }
  return tv * profile_l2_;
}

double SourceSpec::sup_l2() const {
  double c = 0.0;
  switch (kind_) {
    case SourceKind::zero: return 0.0;
    case SourceKind::compact_support: c = std::abs(amplitude_); break;
    case SourceKind::critical_decay: c = std::abs(amplitude_) * std::pow(T0_, exponent_); break;
    case SourceKind::table:
      for (double v : values_) c = std::max(c, std::abs(v));
      c *= std::abs(amplitude_);
      break;
  }
  return c * profile_l2_;
}

void SourceSpec::add_to(std::span<Complex> u, double t, Complex factor) const {
  if (is_zero()) return;
  const double c = amplitude(t);
  if (c == 0.0) return;
  if (u.size() != profile_->size()) throw ShapeError("source profile does not match state grid");
  const Complex k = factor * c;
  const auto phi = profile_->values();
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += k * phi[i];
}

double SourceSpec::pairing(const ComplexField& u, double t) const {
  if (is_zero()) return 0.0;
  const double c = amplitude(t);
  if (c == 0.0) return 0.0;
  require_same_domain(u.domain(), profile_->domain());
  return c * inner_product(*profile_, u).imag();
}

ComplexField SourceSpec::evaluate(double t) const {
  if (!profile_) throw std::logic_error("zero source has no grid");
  ComplexField f = *profile_;
  f *= amplitude(t);
  return f;
}

}  // namespace dnls
