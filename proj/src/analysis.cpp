#include "dnls/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dnls::analysis {

double MassResidualSeries::max_abs_before(double t_cut) const {
  double m = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    // times are midpoints; the step ends half a step later.
    const double half = i + 1 < times.size() ? 0.5 * (times[i + 1] - times[i]) : 0.0;
    if (times[i] + half <= t_cut) m = std::max(m, std::abs(residual[i]));
  }
  return m;
}

MassResidualSeries mass_residual(std::span<const double> t, std::span<const double> mass,
                                 std::span<const double> lmp1, std::span<const double> pairing,
                                 double im_a) {
  const std::size_t n = t.size();
  if (mass.size() != n || lmp1.size() != n || pairing.size() != n) {
    throw std::domain_error("mass_residual: ragged ledger");
  }
  if (n < 3) throw std::domain_error("mass_residual: need at least 3 ledger rows");

  MassResidualSeries s;
  s.normalization = *std::max_element(mass.begin(), mass.end());
  const double norm = s.normalization > 0.0 ? s.normalization : 1.0;
  s.times.reserve(n - 1);
  s.residual.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = t[i + 1] - t[i];
    const double d0 = 2.0 * im_a * lmp1[i] - 2.0 * pairing[i];
    const double d1 = 2.0 * im_a * lmp1[i + 1] - 2.0 * pairing[i + 1];
    const double r = ((mass[i + 1] - mass[i]) / h + 0.5 * (d0 + d1)) / norm;
    s.times.push_back(0.5 * (t[i] + t[i + 1]));
    s.residual.push_back(r);
    s.max_abs = std::max(s.max_abs, std::abs(r));
  }
  return s;
}

MassResidualSeries mass_residual(const Trajectory& traj, const ModelParams& p) {
  std::vector<double> t, mass, lmp1, pairing;
  for (const auto& r : traj.ledger) {
    t.push_back(r.t);
    mass.push_back(r.mass);
    lmp1.push_back(r.lmp1);
    pairing.push_back(r.pairing);
  }
  return mass_residual(t, mass, lmp1, pairing, p.damping.im());
}

double extinction_lower_bound(double l2_at_T0, double m, double im_a, double volume, double T0) {
  if (!(m < 1.0)) throw std::domain_error("extinction_lower_bound: no extinction for m = 1");
  if (!(im_a > 0.0) || !(volume > 0.0) || !std::isfinite(volume)) {
    throw std::domain_error("extinction_lower_bound: need Im(a) > 0 and finite |Omega|");
  }
  if (!(l2_at_T0 >= 0.0)) throw std::domain_error("extinction_lower_bound: negative norm");
  return std::pow(l2_at_T0, 1.0 - m) / ((1.0 - m) * im_a * std::pow(volume, (1.0 - m) / 2.0)) + T0;
}

double extinction_lower_bound(double l2_at_T0, const ModelParams& p, double T0) {
  return extinction_lower_bound(l2_at_T0, p.m(), p.damping.im(), p.domain.volume(), T0);
}

double extinction_upper_bound(double l2_at_T0, double sup_hl, double c_gn, int N, double m,
                              double im_a, double T0, int ell) {
  if (!(m < 1.0)) throw std::domain_error("extinction_upper_bound: no extinction for m = 1");
  if (2 * ell <= N) throw std::domain_error("extinction_upper_bound: requires 2l > N");
  if (!(sup_hl > 0.0)) throw std::domain_error("extinction_upper_bound: sup_Hl must be > 0");
  if (!(c_gn > 0.0) || !(im_a > 0.0)) throw std::domain_error("extinction_upper_bound: C_GN, Im(a) > 0");
  const double L = ell;
  const double k = 2.0 * L - N;
  return T0 + 2.0 * L * c_gn * std::pow(sup_hl, N * (1.0 - m) / (2.0 * L)) /
                  (im_a * (1.0 - m) * k) * std::pow(l2_at_T0, (1.0 - m) * k / (2.0 * L));
}

double extinction_upper_bound(double l2_at_T0, double sup_hl, double c_gn, const ModelParams& p,
                              double T0, int ell) {
  return extinction_upper_bound(l2_at_T0, sup_hl, c_gn, p.domain.dims(), p.m(), p.damping.im(),
                                T0, ell);
}

std::optional<double> detect_extinction(std::span<const double> t, std::span<const double> l2,
                                        double initial_l2, double floor, int confirm) {
  const double threshold = floor * initial_l2;
  int run = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < l2.size(); ++i) {
    if (l2[i] <= threshold) {
      if (run == 0) start = i;
      if (++run >= confirm) return t[start];
    } else {
      run = 0;
    }
  }
  return std::nullopt;
}

bool mass_nonincreasing_after(std::span<const double> t, std::span<const double> mass, double T0) {
  if (mass.empty()) return true;
  const double slack = 1e-12 * *std::max_element(mass.begin(), mass.end());
  for (std::size_t i = 0; i + 1 < mass.size(); ++i) {
    if (t[i] >= T0 && mass[i + 1] > mass[i] + slack) return false;
  }
  return true;
}

double l2_at(std::span<const double> t, std::span<const double> l2, double T0) {
  if (t.empty()) throw std::domain_error("l2_at: empty ledger");
  std::size_t best = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs(t[i] - T0) < std::abs(t[best] - T0)) best = i;
  }
  return l2[best];
}

const char* to_string(DecayRegime regime) {
  return regime == DecayRegime::exponential ? "exponential" : "algebraic";
}

DecayVerdict decay_envelope_verdict(std::span<const double> t, std::span<const double> l2,
                                    const DecayModel& model, DecayRegime regime, double C) {
  const int twice_ell = 2 * model.ell;
  if (regime == DecayRegime::exponential && model.N != twice_ell) {
    throw std::domain_error("exponential envelope requires N = 2l");
  }
  if (regime == DecayRegime::algebraic && model.N <= twice_ell) {
    throw std::domain_error("algebraic envelope requires N > 2l");
  }
  if (!(model.im_a > 0.0)) throw std::domain_error("decay envelope: Im(a) must be > 0");

  DecayVerdict v;
  v.regime = regime;
  v.supplied_C = C;
  const double y0 = l2_at(t, l2, model.T0);
  double smallest = 0.0;
  if (y0 > 0.0) {
    const double k = (1.0 - model.m) * (model.N - twice_ell);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double s = t[i] - model.T0;
      if (s <= 0.0) continue;
      if (l2[i] == 0.0) continue;  // any C works at an extinct sample
      const double ratio = y0 / l2[i];
      double needed = 0.0;
      if (regime == DecayRegime::exponential) {
        needed = ratio > 1.0 ? model.im_a * s / std::log(ratio)
                             : std::numeric_limits<double>::infinity();
      } else {
        const double root = std::pow(ratio, k / twice_ell) - 1.0;
        needed = root > 0.0 ? model.im_a * k * std::pow(y0, k / twice_ell) * s / root
                            : std::numeric_limits<double>::infinity();
      }
      smallest = std::max(smallest, needed);
    }
  }
  v.smallest_C = smallest;
  v.pass = C >= smallest * (1.0 - 1e-12);
  return v;
}

DecayVerdict decay_envelope_verdict(const Trajectory& traj, const ModelParams& p, int ell,
                                    DecayRegime regime, double C) {
  const DecayModel model{p.domain.dims(), ell, p.m(), p.damping.im(), p.source.support_end()};
  return decay_envelope_verdict(traj.times(), traj.l2_norms(), model, regime, C);
}

VanishingVerdict longtime_vanishing_check(std::span<const double> t, std::span<const double> mass,
                                          double support_end, double initial_l2,
                                          double fraction) {
  VanishingVerdict v;
  if (mass.empty()) return v;
  v.peak_mass = *std::max_element(mass.begin(), mass.end());
  v.final_mass = mass.back();
  v.final_over_peak = v.peak_mass > 0.0 ? v.final_mass / v.peak_mass : 0.0;
  v.monotone_after_support = mass_nonincreasing_after(t, mass, support_end);
  v.final_small = v.final_mass <= fraction * v.peak_mass;
  std::vector<double> l2(mass.size());
  for (std::size_t i = 0; i < mass.size(); ++i) l2[i] = std::sqrt(mass[i]);
  v.extinct = detect_extinction(t, l2, initial_l2).has_value() || v.peak_mass == 0.0;
  return v;
}

VanishingVerdict longtime_vanishing_check(const Trajectory& traj, const ModelParams& p,
                                          double fraction) {
  return longtime_vanishing_check(traj.times(), traj.masses(), p.source.support_end(),
                                  traj.initial_l2, fraction);
}

double trajectory_sup_hl(const Trajectory& traj, int ell) {
  double s = 0.0;
  for (const auto& r : traj.ledger) {
    const double v = ell == 1 ? r.h1 : r.h2;
    if (ell != 1 && std::isnan(v)) throw std::domain_error("trajectory_sup_hl: H^2 not recorded");
    s = std::max(s, v);
  }
  return s;
}

}  // namespace dnls::analysis
