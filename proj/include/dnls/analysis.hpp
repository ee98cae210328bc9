#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dnls/integrator.hpp"

namespace dnls::analysis {

/// Per-step residual of the mass law
///   d/dt ||u||^2 + 2 Im(a) ||u||_{L^{m+1}}^{m+1} - 2 Im int f conj(u) = 0,
/// discretised on each step [t_i, t_{i+1}] as
///   (M_{i+1} - M_i)/dt + (D_i + D_{i+1})/2,   D = 2 Im(a) lmp1 - 2 pairing,
/// and divided by the peak mass so runs of different size compare.
struct MassResidualSeries {
  std::vector<double> times;  // step midpoints
  std::vector<double> residual;
  double max_abs = 0.0;
  double normalization = 1.0;  // peak mass

  /// max |residual| over steps ending at or before t_cut.
  double max_abs_before(double t_cut) const;
};

MassResidualSeries mass_residual(std::span<const double> t, std::span<const double> mass,
                                 std::span<const double> lmp1, std::span<const double> pairing,
                                 double im_a);
MassResidualSeries mass_residual(const Trajectory& traj, const ModelParams& p);

/// ||u(T0)||^{1-m} / ((1-m) Im(a) |Omega|^{(1-m)/2}) + T0. Requires m < 1.
double extinction_lower_bound(double l2_at_T0, double m, double im_a, double volume, double T0);
double extinction_lower_bound(double l2_at_T0, const ModelParams& p, double T0);

/// T0 + 2l C_GN S^{N(1-m)/(2l)} ||u(T0)||^{(1-m)(2l-N)/(2l)} / (Im(a)(1-m)(2l-N)),
/// S = sup_t ||u(t)||_{H^l}. Requires m < 1, S > 0 and 2l > N.
double extinction_upper_bound(double l2_at_T0, double sup_hl, double c_gn, int N, double m,
                              double im_a, double T0, int ell);
double extinction_upper_bound(double l2_at_T0, double sup_hl, double c_gn, const ModelParams& p,
                              double T0, int ell);

/// First time t_i with ||u(t_j)|| <= floor * initial_l2 for j = i .. i+confirm-1.
std::optional<double> detect_extinction(std::span<const double> t, std::span<const double> l2,
                                        double initial_l2, double floor = 1e-10,
                                        int confirm = 10);

/// M_{i+1} <= M_i (up to 1e-12 of the peak) for every step starting at or after T0.
bool mass_nonincreasing_after(std::span<const double> t, std::span<const double> mass, double T0);

/// ||u|| at the ledger row closest to T0.
double l2_at(std::span<const double> t, std::span<const double> l2, double T0);

enum class DecayRegime { exponential, algebraic };

const char* to_string(DecayRegime regime);

struct DecayModel {
  int N = 1;
  int ell = 1;
  double m = 0.5;
  double im_a = 1.0;
  double T0 = 0.0;
};

struct DecayVerdict {
  DecayRegime regime = DecayRegime::exponential;
  double supplied_C = 0.0;
  /// Smallest C for which the sampled norms satisfy the envelope.
  double smallest_C = 0.0;
  bool pass = false;
};

/// Checks ||u(t)|| against
///   exponential (N = 2l):  ||u(T0)|| exp(-Im(a) C^{-1} (t-T0))
///   algebraic   (N > 2l):  ||u(T0)|| / (1 + Im(a) C^{-1} k ||u(T0)||^{k/(2l)} (t-T0))^{2l/k},
///                          k = (1-m)(N-2l).
/// Throws std::domain_error when the regime does not match N and l.
DecayVerdict decay_envelope_verdict(std::span<const double> t, std::span<const double> l2,
                                    const DecayModel& model, DecayRegime regime, double C);
DecayVerdict decay_envelope_verdict(const Trajectory& traj, const ModelParams& p, int ell,
                                    DecayRegime regime, double C);

struct VanishingVerdict {
  bool monotone_after_support = false;
  bool final_small = false;
  bool extinct = false;
  double peak_mass = 0.0;
  double final_mass = 0.0;
  double final_over_peak = 0.0;
  bool pass() const { return monotone_after_support && (final_small || extinct); }
};

/// Mass non-increasing after the source support and the final mass at most
/// fraction * peak (or numerically extinct).
VanishingVerdict longtime_vanishing_check(std::span<const double> t, std::span<const double> mass,
                                          double support_end, double initial_l2,
                                          double fraction = 1e-3);
VanishingVerdict longtime_vanishing_check(const Trajectory& traj, const ModelParams& p,
                                          double fraction = 1e-3);

/// max_t ||u(t)||_{H^l} over the ledger (l = 1 uses h1, l = 2 uses h2).
double trajectory_sup_hl(const Trajectory& traj, int ell);

}  // namespace dnls::analysis
