#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dnls/nonlinearity.hpp"
#include "dnls/source.hpp"
#include "dnls/spectral_grid.hpp"

namespace dnls {

enum class Scheme { strang, midpoint };

const char* to_string(Scheme scheme);

/// Everything needed to integrate i u_t + Delta u + a|u|^{m-1}u = f on a box
/// with homogeneous Dirichlet data. The initial state is supplied separately.
struct ModelParams {
  DampingCoefficient damping;
  BoxDomain domain;
  SourceSpec source;
  double t_end = 1.0;
  double dt = 1e-3;
  Scheme scheme = Scheme::strang;
  int snapshot_stride = 100;
  /// Record ||u||_{H^2} in the ledger (only meaningful for H^2 data).
  bool h2_regular = false;
  /// Numerical extinction: ||u||_{L^2} <= extinction_floor * ||u0||_{L^2}.
  double extinction_floor = 1e-10;

  double m() const { return damping.m(); }
  void validate() const;
};

struct LedgerRow {
  double t = 0.0;
  double mass = 0.0;     // ||u||_{L^2}^2
  double lmp1 = 0.0;     // ||u||_{L^{m+1}}^{m+1}
  double pairing = 0.0;  // Im int f conj(u)
  double h1 = 0.0;       // ||u||_{H^1}
  double h2 = 0.0;       // ||u||_{H^2}, NaN unless h2_regular
  bool extinct = false;
};

struct Snapshot {
  double t = 0.0;
  ComplexField state;
};

/// Ledger rows at t = 0, dt, 2dt, ...; one row per step plus the initial row.
struct Trajectory {
  std::vector<LedgerRow> ledger;
  std::vector<Snapshot> snapshots;
  /// First ledger time at which the extinction floor was reached.
  std::optional<double> extinction_time;
  double initial_l2 = 0.0;
  double dt = 0.0;
  ComplexField final_state;

  std::size_t step_count() const { return ledger.empty() ? 0 : ledger.size() - 1; }
  std::vector<double> times() const;
  std::vector<double> masses() const;
  std::vector<double> l2_norms() const;
};

/// Thrown by the implicit midpoint fixed-point solve when it does not settle.
class StepFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when the state becomes non-finite.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reusable stepping engine for one ModelParams. Not thread-safe; use one
/// per simulation.
class Stepper {
 public:
  explicit Stepper(const ModelParams& params);

  /// Symmetric splitting D(dt/2) F(dt/2) A(dt) F(dt/2) D(dt/2): D is the exact
  /// pointwise damping flow, F the forcing increment -i f dt/2 sampled at the
  /// midpoint of its half step, A the exact linear propagator exp(-i lambda dt).
  void strang_step(ComplexField& u, double t, double dt);

  /// Implicit midpoint on the full right-hand side. The linear part is solved
  /// exactly in the sine basis; the nonlinearity and forcing by fixed-point
  /// iteration to a relative residual of 1e-10 within 50 sweeps.
  void midpoint_step(ComplexField& u, double t, double dt);

  LedgerRow measure(const ComplexField& u, double t) const;

  const ModelParams& params() const { return params_; }

 private:
  void linear_propagate(std::span<Complex> u, double dt);

  ModelParams params_;
  const std::vector<double>& lambda_;
  double cached_dt_ = -1.0;
  std::vector<Complex> propagator_;
  std::vector<Complex> work_;
  std::vector<Complex> work2_;
};

ComplexField strang_step(const ComplexField& u, double t, double dt, const ModelParams& p);
ComplexField midpoint_step(const ComplexField& u, double t, double dt, const ModelParams& p);

/// Integrates from 0 to t_end, recording the ledger every step and snapshots
/// every snapshot_stride steps. Midpoint steps that fail to converge are
/// retried on halved substeps (up to 12 halvings).
Trajectory run_simulation(const ComplexField& u0, const ModelParams& p);

}  // namespace dnls
