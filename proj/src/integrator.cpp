#include "dnls/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dnls {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kMidpointTol = 1e-10;
constexpr int kMidpointMaxIter = 50;
constexpr int kMaxHalvings = 12;

double max_abs(std::span<const Complex> v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

const char* to_string(Scheme scheme) {
  return scheme == Scheme::strang ? "strang" : "midpoint";
}

void ModelParams::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be >= 0");
  if (snapshot_stride < 1) throw std::invalid_argument("snapshot stride must be >= 1");
  if (!(extinction_floor >= 0.0)) throw std::invalid_argument("extinction floor must be >= 0");
  if (source.profile()) require_same_domain(source.profile()->domain(), domain);
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(ledger.size());
  for (const auto& r : ledger) t.push_back(r.t);
  return t;
}

std::vector<double> Trajectory::masses() const {
  std::vector<double> m;
  m.reserve(ledger.size());
  for (const auto& r : ledger) m.push_back(r.mass);
  return m;
}

std::vector<double> Trajectory::l2_norms() const {
  std::vector<double> n;
  n.reserve(ledger.size());
  for (const auto& r : ledger) n.push_back(std::sqrt(r.mass));
  return n;
}

// ---------------------------------------------------------------------------

Stepper::Stepper(const ModelParams& params)
    : params_(params),
      lambda_(laplacian_eigenvalues(params.domain)),
      work_(params.domain.size()),
      work2_(params.domain.size()) {
  params_.validate();
}

void Stepper::linear_propagate(std::span<Complex> u, double dt) {
  if (dt != cached_dt_) {
    propagator_.resize(lambda_.size());
    for (std::size_t k = 0; k < lambda_.size(); ++k) {
      propagator_[k] = std::polar(1.0, -lambda_[k] * dt);
    }
    cached_dt_ = dt;
  }
  sine_transform_in_place(params_.domain, u);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] *= propagator_[k];
  inverse_sine_transform_in_place(params_.domain, u);
}

void Stepper::strang_step(ComplexField& u, double t, double dt) {
  require_same_domain(u.domain(), params_.domain);
  const double half = 0.5 * dt;
  auto v = u.values();
  const bool forced = !params_.source.is_zero();

  apply_damping_flow(v, params_.damping, half);
  if (forced) params_.source.add_to(v, t + 0.25 * dt, -kI * half);
  linear_propagate(v, dt);
  if (forced) params_.source.add_to(v, t + 0.75 * dt, -kI * half);
  apply_damping_flow(v, params_.damping, half);
}

void Stepper::midpoint_step(ComplexField& u, double t, double dt) {
  require_same_domain(u.domain(), params_.domain);
  const BoxDomain& dom = params_.domain;
  const double m = params_.m();
  const Complex ia = kI * params_.damping.a();
  const double t_mid = t + 0.5 * dt;

  // c0: coefficients of the current state.
  std::vector<Complex> c0(u.values().begin(), u.values().end());
  sine_transform_in_place(dom, c0);

  ComplexField next = u;
  strang_step(next, t, dt);
  const double scale = std::max(max_abs(u.values()), max_abs(next.values()));

  auto& rhs = work_;
  for (int iter = 0; iter < kMidpointMaxIter; ++iter) {
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      rhs[i] = ia * g_apply(0.5 * (u[i] + next[i]), m);
    }
    params_.source.add_to(rhs, t_mid, -kI);
    sine_transform_in_place(dom, rhs);
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      const Complex hl = kI * (0.5 * dt * lambda_[k]);
      rhs[k] = ((1.0 - hl) * c0[k] + dt * rhs[k]) / (1.0 + hl);
    }
    inverse_sine_transform_in_place(dom, rhs);

    double diff = 0.0;
    for (std::size_t i = 0; i < rhs.size(); ++i) diff = std::max(diff, std::abs(rhs[i] - next[i]));
    std::copy(rhs.begin(), rhs.end(), next.values().begin());
    if (diff <= kMidpointTol * scale || scale == 0.0) {
      u = std::move(next);
      return;
    }
  }
  std::ostringstream msg;
  msg << "implicit midpoint did not converge at t=" << t << " dt=" << dt;
  throw StepFailure(msg.str());
}

LedgerRow Stepper::measure(const ComplexField& u, double t) const {
  LedgerRow row;
  row.t = t;
  row.mass = lp_power(u, 2.0);
  row.lmp1 = lp_power(u, params_.m() + 1.0);
  row.pairing = params_.source.pairing(u, t);
  const SpectralNorms n = spectral_norms(u);
  row.h1 = n.h1;
  row.h2 = params_.h2_regular ? n.h2 : std::numeric_limits<double>::quiet_NaN();
  return row;
}

ComplexField strang_step(const ComplexField& u, double t, double dt, const ModelParams& p) {
  Stepper stepper(p);
  ComplexField v = u;
  stepper.strang_step(v, t, dt);
  return v;
}

ComplexField midpoint_step(const ComplexField& u, double t, double dt, const ModelParams& p) {
  Stepper stepper(p);
  ComplexField v = u;
  stepper.midpoint_step(v, t, dt);
  return v;
}

namespace {

void midpoint_with_halving(Stepper& stepper, ComplexField& u, double t, double dt, int depth) {
  try {
    ComplexField trial = u;
    stepper.midpoint_step(trial, t, dt);
    u = std::move(trial);
  } catch (const StepFailure&) {
    if (depth >= kMaxHalvings) throw;
    midpoint_with_halving(stepper, u, t, 0.5 * dt, depth + 1);
    midpoint_with_halving(stepper, u, t + 0.5 * dt, 0.5 * dt, depth + 1);
  }
}

}  // namespace

Trajectory run_simulation(const ComplexField& u0, const ModelParams& p) {
  p.validate();
  require_same_domain(u0.domain(), p.domain);
  if (!u0.all_finite()) throw SimulationError("initial state is not finite");

  Stepper stepper(p);
  Trajectory traj{.ledger = {}, .snapshots = {}, .extinction_time = std::nullopt,
                  .initial_l2 = norm_l2(u0), .dt = p.dt, .final_state = u0};
  const double floor = p.extinction_floor * traj.initial_l2;

  const auto steps = static_cast<std::size_t>(std::ceil(p.t_end / p.dt - 1e-9));
  traj.ledger.reserve(steps + 1);

  ComplexField u = u0;
  auto record = [&](double t, std::size_t k) {
    LedgerRow row = stepper.measure(u, t);
    if (!std::isfinite(row.mass)) {
      std::ostringstream msg;
      msg << "non-finite state at t=" << t;
      throw SimulationError(msg.str());
    }
    row.extinct = std::sqrt(row.mass) <= floor;
    if (row.extinct && !traj.extinction_time) traj.extinction_time = t;
    traj.ledger.push_back(row);
    if (k % static_cast<std::size_t>(p.snapshot_stride) == 0) traj.snapshots.push_back({t, u});
  };

  record(0.0, 0);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t0 = static_cast<double>(k - 1) * p.dt;
    const double t1 = std::min(static_cast<double>(k) * p.dt, p.t_end);
    const double h = t1 - t0;
    if (p.scheme == Scheme::strang) {
      stepper.strang_step(u, t0, h);
    } else {
      midpoint_with_halving(stepper, u, t0, h, 0);
    }
    record(t1, k);
  }
  traj.final_state = std::move(u);
  return traj;
}

}  // namespace dnls
