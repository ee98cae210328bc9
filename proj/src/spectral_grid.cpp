#include "dnls/spectral_grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

namespace dnls {

BoxDomain::BoxDomain(std::vector<double> lengths, std::vector<int> points)
    : lengths_(std::move(lengths)), points_(std::move(points)) {
  if (lengths_.empty() || lengths_.size() > 3) {
    throw std::invalid_argument("BoxDomain: dims must be 1, 2 or 3");
  }
  if (lengths_.size() != points_.size()) {
    throw std::invalid_argument("BoxDomain: lengths and points differ in size");
  }
  for (double L : lengths_) {
    if (!std::isfinite(L) || L <= 0.0) {
      throw std::invalid_argument("BoxDomain: lengths must be finite and positive");
    }
  }
  for (int n : points_) {
    if (n < kMinPoints) {
      throw std::invalid_argument("BoxDomain: at least " + std::to_string(kMinPoints) +
                                  " interior points per axis");
    }
  }
}

BoxDomain BoxDomain::cube(int dims, double length, int points) {
  return BoxDomain(std::vector<double>(dims, length), std::vector<int>(dims, points));
}

double BoxDomain::cell_volume() const {
  double v = 1.0;
  for (int j = 0; j < dims(); ++j) v *= spacing(j);
  return v;
}

double BoxDomain::volume() const {
  return std::accumulate(lengths_.begin(), lengths_.end(), 1.0, std::multiplies<>());
}

std::size_t BoxDomain::size() const {
  std::size_t n = 1;
  for (int p : points_) n *= static_cast<std::size_t>(p);
  return n;
}

std::array<int, 3> BoxDomain::unflatten(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int j = dims() - 1; j >= 0; --j) {
    idx[j] = static_cast<int>(flat % points_[j]);
    flat /= points_[j];
  }
  return idx;
}

void require_same_domain(const BoxDomain& a, const BoxDomain& b) {
  if (!(a == b)) throw ShapeError("fields live on different grids");
}

// ---------------------------------------------------------------------------

ComplexField::ComplexField(BoxDomain domain)
    : domain_(std::move(domain)), values_(domain_.size(), Complex{0.0, 0.0}) {}

ComplexField::ComplexField(BoxDomain domain, std::vector<Complex> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_.size()) throw ShapeError("ComplexField: value count mismatch");
}

ComplexField ComplexField::sample(const BoxDomain& domain,
                                  const std::function<Complex(const std::array<double, 3>&)>& fn) {
  ComplexField u(domain);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto idx = domain.unflatten(i);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int j = 0; j < domain.dims(); ++j) x[j] = domain.node(j, idx[j]);
    u.values_[i] = fn(x);
  }
  return u;
}

ComplexField ComplexField::sine_mode(const BoxDomain& domain, const std::vector<int>& modes,
                                     Complex amplitude) {
  if (static_cast<int>(modes.size()) != domain.dims()) {
    throw ShapeError("sine_mode: one mode index per axis required");
  }
  // Exact discrete mode from the integer node index, avoiding rounding in x.
  ComplexField u(domain);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto idx = domain.unflatten(i);
    double s = 1.0;
    for (int j = 0; j < domain.dims(); ++j) {
      s *= std::sin(std::numbers::pi * modes[j] * (idx[j] + 1) / (domain.points(j) + 1));
    }
    u.values_[i] = amplitude * s;
  }
  return u;
}

bool ComplexField::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Complex& z) { return z == Complex{0.0, 0.0}; });
}

bool ComplexField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexField& ComplexField::operator+=(const ComplexField& other) {
  require_same_domain(domain_, other.domain_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& other) {
  require_same_domain(domain_, other.domain_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

ComplexField& ComplexField::operator*=(Complex s) {
  for (auto& z : values_) z *= s;
  return *this;
}

// ---------------------------------------------------------------------------

SpectralField::SpectralField(BoxDomain domain)
    : domain_(std::move(domain)), coeffs_(domain_.size(), Complex{0.0, 0.0}) {}

SpectralField::SpectralField(BoxDomain domain, std::vector<Complex> coeffs)
    : domain_(std::move(domain)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != domain_.size()) throw ShapeError("SpectralField: coefficient count mismatch");
}

double SpectralField::parseval_weight() const {
  double w = 1.0;
  for (int j = 0; j < domain_.dims(); ++j) w *= domain_.length(j) / 2.0;
  return w;
}

// ---------------------------------------------------------------------------
// DST-I plans. One plan per grid shape transforms the real and imaginary
// parts of an interleaved complex buffer together (howmany = 2, stride 2).

namespace {

struct DstPlan {
  fftw_plan plan = nullptr;
  double forward_scale = 1.0;
  double inverse_scale = 1.0;
  ~DstPlan() {
    if (plan) fftw_destroy_plan(plan);
  }
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

const DstPlan& plan_for(const BoxDomain& domain) {
  static std::map<std::vector<int>, std::unique_ptr<DstPlan>> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto& slot = cache[domain.points()];
  if (!slot) {
    auto p = std::make_unique<DstPlan>();
    const int rank = domain.dims();
    std::vector<int> n(domain.points().begin(), domain.points().end());
    std::vector<fftw_r2r_kind> kinds(rank, FFTW_RODFT00);
    std::vector<double> scratch(2 * domain.size());
    p->plan = fftw_plan_many_r2r(rank, n.data(), 2, scratch.data(), nullptr, 2, 1, scratch.data(),
                                 nullptr, 2, 1, kinds.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p->plan) throw std::runtime_error("FFTW failed to create a DST-I plan");
    double fwd = 1.0;
    for (int pts : domain.points()) fwd *= pts + 1;
    p->forward_scale = 1.0 / fwd;
    p->inverse_scale = 1.0 / std::pow(2.0, rank);
    slot = std::move(p);
  }
  return *slot;
}

double* as_doubles(std::span<Complex> data) { return reinterpret_cast<double*>(data.data()); }

}  // namespace

void sine_transform_in_place(const BoxDomain& domain, std::span<Complex> data) {
  if (data.size() != domain.size()) throw ShapeError("sine_transform: buffer size mismatch");
  const DstPlan& p = plan_for(domain);
  fftw_execute_r2r(p.plan, as_doubles(data), as_doubles(data));
  for (auto& z : data) z *= p.forward_scale;
}

void inverse_sine_transform_in_place(const BoxDomain& domain, std::span<Complex> data) {
  if (data.size() != domain.size()) throw ShapeError("inverse_sine_transform: buffer size mismatch");
  const DstPlan& p = plan_for(domain);
  fftw_execute_r2r(p.plan, as_doubles(data), as_doubles(data));
  for (auto& z : data) z *= p.inverse_scale;
}

SpectralField sine_transform(const ComplexField& u) {
  std::vector<Complex> c(u.values().begin(), u.values().end());
  sine_transform_in_place(u.domain(), c);
  return SpectralField(u.domain(), std::move(c));
}

ComplexField inverse_sine_transform(const SpectralField& c) {
  std::vector<Complex> v(c.coeffs().begin(), c.coeffs().end());
  inverse_sine_transform_in_place(c.domain(), v);
  return ComplexField(c.domain(), std::move(v));
}

const std::vector<double>& laplacian_eigenvalues(const BoxDomain& domain) {
  static std::map<std::pair<std::vector<double>, std::vector<int>>, std::vector<double>> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_pair(domain.lengths(), domain.points());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<double> lambda(domain.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const auto idx = domain.unflatten(i);
    double s = 0.0;
    for (int j = 0; j < domain.dims(); ++j) {
      const double k = (idx[j] + 1) * std::numbers::pi / domain.length(j);
      s += k * k;
    }
    lambda[i] = s;
  }
  return cache.emplace(std::move(key), std::move(lambda)).first->second;
}

ComplexField laplacian_apply(const ComplexField& u) {
  SpectralField c = sine_transform(u);
  const auto& lambda = laplacian_eigenvalues(u.domain());
  auto coeffs = c.coeffs();
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= -lambda[k];
  return inverse_sine_transform(c);
}

// ---------------------------------------------------------------------------

Complex inner_product(const ComplexField& u, const ComplexField& v) {
  require_same_domain(u.domain(), v.domain());
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s * u.domain().cell_volume();
}

double lp_power(const ComplexField& u, double p) {
  if (!(p > 0.0)) throw std::domain_error("lp_power: p must be positive");
  double s = 0.0;
  if (p == 2.0) {
    for (const auto& z : u.values()) s += std::norm(z);
  } else {
    for (const auto& z : u.values()) s += std::pow(std::abs(z), p);
  }
  return s * u.domain().cell_volume();
}

double norm_lp(const ComplexField& u, double p) {
  if (!(p >= 1.0)) throw std::domain_error("norm_lp: p must be >= 1");
  return std::pow(lp_power(u, p), 1.0 / p);
}

double norm_l2(const ComplexField& u) { return std::sqrt(lp_power(u, 2.0)); }

double norm_hl(const ComplexField& u, int ell) {
  if (ell < 0) throw std::domain_error("norm_hl: ell must be nonnegative");
  const SpectralField c = sine_transform(u);
  const auto& lambda = laplacian_eigenvalues(u.domain());
  double s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    s += std::pow(1.0 + lambda[k], ell) * std::norm(c.coeffs()[k]);
  }
  return std::sqrt(s * c.parseval_weight());
}

double norm_h1(const ComplexField& u) { return norm_hl(u, 1); }
double norm_h2(const ComplexField& u) { return norm_hl(u, 2); }

SpectralNorms spectral_norms(const SpectralField& c) {
  const auto& lambda = laplacian_eigenvalues(c.domain());
  double l2 = 0.0, grad = 0.0, lap = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double a = std::norm(c.coeffs()[k]);
    l2 += a;
    grad += lambda[k] * a;
    lap += lambda[k] * lambda[k] * a;
  }
  const double w = c.parseval_weight();
  SpectralNorms n;
  n.l2 = std::sqrt(l2 * w);
  n.gradient = std::sqrt(grad * w);
  n.laplacian = std::sqrt(lap * w);
  n.h1 = std::sqrt((l2 + grad) * w);
  n.h2 = std::sqrt((l2 + 2.0 * grad + lap) * w);
  return n;
}

SpectralNorms spectral_norms(const ComplexField& u) { return spectral_norms(sine_transform(u)); }

double gn_ratio(const ComplexField& v, double m, int ell) {
  if (!(m >= 0.0 && m <= 1.0)) throw std::domain_error("gn_ratio: m must lie in [0,1]");
  if (ell < 1) throw std::domain_error("gn_ratio: ell must be >= 1");
  if (v.is_zero()) throw std::domain_error("gn_ratio: zero field");
  const double N = v.domain().dims();
  const double l2 = norm_l2(v);
  const double lmp1 = lp_power(v, m + 1.0);
  const double hl = norm_hl(v, ell);
  const double num_exp = ((2.0 * ell + N) + m * (2.0 * ell - N)) / (2.0 * ell);
  const double h_exp = N * (1.0 - m) / (2.0 * ell);
  // Log form keeps the ratio exactly 1 at m = 1 up to rounding of l2^2/lmp1.
  return std::exp(num_exp * std::log(l2) - std::log(lmp1) - h_exp * std::log(hl));
}

double gradient_interpolation_slack(const ComplexField& u) {
  const SpectralNorms n = spectral_norms(u);
  return n.l2 * n.laplacian - n.gradient * n.gradient;
}

bool gradient_interpolation_check(const ComplexField& u) {
  const SpectralNorms n = spectral_norms(u);
  const double rhs = n.l2 * n.laplacian;
  return n.gradient * n.gradient <= rhs + 1e-12 * rhs + 1e-300;
}

}  // namespace dnls
