#include "dnls/gn_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace dnls {

namespace {

using Candidate = std::function<ComplexField()>;

double ground_factor(const BoxDomain& d, const std::array<double, 3>& x) {
  double s = 1.0;
  for (int j = 0; j < d.dims(); ++j) s *= std::sin(std::numbers::pi * x[j] / d.length(j));
  return s;
}

std::vector<Candidate> structured_candidates(const BoxDomain& d) {
  std::vector<Candidate> out;
  const int N = d.dims();
  const int K = N == 1 ? 12 : (N == 2 ? 5 : 3);

  // Product sine modes, lowest total index first.
  for (int total = N; total <= N * K; ++total) {
    std::vector<int> k(N, 1);
    while (true) {
      int sum = 0;
      for (int v : k) sum += v;
      if (sum == total) out.push_back([&d, k] { return ComplexField::sine_mode(d, k); });
      int axis = N - 1;
      while (axis >= 0 && k[axis] == K) k[axis--] = 1;
      if (axis < 0) break;
      ++k[axis];
    }
  }

  for (double p : {0.1, 0.25, 0.5, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0, 32.0}) {
    out.push_back([&d, p] {
      return ComplexField::sample(d, [&](const auto& x) {
        return Complex(std::pow(std::abs(ground_factor(d, x)), p));
      });
    });
  }

  for (double c : {0.5, 0.3, 0.15}) {
    for (double w : {0.25, 0.15, 0.1, 0.06, 0.04, 0.025}) {
      out.push_back([&d, c, w] {
        return ComplexField::sample(d, [&](const auto& x) {
          double r2 = 0.0;
          for (int j = 0; j < d.dims(); ++j) {
            const double z = (x[j] - c * d.length(j)) / (w * d.length(j));
            r2 += z * z;
          }
          return Complex(std::exp(-0.5 * r2) * ground_factor(d, x));
        });
      });
    }
  }
  return out;
}

/// Indices of coefficients with every k_j <= kmax.
std::vector<std::size_t> low_modes(const BoxDomain& d, int kmax) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto k = d.unflatten(i);
    bool low = true;
    for (int j = 0; j < d.dims(); ++j) low = low && k[j] < kmax;
    if (low) idx.push_back(i);
  }
  return idx;
}

}  // namespace

GnEstimate estimate_gn_constant(const BoxDomain& domain, double m, int ell, int budget,
                                std::uint64_t seed, double safety_factor) {
  if (budget < 1) throw std::invalid_argument("estimate_gn_constant: budget must be >= 1");
  if (!(safety_factor >= 1.0)) throw std::invalid_argument("estimate_gn_constant: safety factor < 1");
  if (!(m >= 0.0 && m <= 1.0)) throw std::domain_error("estimate_gn_constant: m must lie in [0,1]");

  GnEstimate est;
  est.safety_factor = safety_factor;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  std::optional<SpectralField> best_coeffs;
  auto consider = [&](const ComplexField& v, const char* family) {
    ++est.evaluations;
    if (v.is_zero() || !v.all_finite()) return;
    const double r = gn_ratio(v, m, ell);
    if (std::isfinite(r) && r > est.lower_bound) {
      est.lower_bound = r;
      est.best_family = family;
      best_coeffs = sine_transform(v);
    }
  };

  const auto structured = structured_candidates(domain);
  const int N = domain.dims();
  const int kr = N == 1 ? 24 : (N == 2 ? 10 : 6);
  const auto modes = low_modes(domain, kr);
  const auto& lambda = laplacian_eigenvalues(domain);
  const double lambda1 = lambda.at(0);
  const double steps[] = {0.3, 0.1, 0.03};

  for (int i = 0; i < budget; ++i) {
    if (static_cast<std::size_t>(i) < structured.size()) {
      consider(structured[i](), "structured");
      continue;
    }
    const auto j = i - static_cast<int>(structured.size());
    if (j % 2 == 0 || !best_coeffs) {
      SpectralField c(domain);
      const double s = 0.75 + 1.75 * uniform(rng);
      for (std::size_t k : modes) {
        const double decay = std::pow(1.0 + lambda[k] / lambda1, -s);
        c.coeffs()[k] = Complex(normal(rng), normal(rng)) * decay;
      }
      consider(inverse_sine_transform(c), "random-smooth");
    } else {
      SpectralField c = *best_coeffs;
      double cmax = 0.0;
      for (std::size_t k : modes) cmax = std::max(cmax, std::abs(c.coeffs()[k]));
      const std::size_t pick = modes[static_cast<std::size_t>(uniform(rng) * modes.size()) % modes.size()];
      const double eta = steps[(j / 2) % 3];
      c.coeffs()[pick] += eta * cmax * Complex(normal(rng), normal(rng));
      consider(inverse_sine_transform(c), "local-search");
    }
  }
  est.value = est.lower_bound * safety_factor;
  return est;
}

}  // namespace dnls
