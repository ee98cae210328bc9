// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dnls/nonlinearity.hpp"
#include "dnls/odi.hpp"
#include "dnls/report.hpp"
#include "dnls/scenario.hpp"
#include "test_support.hpp"

using namespace dnls;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Timed {
  ScenarioResult result;
  double seconds = 0.0;
};

std::map<std::string, Timed> g_runs;

const Timed& preset(const std::string& name) {
  auto it = g_runs.find(name);
  if (it != g_runs.end()) return it->second;
  ScenarioOptions o;
  o.timestamp = false;
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioResult r = run_scenario(preset_config(name), o);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return g_runs.emplace(name, Timed{std::move(r), s}).first->second;
}

const report::Verdict* verdict(const ScenarioResult& r, const std::string& name) {
  for (const auto& v : r.verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Requires each named verdict to be present and passing.
void need(Outcome& o, const ScenarioResult& r, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    const report::Verdict* v = verdict(r, n);
    if (!v) {
      o.pass = false;
      o.detail += std::string(" missing:") + n;
    } else {
      o.pass = o.pass && v->pass;
      o.detail += std::string(" ") + n + "=" + fmt("%.4g", v->value) + (v->pass ? "" : "(FAIL)");
    }
  }
}

void runtime(Outcome& o, double seconds, double limit) {
  o.pass = o.pass && seconds < limit;
  o.detail += " runtime=" + fmt("%.2fs", seconds) + " limit=" + fmt("%.0fs", limit);
}

Outcome exponential_law() {
  const Timed& t = preset("mass-law-m1");
  Outcome o;
  need(o, t.result, {"exponential_law"});
  const auto& m = t.result.report["model"];
  o.pass = o.pass && m["dt"].get<double>() == 1e-3 && m["t_end"].get<double>() == 2.0 && m["m"].get<double>() == 1.0;
  runtime(o, t.seconds, 10.0);
  return o;
}

Outcome sandwich(const char* name, double limit, bool check_lower) {
  const Timed& t = preset(name);
  Outcome o;
  need(o, t.result, {"extinction_detected", "extinction_sandwich", "extinction_dt_agreement"});
  const auto& ext = t.result.report["extinction"];
  if (check_lower) {
    const double want = 2.0 * std::pow(0.5, 0.25);
    const double got = ext["T_lower"].get<double>();
    const bool ok = std::abs(got - want) <= 1e-12 * want;
    o.pass = o.pass && ok;
    o.detail += " T_lower=" + fmt("%.15g", got) + (ok ? "" : "(expected 2*(1/2)^(1/4))");
  }
  o.detail += " T_num=" + fmt("%.4g", ext["T_num"].get<double>()) + " T_upper=" + fmt("%.4g", ext["T_upper"].get<double>());
  runtime(o, t.seconds, limit);
  return o;
}

Outcome critical_source() {
  const Timed& t = preset("critical-source");
  Outcome o;
  need(o, t.result, {"critical_preconditions", "extinction_at_T0", "negative_control"});
  runtime(o, t.seconds, 300.0);
  return o;
}

Outcome mass_residuals() {
  Outcome o;
  for (const char* name : {"mass-law-m1", "extinction-sandwich-1d", "extinction-sandwich-2d", "critical-source",
                           "longtime-vanishing"}) {
    const Timed& t = preset(name);
    const double dt = t.result.report["model"]["dt"].get<double>();
    const double m = t.result.report["model"]["m"].get<double>();
    const double tol = m == 1.0 ? 1e-4 : 1e-2;
    const report::Verdict* r = verdict(t.result, "mass_residual");
    const report::Verdict* ord = verdict(t.result, "residual_order");
    const bool ok = r && ord && r->pass && ord->pass && dt == 1e-3 && r->threshold == tol;
    o.pass = o.pass && ok;
    o.detail += std::string(" ") + name + ":" + (r ? fmt("%.2e", r->value) : std::string("?")) + "/" +
                (ord ? fmt("x%.2f", ord->value) : std::string("?")) + (ok ? "" : "(FAIL)");
  }
  return o;
}

long double profit_ld(long double alpha, long double delta, long double T0, long double x) {
  return 1.0L / (1.0L - delta) * std::pow(T0, -1.0L / (1.0L - delta)) * std::pow(x, delta) *
         (alpha * (1.0L - delta) * T0 - std::pow(x, 1.0L - delta));
}

Outcome odi_closed_forms() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> ua(0.2, 2.0), uy(0.05, 4.0), ut(0.0, 3.0);
  std::uniform_real_distribution<double> dsub(0.05, 0.95), dsup(1.05, 3.0);
  double env_err = 0.0, zero_err = 0.0;
  for (int regime = 0; regime < 3; ++regime) {
    for (int i = 0; i < 100; ++i) {
      const double delta = regime == 0 ? dsub(rng) : (regime == 1 ? 1.0 : dsup(rng));
      const odi::OdiParams p{ua(rng), delta, ut(rng), uy(rng)};
      odi::OracleOptions opt;
      opt.t_end = p.T0 + 10.0;
      const odi::SampledTrace tr = odi::odi_oracle(p, opt);
      const odi::OdiEnvelope e = odi::make_envelope(p);
      for (std::size_t k = 0; k < tr.t.size(); ++k) {
        env_err = std::max(env_err, std::abs(odi::envelope_eval(e, tr.t[k]) - tr.y[k]));
      }
      if (regime == 0) {
        const double ts = odi::extinction_time_sub(p);
        if (ts <= opt.t_end) {
          const auto z = odi::first_zero(tr);
          zero_err = std::max(zero_err, z ? std::abs(*z - ts) : 1.0);
        }
      }
    }
  }
  // argmax of the comparison profit by grid search with refinement (long double oracle)
  double arg_err = 0.0, max_err = 0.0;
  std::uniform_real_distribution<double> dmid(0.1, 0.9), tt(0.2, 5.0);
  for (int i = 0; i < 20; ++i) {
    const double alpha = ua(rng), delta = dmid(rng), T0 = tt(rng);
    const double xs = odi::xstar(alpha, delta, T0), ys = odi::ystar(alpha, delta);
    long double lo = 0.0L, hi = std::pow(static_cast<long double>(alpha) * (1 - delta) * T0, 1.0L / (1 - delta));
    long double best = 0.0L, best_v = -1.0L;
    for (int round = 0; round < 60 && hi - lo > 1e-15L * hi; ++round) {
      const int n = 200;
      for (int k = 0; k <= n; ++k) {
        const long double x = lo + (hi - lo) * k / n;
        const long double v = profit_ld(alpha, delta, T0, x);
        if (v > best_v) best_v = v, best = x;
      }
      const long double w = (hi - lo) / n;
      lo = std::max(0.0L, best - 2 * w);
      hi = best + 2 * w;
    }
    arg_err = std::max(arg_err, std::abs(static_cast<double>(best) - xs) / xs);
    max_err = std::max(max_err, static_cast<double>(std::abs(best_v - ys) / ys));
    max_err = std::max(max_err, std::abs(odi::comparison_profit(alpha, delta, T0, xs) - ys) / ys);
  }
  o.pass = env_err <= 1e-5 && zero_err <= 1e-5 && arg_err <= 1e-8 && max_err <= 1e-8;
  o.detail = " envelope_err=" + fmt("%.2e", env_err) + " first_zero_err=" + fmt("%.2e", zero_err) +
             " argmax_rel=" + fmt("%.2e", arg_err) + " max_rel=" + fmt("%.2e", max_err) + " (300 draws)";
  return o;
}

Outcome scalar_suites() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> lg(-6.0, 3.0), th(0.0, 6.283185307179586), u01(0.0, 1.0);
  auto draw = [&] { return std::polar(std::pow(10.0, lg(rng)), th(rng)); };
  long holder_bad = 0, mono_bad = 0, disagree = 0, pairs = 0;
  for (double m : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
    for (int i = 0; i < 100000; ++i) {
      const Complex z1 = draw();
      const Complex z2 = i % 4 == 0 ? z1 + draw() * 1e-3 : (i % 4 == 1 ? Complex(0.0) : draw());
      ++pairs;
      // independent evaluation in long double
      using LC = std::complex<long double>;
      const LC a(z1), b(z2);
      auto g = [m](LC z) { return std::abs(z) == 0 ? LC(0) : std::pow(std::abs(z), static_cast<long double>(m) - 1) * z; };
      const LC dg = g(a) - g(b), dz = a - b;
      const long double lhs = std::abs(dg), rhs = 3.0L * std::pow(std::abs(dz), static_cast<long double>(m));
      const bool h = lhs <= rhs * (1 + 1e-12L);
      const LC pr = dg * std::conj(dz);
      const long double scale = std::abs(dg) * std::abs(dz);
      const bool mo = pr.real() >= -1e-12L * scale &&
                      2.0L * std::sqrt(static_cast<long double>(m)) * std::abs(pr.imag()) <= (1 - m) * pr.real() + 1e-12L * scale;
      holder_bad += !h;
      mono_bad += !mo;
      disagree += (h != holder_bound_check(z1, z2, m)) + (mo != monotonicity_check(z1, z2, m));
    }
  }
  long acc_bad = 0, acc_samples = 0;
  const BoxDomain d = BoxDomain::cube(1, 3.141592653589793, 31);
  for (int k = 0; k < 10; ++k) {
    const double m = 0.1 + 0.08 * k;
    const double im = 0.5 + u01(rng);
    const double edge = 2.0 * std::sqrt(m) * im / (1.0 - m);
    // k < 4: exactly on the boundary of the dominance condition
    const double re = k < 4 ? (k % 2 ? -edge : edge) : edge * (2.0 * u01(rng) - 1.0);
    const DampingCoefficient a({re, im}, m);
    for (int i = 0; i < 1000; ++i) {
      const ComplexField u = test::random_field(d, rng, std::pow(10.0, lg(rng) / 2));
      const ComplexField v = i % 3 == 0 ? ComplexField(d) : test::random_field(d, rng, std::pow(10.0, lg(rng) / 2));
      ++acc_samples;
      acc_bad += accretivity_pairing(u, v, a) < -1e-12 * accretivity_scale(u, v, a);
    }
  }
  o.pass = holder_bad == 0 && mono_bad == 0 && disagree == 0 && acc_bad == 0;
  o.detail = " pairs=" + std::to_string(pairs) + " holder_violations=" + std::to_string(holder_bad) +
             " monotonicity_violations=" + std::to_string(mono_bad) + " check_disagreements=" + std::to_string(disagree) +
             " accretivity_violations=" + std::to_string(acc_bad) + "/" + std::to_string(acc_samples);
  return o;
}

Outcome exponent_algebra() {
  Outcome o;
  int cases = 0, bad = 0;
  for (int N = 1; N <= 3; ++N) {
    const int ell = N / 2 + 1;
    for (int j = 1; j <= 19; ++j) {
      const double m = 0.05 * j;
      const double d = odi::delta_exponent(N, m, ell);
      const double ratio = (2 * d - 1) / (1 - d);
      const double want = N <= 2 ? 2 * (1 + m) / (1 - m) : 2 * (3 + m) / (1 - m);
      ++cases;
      bad += !(odi::delta_identities_check(N, m, ell) && d > 0.5 && d < 1.0 && std::abs(ratio - want) <= 1e-13 * want);
    }
  }
  o.pass = bad == 0 && odi::default_ell(1) == 1 && odi::default_ell(2) == 2 && odi::default_ell(3) == 2;
  o.detail = " cases=" + std::to_string(cases) + " failures=" + std::to_string(bad);
  return o;
}

Outcome gradient_interpolation() {
  Outcome o;
  std::mt19937_64 rng(99);
  const std::vector<BoxDomain> boxes{BoxDomain::cube(1, 3.141592653589793, 63), BoxDomain({3.0, 1.0}, {15, 9}),
                                     BoxDomain::cube(3, 2.0, 9)};
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const BoxDomain& d = boxes[i % 3];
    const ComplexField u = i % 2 ? test::random_field(d, rng) : test::smooth_field(d, rng, 0.5 + (i % 7) * 0.3);
    bad += !gradient_interpolation_check(u);
  }
  double worst_mode = 0.0;
  for (const BoxDomain& d : boxes) {
    for (int k = 1; k <= 5; ++k) {
      const ComplexField s = ComplexField::sine_mode(d, std::vector<int>(d.dims(), k), Complex(0.3, -1.1));
      const auto n = spectral_norms(s);
      worst_mode = std::max(worst_mode, std::abs(gradient_interpolation_slack(s)) / (n.l2 * n.laplacian));
      bad += !gradient_interpolation_check(s);
    }
  }
  o.pass = bad == 0 && worst_mode <= 1e-12;
  o.detail = " random_fields=10000 violations=" + std::to_string(bad) + " single_mode_rel_slack=" + fmt("%.1e", worst_mode);
  return o;
}

Outcome longtime() {
  const Timed& t = preset("longtime-vanishing");
  Outcome o;
  need(o, t.result, {"longtime_vanishing", "longtime_vanishing_companion"});
  const double T0 = t.result.report["model"]["support_end"].get<double>();
  const double t_end = t.result.report["model"]["t_end"].get<double>();
  const bool horizon = t_end >= T0 + 15.0 - 1e-12;
  o.pass = o.pass && horizon;
  o.detail += " horizon=" + fmt("%.3g", t_end) + (horizon ? "" : "(< T0+15)");
  return o;
}

Outcome determinism() {
  Outcome o;
  ScenarioOptions opt;
  opt.timestamp = false;
  for (const char* name : {"mass-law-m1", "extinction-sandwich-1d", "critical-source", "longtime-vanishing",
                           "gn-estimate"}) {
    const ScenarioResult again = run_scenario(preset_config(name), opt);
    const ScenarioResult& first = preset(name).result;
    bool same = first.report.dump() == again.report.dump();
    if (first.trajectory && again.trajectory) {
      std::ostringstream a, b;
      report::write_ledger_csv(a, *first.trajectory);
      report::write_ledger_csv(b, *again.trajectory);
      same = same && a.str() == b.str();
    }
    o.pass = o.pass && same;
    o.detail += std::string(" ") + name + (same ? ":identical" : ":DIFFERENT");
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  // optional arguments select criteria by number
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "exponential mass law, m = 1", exponential_law},
      {2, "extinction sandwich, 1D", [] { return sandwich("extinction-sandwich-1d", 60.0, true); }},
      {3, "extinction sandwich, 2D", [] { return sandwich("extinction-sandwich-2d", 300.0, false); }},
      {4, "critical source forces extinction at T0", critical_source},
      {5, "mass-balance residual and its order", mass_residuals},
      {6, "ODI closed forms against RK4", odi_closed_forms},
      {7, "scalar inequality suites", scalar_suites},
      {8, "exponent algebra", exponent_algebra},
      {9, "discrete gradient interpolation inequality", gradient_interpolation},
      {10, "long-time vanishing", longtime},
      {11, "determinism", determinism},
  };
  int failures = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string(" exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("AC%02d %s  %s |%s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
