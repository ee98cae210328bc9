#include "dnls/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "dnls/analysis.hpp"
#include "dnls/critical_source.hpp"
#include "dnls/field_io.hpp"
#include "dnls/gn_estimate.hpp"
#include "dnls/odi.hpp"

namespace dnls {

namespace {

using report::Json;

void say(const ScenarioOptions& o, const std::string& msg) {
  if (o.log) o.log(msg);
}

std::vector<int> per_axis(const std::vector<int>& v, int dims) {
  return v.size() == 1 ? std::vector<int>(static_cast<std::size_t>(dims), v.front()) : v;
}

int resolve_ell(const RunConfig& cfg) {
  return cfg.analysis.ell > 0 ? cfg.analysis.ell : odi::default_ell(cfg.domain.dims);
}

ComplexField unit_profile(const RunConfig& cfg, const ComplexField& u0) {
  ComplexField phi = cfg.source.profile == "sine" || u0.is_zero()
                         ? ComplexField::sine_mode(u0.domain(), per_axis(cfg.source.profile_modes,
                                                                          u0.domain().dims()))
                         : u0;
  phi *= 1.0 / norm_l2(phi);
  return phi;
}

bool contains(const std::vector<std::string>& v, const char* s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::vector<std::string> default_checks(const RunConfig& cfg) {
  std::vector<std::string> c{"mass_residual"};
  if (cfg.analysis.dt_levels > 1) c.push_back("residual_order");
  if (cfg.model.a_im > 0.0) c.push_back("mass_monotone");
  if (cfg.source.kind == "designed") {
    c.push_back("critical_preconditions");
    c.push_back("extinction_at_T0");
    if (cfg.analysis.negative_control > 0.0) c.push_back("negative_control");
  } else if (cfg.model.m < 1.0 && cfg.model.a_im > 0.0) {
    c.push_back("extinction_detected");
    c.push_back("extinction_sandwich");
    if (cfg.analysis.dt_levels > 1) c.push_back("extinction_dt_agreement");
  } else if (cfg.model.m == 1.0 && cfg.source.kind == "zero") {
    c.push_back("exponential_law");
  }
  if (cfg.analysis.companion_m > 0.0) {
    c.push_back("longtime_vanishing");
    c.push_back("longtime_vanishing_companion");
  }
  return c;
}

Json thresholds_json(const RunConfig& cfg) {
  Json t;
  t["residual_tol"] = cfg.analysis.residual_tol > 0.0 ? cfg.analysis.residual_tol
                                                      : (cfg.model.m == 1.0 ? 1e-4 : 1e-2);
  t["min_residual_ratio"] = 2.0;
  t["exp_law_tol"] = cfg.analysis.exp_law_tol;
  t["dt_agreement"] = cfg.analysis.dt_agreement;
  t["vanish_fraction"] = cfg.analysis.vanish_fraction;
  t["at_T0_ratio"] = 1e-8;
  t["confirm_rows"] = 10;
  t["odi_tol"] = 1e-5;
  return t;
}

Json nullable(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

struct LevelSummary {
  double dt = 0.0;
  double max_residual = 0.0;
  std::optional<double> t_num;
  double T_lower = NAN;
  double T_upper = NAN;
};

struct BoundsInputs {
  bool enabled = false;
  int ell = 1;
  double c_gn = 0.0;
  double sup_apriori = 0.0;
};

LevelSummary summarize(const Trajectory& traj, const ModelParams& p, const BoundsInputs& b) {
  LevelSummary s;
  s.dt = p.dt;
  const auto times = traj.times();
  const auto l2 = traj.l2_norms();
  s.t_num = analysis::detect_extinction(times, l2, traj.initial_l2, p.extinction_floor);
  const double window = report::residual_window_end(p.m(), s.t_num, p.source.support_end(),
                                                    times.empty() ? 0.0 : times.back());
  s.max_residual = analysis::mass_residual(traj, p).max_abs_before(window);
  if (b.enabled) {
    const double T0 = p.source.support_end();
    const double y0 = analysis::l2_at(times, l2, T0);
    const double sup = std::max(analysis::trajectory_sup_hl(traj, b.ell), b.sup_apriori);
    s.T_lower = analysis::extinction_lower_bound(y0, p, T0);
    s.T_upper = analysis::extinction_upper_bound(y0, sup, b.c_gn, p, T0, b.ell);
  }
  return s;
}

Json summary_json(const Trajectory& traj, double T0, double floor_ratio) {
  const auto times = traj.times();
  const auto l2 = traj.l2_norms();
  double after = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= T0 && times[i] <= T0 + 1.0 + 1e-9) after = std::max(after, l2[i]);
  }
  Json j;
  const double n0 = traj.initial_l2 > 0.0 ? traj.initial_l2 : 1.0;
  j["l2_ratio_at_T0"] = analysis::l2_at(times, l2, T0) / n0;
  j["max_after_T0_ratio"] = after / n0;
  j["floor_ratio"] = floor_ratio;
  return j;
}

// ---------------------------------------------------------------------------

ScenarioResult run_odi(const RunConfig& cfg, const ScenarioOptions& opt) {
  struct Case {
    const char* regime;
    double alpha, delta, y0;
  };
  const std::array<Case, 3> cases{{{"sub", 0.5, 0.5, 1.0}, {"linear", 1.0, 1.0, 1.0},
                                   {"super", 0.5, 2.0, 1.0}}};
  Json regimes = Json::array();
  for (const auto& c : cases) {
    say(opt, std::string("odi oracle: ") + c.regime);
    const odi::OdiParams p{c.alpha, c.delta, 0.0, c.y0};
    odi::OracleOptions o;
    o.t_end = 10.0;
    o.dt = 1e-4;
    o.stride = 100;
    const auto trace = odi::odi_oracle(p, o);
    Json e;
    e["regime"] = c.regime;
    e["alpha"] = c.alpha;
    e["delta"] = c.delta;
    e["T0"] = 0.0;
    e["y0"] = c.y0;
    e["first_zero"] = nullable(odi::first_zero(trace));
    if (c.delta < 1.0) e["extinction_time"] = odi::extinction_time_sub(p);
    e["t"] = trace.t;
    e["y"] = trace.y;
    regimes.push_back(std::move(e));
  }
  Json r;
  r["odi"]["regimes"] = std::move(regimes);
  r["checks"] = cfg.analysis.checks.empty() ? Json::array({"odi_envelopes"}) : Json(cfg.analysis.checks);
  return {std::move(r), std::nullopt, {}, false};
}

ScenarioResult run_gn(const RunConfig& cfg, const ScenarioOptions& opt) {
  const BoxDomain dom = cfg.box();
  const int ell = resolve_ell(cfg);
  const int budget = cfg.analysis.gn_budget;
  say(opt, "gn estimate: budget " + std::to_string(budget));
  const GnEstimate est = estimate_gn_constant(dom, cfg.model.m, ell, budget, cfg.run.seed,
                                              cfg.analysis.safety_factor);
  const GnEstimate again = estimate_gn_constant(dom, cfg.model.m, ell, budget, cfg.run.seed,
                                                cfg.analysis.safety_factor);
  Json curve = Json::array();
  for (int b : {budget / 8, budget / 4, budget / 2, budget}) {
    if (b < 1) continue;
    curve.push_back(estimate_gn_constant(dom, cfg.model.m, ell, b, cfg.run.seed, 1.0).lower_bound);
  }
  Json g;
  g["m"] = cfg.model.m;
  g["ell"] = ell;
  g["budget"] = budget;
  g["seed"] = cfg.run.seed;
  g["lower_bound"] = est.lower_bound;
  g["safety_factor"] = est.safety_factor;
  g["value"] = est.value;
  g["evaluations"] = est.evaluations;
  g["best_family"] = est.best_family;
  g["repeat_values"] = Json::array({est.lower_bound, again.lower_bound});
  g["budget_curve"] = std::move(curve);
  g["m1_lower_bound"] = estimate_gn_constant(dom, 1.0, ell, std::min(budget, 64), cfg.run.seed).lower_bound;
  Json r;
  r["gn"] = std::move(g);
  r["checks"] = cfg.analysis.checks.empty()
                    ? Json::array({"gn_reproducible", "gn_budget_monotone", "gn_m1_identity"})
                    : Json(cfg.analysis.checks);
  r["notes"] = Json::array({"the estimate is the best ratio found times the safety factor; "
                            "the exact constant is not known"});
  return {std::move(r), std::nullopt, {}, false};
}

ScenarioResult run_pde(const RunConfig& cfg, const ScenarioOptions& opt) {
  const BoxDomain dom = cfg.box();
  const DampingCoefficient damping = cfg.damping();
  const int ell = resolve_ell(cfg);
  const int N = dom.dims();
  const std::vector<std::string> checks =
      cfg.analysis.checks.empty() ? default_checks(cfg) : cfg.analysis.checks;
  Json notes = Json::array();

  ComplexField u0 = build_initial(cfg, dom);
  const bool designed = cfg.source.kind == "designed";
  const bool want_bounds = contains(checks, "extinction_sandwich") ||
                           contains(checks, "extinction_dt_agreement");

  std::optional<GnEstimate> gn;
  if (want_bounds || designed) {
    say(opt, "estimating the interpolation constant (budget " +
                 std::to_string(cfg.analysis.gn_budget) + ")");
    gn = estimate_gn_constant(dom, cfg.model.m, ell, cfg.analysis.gn_budget, cfg.run.seed,
                              cfg.analysis.safety_factor);
    notes.push_back("C_GN is the largest interpolation ratio found times the safety factor; "
                    "the exact constant is not known");
  }

  Json critical;
  SourceSpec source;
  double rescale = 1.0;
  if (designed) {
    ModelParams probe = build_params(cfg, SourceSpec::zero());
    const ComplexField phi = unit_profile(cfg, u0);
    std::optional<CriticalSourceDesign> design;
    for (int attempt = 0; attempt < 8 && !design; ++attempt) {
      try {
        design = design_critical_source(u0, probe, cfg.source.T0, gn->value, ell, phi);
      } catch (const SmallnessViolation& e) {
        if (!cfg.analysis.auto_rescale || e.required_scale() <= 0.0) throw;
        const double f = e.required_scale() * cfg.analysis.rescale_margin;
        say(opt, "smallness condition fails; rescaling u0 by " + std::to_string(f));
        u0 *= f;
        rescale *= f;
      }
    }
    if (!design) throw std::runtime_error("critical source design did not converge");
    source = design->source;
    critical["T0"] = design->T0;
    critical["ell"] = design->ell;
    critical["delta"] = design->delta;
    critical["c_gn"] = design->c_gn;
    critical["epsilon_star"] = design->epsilon_star;
    critical["sup_bound"] = design->sup_bound;
    critical["amplitude"] = design->amplitude;
    critical["exponent"] = design->exponent;
    critical["u0_rescale"] = rescale;
  } else {
    source = build_source(cfg, u0);
  }

  const ModelParams params = build_params(cfg, source);
  const double sup_apriori = ell <= 2 ? apriori_hl_bound(u0, damping, source, ell) : 0.0;
  BoundsInputs bounds{want_bounds && damping.m() < 1.0 && 2 * ell > N, ell,
                      gn ? gn->value : 0.0, sup_apriori};

  std::optional<Trajectory> base;
  std::vector<LevelSummary> levels;
  for (int k = 0; k < cfg.analysis.dt_levels; ++k) {
    ModelParams p = params;
    p.dt = params.dt / std::pow(2.0, k);
    if (k > 0) p.snapshot_stride = std::numeric_limits<int>::max();
    say(opt, "simulating dt = " + std::to_string(p.dt));
    Trajectory traj = run_simulation(u0, p);
    levels.push_back(summarize(traj, p, bounds));
    if (k == 0) base = std::move(traj);
  }

  Json r;
  r["model"] = report::model_to_json(params, ell);
  r["seed"] = cfg.run.seed;
  r["initial"] = {{"kind", cfg.initial.kind},
                  {"amplitude", cfg.initial.amplitude * rescale},
                  {"l2", base->initial_l2}};
  r["initial_l2"] = base->initial_l2;
  r["thresholds"] = thresholds_json(cfg);

  Json conv;
  conv["levels"] = Json::array();
  for (const auto& lv : levels) {
    conv["levels"].push_back({{"dt", lv.dt},
                              {"max_residual", lv.max_residual},
                              {"T_num", nullable(lv.t_num)},
                              {"T_lower", std::isfinite(lv.T_lower) ? Json(lv.T_lower) : Json(nullptr)},
                              {"T_upper", std::isfinite(lv.T_upper) ? Json(lv.T_upper) : Json(nullptr)}});
  }
  if (levels.size() >= 2 && levels[1].max_residual > 0.0) {
    double worst = HUGE_VAL;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
      worst = std::min(worst, std::log2(levels[i].max_residual / levels[i + 1].max_residual));
    }
    conv["order"] = worst;
  } else {
    conv["order"] = nullptr;
  }
  r["convergence"] = std::move(conv);

  if (bounds.enabled) {
    const auto times = base->times();
    const auto l2 = base->l2_norms();
    const double T0 = params.source.support_end();
    Json ext;
    ext["T0"] = T0;
    ext["T_num"] = nullable(levels[0].t_num);
    ext["T_lower"] = levels[0].T_lower;
    ext["T_upper"] = levels[0].T_upper;
    ext["l2_at_T0"] = analysis::l2_at(times, l2, T0);
    ext["sup_hl_trajectory"] = analysis::trajectory_sup_hl(*base, ell);
    ext["sup_hl_apriori"] = sup_apriori;
    ext["sup_hl"] = std::max(analysis::trajectory_sup_hl(*base, ell), sup_apriori);
    ext["c_gn_lower"] = gn->lower_bound;
    ext["safety_factor"] = gn->safety_factor;
    ext["c_gn"] = gn->value;
    ext["gn_budget"] = cfg.analysis.gn_budget;
    r["extinction"] = std::move(ext);
    notes.push_back("sup_Hl is the larger of the trajectory maximum and the data-side a-priori "
                    "bound; the supremum for the exact solution is not available");
  }

  if (designed) {
    const SourcePrecheck pre = check_critical_preconditions(u0, params, cfg.source.T0, gn->value, ell);
    critical["precheck"] = {{"sup_bound", pre.sup_bound},
                            {"smallness_lhs", pre.smallness_lhs},
                            {"smallness_rhs", pre.smallness_rhs},
                            {"smallness_ok", pre.smallness_ok},
                            {"worst_decay_ratio", pre.worst_decay_ratio},
                            {"decay_ok", pre.decay_ok}};
    if (cfg.analysis.negative_control > 0.0) {
      const double factor = cfg.analysis.negative_control;
      ModelParams pn = params;
      pn.source = params.source.scaled(factor);
      pn.snapshot_stride = std::numeric_limits<int>::max();
      const SourcePrecheck pre_n = check_critical_preconditions(u0, pn, cfg.source.T0, gn->value, ell);
      say(opt, "negative control: source x" + std::to_string(factor));
      const Trajectory tn = run_simulation(u0, pn);
      Json nc = summary_json(tn, cfg.source.T0, params.extinction_floor);
      nc["factor"] = factor;
      nc["smallness_ok"] = pre_n.smallness_ok;
      nc["decay_ok"] = pre_n.decay_ok;
      nc["smallness_lhs"] = pre_n.smallness_lhs;
      nc["smallness_rhs"] = pre_n.smallness_rhs;
      nc["worst_decay_ratio"] = pre_n.worst_decay_ratio;
      critical["negative_control"] = std::move(nc);
    }
    r["critical"] = std::move(critical);
    if (gn) {
      r["gn"] = {{"lower_bound", gn->lower_bound}, {"safety_factor", gn->safety_factor},
                 {"value", gn->value}, {"budget", cfg.analysis.gn_budget}};
    }
  }

  if (cfg.analysis.companion_m > 0.0) {
    RunConfig comp_cfg = cfg;
    comp_cfg.model.m = cfg.analysis.companion_m;
    ModelParams pc = build_params(comp_cfg, source);
    pc.snapshot_stride = std::numeric_limits<int>::max();
    say(opt, "companion run with m = " + std::to_string(pc.m()));
    const Trajectory tc = run_simulation(u0, pc);
    r["companion"] = {{"model", report::model_to_json(pc, ell)},
                      {"initial_l2", tc.initial_l2},
                      {"ledger", report::ledger_to_json(tc)}};
  }

  r["ledger"] = report::ledger_to_json(*base);
  r["checks"] = checks;
  r["notes"] = std::move(notes);
  return {std::move(r), std::move(base), {}, false};
}

}  // namespace

ComplexField build_initial(const RunConfig& cfg, const BoxDomain& domain) {
  const auto& in = cfg.initial;
  if (in.kind == "zero") return ComplexField(domain);
  if (in.kind == "sine") {
    return ComplexField::sine_mode(domain, per_axis(in.modes, domain.dims()), in.amplitude);
  }
  if (in.kind == "gaussian") {
    std::vector<double> center = in.center.empty() ? std::vector<double>{0.5} : in.center;
    if (center.size() == 1) center.assign(static_cast<std::size_t>(domain.dims()), center.front());
    return ComplexField::sample(domain, [&](const std::array<double, 3>& x) {
      double r2 = 0.0, window = 1.0;
      for (int j = 0; j < domain.dims(); ++j) {
        const double L = domain.length(j);
        const double z = (x[j] - center[j] * L) / (in.width * L);
        r2 += z * z;
        window *= std::sin(std::acos(-1.0) * x[j] / L);
      }
      return Complex(in.amplitude * std::exp(-0.5 * r2) * window);
    });
  }
  ComplexField u = load_field(in.path, SnapshotFormat::csv);
  require_same_domain(u.domain(), domain);
  u *= in.amplitude;
  return u;
}

SourceSpec build_source(const RunConfig& cfg, const ComplexField& u0) {
  const auto& s = cfg.source;
  if (s.kind == "zero") return SourceSpec::zero();
  const ComplexField phi = unit_profile(cfg, u0);
  if (s.kind == "compact") return SourceSpec::compact_support(s.T0, s.amplitude, phi);
  if (s.kind == "critical") return SourceSpec::critical_decay(s.T0, s.amplitude, s.exponent, phi);
  if (s.kind == "table") return SourceSpec::table(s.times, s.values, phi);
  throw std::invalid_argument("build_source: a designed source needs the scenario runner");
}

ModelParams build_params(const RunConfig& cfg, SourceSpec source) {
  const int ell = resolve_ell(cfg);
  ModelParams p{cfg.damping(), cfg.box(), std::move(source)};
  p.t_end = cfg.run.t_end;
  p.dt = cfg.run.dt;
  p.scheme = cfg.run.scheme;
  p.snapshot_stride = cfg.run.stride;
  p.h2_regular = ell >= 2;
  p.validate();
  return p;
}

ScenarioResult run_scenario(const RunConfig& cfg, const ScenarioOptions& options) {
  ScenarioResult res;
  if (cfg.analysis.scenario == "odi-regimes") {
    res = run_odi(cfg, options);
  } else if (cfg.analysis.scenario == "gn-estimate") {
    res = run_gn(cfg, options);
  } else {
    res = run_pde(cfg, options);
  }

  Json out;
  out["scenario"] = cfg.analysis.scenario;
  out["statement"] = cfg.analysis.statement;
  out["generated_at"] = options.timestamp ? Json(report::utc_timestamp()) : Json(nullptr);
  out["config"] = cfg.document.to_text();
  if (!res.report.contains("thresholds")) out["thresholds"] = thresholds_json(cfg);
  for (auto& [k, v] : res.report.items()) out[k] = std::move(v);
  res.verdicts = report::evaluate_verdicts(out);
  res.pass = report::all_pass(res.verdicts);
  out["verdicts"] = report::verdicts_to_json(res.verdicts);
  out["pass"] = res.pass;
  res.report = std::move(out);
  return res;
}

// ---------------------------------------------------------------------------

namespace {

struct Preset {
  const char* name;
  const char* text;
};

constexpr Preset kPresets[] = {
    {"mass-law-m1", R"cfg([domain]
dims = 1
lengths = pi
points = 255

[model]
a_re = 0
a_im = 1
m = 1

[initial]
kind = sine
modes = 1
amplitude = 1

[source]
kind = zero

[run]
t_end = 2
dt = 1e-3
stride = 100
scheme = strang
seed = 42

[analysis]
scenario = mass-law-m1
statement = "exponential decay of the L2 norm under linear damping (m = 1, no source)"
checks = exponential_law, mass_residual, residual_order, mass_monotone
dt_levels = 2
)cfg"},
    {"extinction-sandwich-1d", R"cfg([domain]
dims = 1
lengths = pi
points = 255

[model]
a_re = 0
a_im = 1
m = 0.5

[initial]
kind = sine
modes = 1
amplitude = 1

[source]
kind = zero

[run]
t_end = 6
dt = 1e-3
stride = 100
scheme = strang
seed = 42

[analysis]
scenario = extinction-sandwich-1d
statement = "finite-time extinction between the explicit lower and upper extinction-time bounds (1D, sublinear damping)"
checks = mass_residual, residual_order, mass_monotone, extinction_detected, extinction_sandwich, extinction_dt_agreement
gn_budget = 400
safety_factor = 2
dt_levels = 2
)cfg"},
    {"extinction-sandwich-2d", R"cfg([domain]
dims = 2
lengths = pi
points = 127

[model]
a_re = 0
a_im = 1
m = 0.5

[initial]
kind = sine
modes = 1
amplitude = 1

[source]
kind = zero

[run]
t_end = 4
dt = 1e-3
stride = 500
scheme = strang
seed = 42

[analysis]
scenario = extinction-sandwich-2d
statement = "finite-time extinction between the explicit lower and upper extinction-time bounds (2D, sublinear damping, H2 norm)"
checks = mass_residual, residual_order, mass_monotone, extinction_detected, extinction_sandwich, extinction_dt_agreement
ell = 2
gn_budget = 200
safety_factor = 2
dt_levels = 2
)cfg"},
    {"critical-source", R"cfg([domain]
dims = 1
lengths = 2*pi
points = 255

[model]
a_re = 0
a_im = 1
m = 0.7

[initial]
kind = sine
modes = 1
amplitude = 1

[source]
kind = designed
T0 = 10
profile = initial

[run]
t_end = 12
dt = 1e-3
stride = 500
scheme = strang
seed = 42

[analysis]
scenario = critical-source
statement = "extinction exactly at T0 under a critically decaying source with small data"
checks = mass_residual, residual_order, critical_preconditions, extinction_at_T0, negative_control
gn_budget = 400
safety_factor = 2
dt_levels = 2
auto_rescale = true
rescale_margin = 0.5
negative_control = 1000
)cfg"},
    {"longtime-vanishing", R"cfg([domain]
dims = 1
lengths = pi
points = 255

[model]
a_re = 0
a_im = 1
m = 1

[initial]
kind = sine
modes = 1
amplitude = 1

[source]
kind = compact
T0 = 1
amplitude = 1
profile = sine
profile_modes = 2

[run]
t_end = 16
dt = 1e-3
stride = 1000
scheme = strang
seed = 42

[analysis]
scenario = longtime-vanishing
statement = "vanishing of the solution for large times under a compactly supported source"
checks = longtime_vanishing, longtime_vanishing_companion, mass_monotone, mass_residual, residual_order
companion_m = 0.5
vanish_fraction = 1e-3
dt_levels = 2
)cfg"},
    {"odi-regimes", R"cfg([analysis]
scenario = odi-regimes
statement = "closed-form solutions of y' + 2 alpha y^delta = 0 against an RK4 oracle (sub-linear, linear, super-linear)"
checks = odi_envelopes
)cfg"},
    {"gn-estimate", R"cfg([domain]
dims = 1
lengths = pi
points = 255

[model]
a_re = 0
a_im = 1
m = 0.5

[run]
seed = 42

[analysis]
scenario = gn-estimate
statement = "numerical lower bound for the Gagliardo-Nirenberg interpolation constant"
checks = gn_reproducible, gn_budget_monotone, gn_m1_identity
ell = 1
gn_budget = 400
safety_factor = 2
)cfg"},
};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : kPresets) out.emplace_back(p.name);
  return out;
}

std::optional<std::string> preset_text(std::string_view name) {
  for (const auto& p : kPresets) {
    if (name == p.name) return std::string(p.text);
  }
  return std::nullopt;
}

RunConfig preset_config(std::string_view name) {
  const auto text = preset_text(name);
  if (!text) throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  return interpret(ConfigDocument::parse(*text, "preset:" + std::string(name)));
}

}  // namespace dnls
