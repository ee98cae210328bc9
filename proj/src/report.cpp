#include "dnls/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "dnls/analysis.hpp"
#include "dnls/odi.hpp"

namespace dnls::report {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double get_or(const Json& j, const char* key, double fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<double>();
}

struct LedgerView {
  std::vector<double> t, mass, lmp1, pairing, h1, h2, l2;

  explicit LedgerView(const Json& j)
      : t(number_array(j, "t")),
        mass(number_array(j, "mass")),
        lmp1(number_array(j, "lmp1")),
        pairing(number_array(j, "pairing")),
        h1(number_array(j, "h1")),
        h2(number_array(j, "h2")) {
    l2.reserve(mass.size());
    for (double m : mass) l2.push_back(std::sqrt(std::max(m, 0.0)));
  }
};

struct Context {
  const Json& report;
  const Json& model;
  const Json& thresholds;
  LedgerView ledger;
  double initial_l2;
  double support_end;

  double threshold(const char* key, double fallback) const {
    return get_or(thresholds, key, fallback);
  }
  std::optional<double> t_num() const {
    return analysis::detect_extinction(ledger.t, ledger.l2, initial_l2,
                                       get_or(model, "extinction_floor", 1e-10),
                                       static_cast<int>(threshold("confirm_rows", 10)));
  }
  double sup_hl_trajectory() const {
    const int ell = model.at("ell").get<int>();
    const auto& col = ell == 1 ? ledger.h1 : ledger.h2;
    double s = 0.0;
    for (double v : col) {
      if (std::isnan(v)) return kNaN;
      s = std::max(s, v);
    }
    return s;
  }
  double residual_window_end() const {
    return report::residual_window_end(model.at("m").get<double>(), t_num(), support_end,
                                       ledger.t.empty() ? 0.0 : ledger.t.back());
  }
  double residual_max() const {
    const auto s = analysis::mass_residual(ledger.t, ledger.mass, ledger.lmp1, ledger.pairing,
                                           model.at("a_im").get<double>());
    return s.max_abs_before(residual_window_end());
  }
};

Verdict check_exponential_law(const Context& c) {
  Verdict v{"exponential_law", false, 0.0, c.threshold("exp_law_tol", 1e-4), ""};
  if (c.model.at("m").get<double>() != 1.0) {
    v.detail = "requires m = 1";
    return v;
  }
  const double a_im = c.model.at("a_im").get<double>();
  const double T0 = c.support_end;
  const double y0 = analysis::l2_at(c.ledger.t, c.ledger.l2, T0);
  double worst = 0.0;
  for (std::size_t i = 0; i < c.ledger.t.size(); ++i) {
    if (c.ledger.t[i] < T0) continue;
    const double pred = y0 * std::exp(-a_im * (c.ledger.t[i] - T0));
    worst = std::max(worst, std::abs(c.ledger.l2[i] - pred) / pred);
  }
  v.value = worst;
  v.pass = worst <= v.threshold;
  v.detail = "max relative deviation from ||u(T0)|| exp(-Im(a)(t-T0))";
  return v;
}

Verdict check_mass_residual(const Context& c) {
  Verdict v{"mass_residual", false, 0.0, 0.0, ""};
  const double m = c.model.at("m").get<double>();
  v.threshold = c.threshold("residual_tol", m == 1.0 ? 1e-4 : 1e-2);
  v.value = c.residual_max();
  v.pass = v.value <= v.threshold;
  v.detail = "max |mass-law residual| / peak mass on [0, " + fmt(c.residual_window_end()) + "]";
  return v;
}

Verdict check_residual_order(const Context& c) {
  Verdict v{"residual_order", false, 0.0, c.threshold("min_residual_ratio", 2.0), ""};
  if (!c.report.contains("convergence")) {
    v.detail = "no convergence study in report";
    return v;
  }
  const auto& levels = c.report.at("convergence").at("levels");
  if (levels.size() < 2) {
    v.detail = "need at least two dt levels";
    return v;
  }
  std::vector<double> r;
  r.push_back(c.residual_max());
  for (std::size_t i = 1; i < levels.size(); ++i) r.push_back(levels[i].at("max_residual").get<double>());
  double worst = std::numeric_limits<double>::infinity();
  std::string ratios;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double ratio = r[i + 1] > 0.0 ? r[i] / r[i + 1] : std::numeric_limits<double>::infinity();
    worst = std::min(worst, ratio);
    ratios += (i ? ", " : "") + fmt(ratio);
  }
  // Residuals at rounding level carry no order information.
  const bool converged = r.front() <= 1e-13;
  v.value = worst;
  v.pass = converged || worst >= v.threshold;
  v.detail = "residual ratios under dt halving: " + ratios + "; observed order " +
             fmt(std::log2(worst));
  return v;
}

Verdict check_mass_monotone(const Context& c) {
  Verdict v{"mass_monotone", false, 0.0, 1e-12, ""};
  const auto& m = c.ledger.mass;
  if (m.empty()) {
    v.pass = true;
    return v;
  }
  const double peak = *std::max_element(m.begin(), m.end());
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    if (c.ledger.t[i] >= c.support_end && peak > 0.0) {
      worst = std::max(worst, (m[i + 1] - m[i]) / peak);
    }
  }
  v.value = worst;
  v.pass = analysis::mass_nonincreasing_after(c.ledger.t, m, c.support_end);
  v.detail = "largest step increase of mass after t = " + fmt(c.support_end) + " (relative to peak)";
  return v;
}

Verdict check_extinction_detected(const Context& c) {
  Verdict v{"extinction_detected", false, kNaN, c.threshold("confirm_rows", 10), ""};
  const auto tn = c.t_num();
  v.pass = tn.has_value();
  v.value = tn.value_or(kNaN);
  v.detail = tn ? "numerical extinction at t = " + fmt(*tn) : "no extinction within the horizon";
  return v;
}

struct Bounds {
  double T_lower = kNaN;
  double T_upper = kNaN;
  double sup = kNaN;
};

Bounds recompute_bounds(const Context& c) {
  const Json& ext = c.report.at("extinction");
  const double T0 = c.support_end;
  const double y0 = analysis::l2_at(c.ledger.t, c.ledger.l2, T0);
  const double m = c.model.at("m").get<double>();
  const double a_im = c.model.at("a_im").get<double>();
  Bounds b;
  b.T_lower = analysis::extinction_lower_bound(y0, m, a_im, c.model.at("volume").get<double>(), T0);
  b.sup = std::max(c.sup_hl_trajectory(), get_or(ext, "sup_hl_apriori", 0.0));
  b.T_upper = analysis::extinction_upper_bound(y0, b.sup, ext.at("c_gn").get<double>(),
                                               c.model.at("dims").get<int>(), m, a_im, T0,
                                               c.model.at("ell").get<int>());
  return b;
}

Verdict check_extinction_sandwich(const Context& c) {
  Verdict v{"extinction_sandwich", false, kNaN, kNaN, ""};
  const auto tn = c.t_num();
  const Bounds b = recompute_bounds(c);
  v.value = tn.value_or(kNaN);
  v.threshold = b.T_upper;
  v.pass = tn && b.T_lower <= *tn && *tn <= b.T_upper;
  v.detail = "T_lower = " + fmt(b.T_lower) + " <= T_num = " + (tn ? fmt(*tn) : "none") +
             " <= T_upper = " + fmt(b.T_upper) + " (sup_Hl = " + fmt(b.sup) + ")";
  return v;
}

Verdict check_extinction_dt_agreement(const Context& c) {
  Verdict v{"extinction_dt_agreement", false, kNaN, c.threshold("dt_agreement", 0.02), ""};
  if (!c.report.contains("convergence") || c.report.at("convergence").at("levels").size() < 2) {
    v.detail = "need at least two dt levels";
    return v;
  }
  const auto& levels = c.report.at("convergence").at("levels");
  const auto tn0 = c.t_num();
  if (!tn0) {
    v.detail = "no extinction at the base dt";
    return v;
  }
  const Bounds b0 = recompute_bounds(c);
  bool ok = b0.T_lower <= *tn0 && *tn0 <= b0.T_upper;
  double worst = 0.0;
  double prev = *tn0;
  std::string list = fmt(*tn0);
  for (std::size_t i = 1; i < levels.size(); ++i) {
    const auto& lv = levels[i];
    if (lv.at("T_num").is_null()) {
      v.detail = "no extinction at dt = " + fmt(lv.at("dt").get<double>());
      return v;
    }
    const double tn = lv.at("T_num").get<double>();
    ok = ok && lv.at("T_lower").get<double>() <= tn && tn <= lv.at("T_upper").get<double>();
    worst = std::max(worst, std::abs(tn - prev) / prev);
    prev = tn;
    list += ", " + fmt(tn);
  }
  v.value = worst;
  v.pass = ok && worst <= v.threshold;
  v.detail = "T_num per level: " + list + (ok ? "; sandwich holds at every level"
                                              : "; sandwich fails at some level");
  return v;
}

Verdict check_extinction_at_T0(const Context& c) {
  Verdict v{"extinction_at_T0", false, kNaN, c.threshold("at_T0_ratio", 1e-8), ""};
  const double T0 = c.support_end;
  const double floor = get_or(c.model, "extinction_floor", 1e-10) * c.initial_l2;
  const double at = analysis::l2_at(c.ledger.t, c.ledger.l2, T0);
  double after = 0.0;
  bool covered = false;
  for (std::size_t i = 0; i < c.ledger.t.size(); ++i) {
    if (c.ledger.t[i] >= T0 && c.ledger.t[i] <= T0 + 1.0 + 1e-9) after = std::max(after, c.ledger.l2[i]);
    if (c.ledger.t[i] >= T0 + 1.0 - 1e-9) covered = true;
  }
  v.value = c.initial_l2 > 0.0 ? at / c.initial_l2 : 0.0;
  v.pass = covered && v.value <= v.threshold && after <= floor;
  v.detail = "||u(T0)||/||u0|| = " + fmt(v.value) + ", max ||u|| on [T0, T0+1] = " + fmt(after) +
             (covered ? "" : " (horizon shorter than T0 + 1)");
  return v;
}

Verdict check_critical_preconditions(const Context& c) {
  Verdict v{"critical_preconditions", false, kNaN, 1.0, ""};
  const Json& pre = c.report.at("critical").at("precheck");
  const double lhs = pre.at("smallness_lhs").get<double>();
  const double rhs = pre.at("smallness_rhs").get<double>();
  const double decay = pre.at("worst_decay_ratio").get<double>();
  v.value = lhs / rhs;
  v.pass = lhs <= rhs && decay <= 1.0 + 1e-12;
  v.detail = "smallness S^(1-m)/bound = " + fmt(lhs / rhs) + ", decay ratio = " + fmt(decay);
  return v;
}

Verdict check_negative_control(const Context& c) {
  Verdict v{"negative_control", false, kNaN, c.threshold("at_T0_ratio", 1e-8), ""};
  const Json& nc = c.report.at("critical").at("negative_control");
  const double ratio = nc.at("l2_ratio_at_T0").get<double>();
  const double after = nc.at("max_after_T0_ratio").get<double>();
  const double floor = get_or(c.model, "extinction_floor", 1e-10);
  const bool still_extinct = ratio <= v.threshold && after <= floor;
  const bool precondition = nc.at("smallness_ok").get<bool>() && nc.at("decay_ok").get<bool>();
  v.value = ratio;
  v.pass = !(still_extinct && precondition);
  v.detail = "source x" + fmt(nc.at("factor").get<double>()) + ": extinction at T0 " +
             (still_extinct ? "still observed" : "not observed") + ", preconditions " +
             (precondition ? "hold" : "violated");
  return v;
}

Verdict vanishing_verdict(const char* name, const LedgerView& l, const Json& model,
                          double initial_l2, double fraction) {
  Verdict v{name, false, kNaN, fraction, ""};
  const double m = model.at("m").get<double>();
  const auto r = analysis::longtime_vanishing_check(l.t, l.mass, model.at("support_end").get<double>(),
                                                    initial_l2, fraction);
  v.value = r.final_over_peak;
  v.pass = r.monotone_after_support && (m < 1.0 ? r.extinct : r.final_small);
  v.detail = std::string("m = ") + fmt(m) + ": mass " +
             (r.monotone_after_support ? "non-increasing" : "INCREASES") + " after support; " +
             (m < 1.0 ? (r.extinct ? "extinct" : "not extinct")
                      : "final/peak = " + fmt(r.final_over_peak));
  return v;
}

Verdict check_longtime(const Context& c) {
  return vanishing_verdict("longtime_vanishing", c.ledger, c.model, c.initial_l2,
                           c.threshold("vanish_fraction", 1e-3));
}

Verdict check_longtime_companion(const Context& c) {
  const Json& comp = c.report.at("companion");
  return vanishing_verdict("longtime_vanishing_companion", LedgerView(comp.at("ledger")),
                           comp.at("model"), comp.at("initial_l2").get<double>(),
                           c.threshold("vanish_fraction", 1e-3));
}

Verdict check_odi(const Json& entry, double tol) {
  const std::string regime = entry.at("regime").get<std::string>();
  Verdict v{"odi_envelope_" + regime, false, 0.0, tol, ""};
  odi::OdiParams p{entry.at("alpha").get<double>(), entry.at("delta").get<double>(),
                   entry.at("T0").get<double>(), entry.at("y0").get<double>()};
  const auto env = odi::make_envelope(p);
  const auto t = number_array(entry, "t");
  const auto y = number_array(entry, "y");
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    worst = std::max(worst, std::abs(odi::envelope_eval(env, t[i]) - y[i]));
  }
  v.value = worst;
  v.pass = worst <= tol && !t.empty();
  v.detail = "max |closed form - RK4| over " + std::to_string(t.size()) + " samples";
  if (env.regime == odi::Regime::sub) {
    const double zero = get_or(entry, "first_zero", kNaN);
    const double err = std::abs(zero - *env.extinction_time);
    v.pass = v.pass && err <= tol;
    v.detail += "; |first zero - T*| = " + fmt(err);
  }
  return v;
}

Verdict check_gn_reproducible(const Context& c) {
  Verdict v{"gn_reproducible", false, 0.0, 0.0, ""};
  const auto vals = number_array(c.report.at("gn"), "repeat_values");
  v.pass = vals.size() >= 2 &&
           std::all_of(vals.begin(), vals.end(), [&](double x) { return x == vals.front(); });
  v.value = vals.empty() ? kNaN : vals.front();
  v.detail = std::to_string(vals.size()) + " runs with the same seed";
  return v;
}

Verdict check_gn_monotone(const Context& c) {
  Verdict v{"gn_budget_monotone", false, 0.0, 0.0, ""};
  const auto vals = number_array(c.report.at("gn"), "budget_curve");
  v.pass = !vals.empty() && std::is_sorted(vals.begin(), vals.end());
  v.value = vals.empty() ? kNaN : vals.back();
  v.detail = "estimate at increasing budgets is non-decreasing";
  return v;
}

Verdict check_gn_m1(const Context& c) {
  Verdict v{"gn_m1_identity", false, 0.0, 1e-12, ""};
  const double lb = c.report.at("gn").at("m1_lower_bound").get<double>();
  v.value = std::abs(lb - 1.0);
  v.pass = v.value <= v.threshold;
  v.detail = "ratio at m = 1 is identically 1";
  return v;
}

}  // namespace

double residual_window_end(double m, std::optional<double> t_num, double support_end,
                           double t_last) {
  if (m < 1.0 && t_num) return std::max(*t_num, support_end);
  return t_last;
}

Json ledger_to_json(const Trajectory& traj) {
  Json t = Json::array(), mass = Json::array(), lmp1 = Json::array(), pairing = Json::array(),
       h1 = Json::array(), h2 = Json::array(), ext = Json::array();
  for (const auto& r : traj.ledger) {
    t.push_back(r.t);
    mass.push_back(r.mass);
    lmp1.push_back(r.lmp1);
    pairing.push_back(r.pairing);
    h1.push_back(r.h1);
    if (std::isnan(r.h2)) {
      h2.push_back(nullptr);
    } else {
      h2.push_back(r.h2);
    }
    ext.push_back(r.extinct ? 1 : 0);
  }
  Json j;
  j["t"] = std::move(t);
  j["mass"] = std::move(mass);
  j["lmp1"] = std::move(lmp1);
  j["pairing"] = std::move(pairing);
  j["h1"] = std::move(h1);
  j["h2"] = std::move(h2);
  j["extinct"] = std::move(ext);
  return j;
}

std::vector<double> number_array(const Json& j, const char* key) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  for (const auto& x : j.at(key)) out.push_back(x.is_null() ? kNaN : x.get<double>());
  return out;
}

void write_ledger_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,mass,lmp1,pairing,h1,h2,extinct_flag\n";
  char buf[256];
  for (const auto& r : traj.ledger) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.t, r.mass, r.lmp1,
                  r.pairing, r.h1, r.h2, r.extinct ? 1 : 0);
    os << buf;
  }
}

std::vector<Verdict> evaluate_verdicts(const Json& report) {
  static const Json kEmpty = Json::object();
  const Json& model = report.contains("model") ? report.at("model") : kEmpty;
  const Json& thresholds = report.contains("thresholds") ? report.at("thresholds") : kEmpty;
  const Json& ledger = report.contains("ledger") ? report.at("ledger") : kEmpty;
  const Context c{report, model, thresholds, LedgerView(ledger), get_or(report, "initial_l2", 0.0),
                  get_or(model, "support_end", 0.0)};

  std::vector<Verdict> out;
  for (const auto& name_json : report.at("checks")) {
    const std::string name = name_json.get<std::string>();
    try {
      if (name == "exponential_law") out.push_back(check_exponential_law(c));
      else if (name == "mass_residual") out.push_back(check_mass_residual(c));
      else if (name == "residual_order") out.push_back(check_residual_order(c));
      else if (name == "mass_monotone") out.push_back(check_mass_monotone(c));
      else if (name == "extinction_detected") out.push_back(check_extinction_detected(c));
      else if (name == "extinction_sandwich") out.push_back(check_extinction_sandwich(c));
      else if (name == "extinction_dt_agreement") out.push_back(check_extinction_dt_agreement(c));
      else if (name == "extinction_at_T0") out.push_back(check_extinction_at_T0(c));
      else if (name == "critical_preconditions") out.push_back(check_critical_preconditions(c));
      else if (name == "negative_control") out.push_back(check_negative_control(c));
      else if (name == "longtime_vanishing") out.push_back(check_longtime(c));
      else if (name == "longtime_vanishing_companion") out.push_back(check_longtime_companion(c));
      else if (name == "odi_envelopes") {
        for (const auto& e : report.at("odi").at("regimes")) out.push_back(check_odi(e, c.threshold("odi_tol", 1e-5)));
      } else if (name == "gn_reproducible") out.push_back(check_gn_reproducible(c));
      else if (name == "gn_budget_monotone") out.push_back(check_gn_monotone(c));
      else if (name == "gn_m1_identity") out.push_back(check_gn_m1(c));
      else out.push_back({name, false, kNaN, kNaN, "unknown check"});
    } catch (const std::exception& e) {
      out.push_back({name, false, kNaN, kNaN, std::string("cannot evaluate: ") + e.what()});
    }
  }
  return out;
}

Json verdicts_to_json(const std::vector<Verdict>& verdicts) {
  Json arr = Json::array();
  for (const auto& v : verdicts) {
    Json j;
    j["name"] = v.name;
    j["pass"] = v.pass;
    j["value"] = std::isfinite(v.value) ? Json(v.value) : Json(nullptr);
    j["threshold"] = std::isfinite(v.threshold) ? Json(v.threshold) : Json(nullptr);
    j["detail"] = v.detail;
    arr.push_back(std::move(j));
  }
  return arr;
}

bool all_pass(const std::vector<Verdict>& verdicts) {
  return !verdicts.empty() &&
         std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

std::string format_table(const std::vector<Verdict>& verdicts) {
  std::size_t width = 4;
  for (const auto& v : verdicts) width = std::max(width, v.name.size());
  std::ostringstream os;
  for (const auto& v : verdicts) {
    os << (v.pass ? "PASS  " : "FAIL  ") << v.name << std::string(width - v.name.size() + 2, ' ')
       << "value=" << fmt(v.value) << "  threshold=" << fmt(v.threshold) << "  " << v.detail
       << '\n';
  }
  return os.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json model_to_json(const ModelParams& p, int ell) {
  Json j;
  j["a_re"] = p.damping.re();
  j["a_im"] = p.damping.im();
  j["m"] = p.m();
  j["dims"] = p.domain.dims();
  j["lengths"] = p.domain.lengths();
  j["points"] = p.domain.points();
  j["volume"] = p.domain.volume();
  j["dt"] = p.dt;
  j["t_end"] = p.t_end;
  j["scheme"] = to_string(p.scheme);
  j["ell"] = ell;
  j["h2_regular"] = p.h2_regular;
  j["source_kind"] = to_string(p.source.kind());
  j["support_end"] = p.source.support_end();
  j["extinction_floor"] = p.extinction_floor;
  return j;
}

}  // namespace dnls::report
