#include "dnls/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dnls/critical_source.hpp"
#include "dnls/field_io.hpp"
#include "dnls/gn_estimate.hpp"
#include "dnls/odi.hpp"
#include "dnls/scenario.hpp"

namespace fs = std::filesystem;

namespace dnls {

namespace {

struct CommonOptions {
  std::string config;
  std::string preset;
  std::string out;
  std::vector<std::string> overrides;
  double dt = 0.0;
  long long seed = -1;
  double safety_factor = 0.0;
  bool no_timestamp = false;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_out = true) {
  cmd->add_option("--config", o.config, "config file");
  cmd->add_option("--preset", o.preset, "named preset");
  if (with_out) cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--set", o.overrides, "override section.key=value (repeatable)");
  cmd->add_option("--dt", o.dt, "override run.dt");
  cmd->add_option("--seed", o.seed, "override run.seed");
  cmd->add_option("--safety-factor", o.safety_factor, "override analysis.safety_factor");
  cmd->add_flag("--no-timestamp", o.no_timestamp, "leave generated_at empty");
  cmd->add_flag("--quiet", o.quiet, "suppress progress messages");
}

std::string shortest(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ConfigDocument load_document(const CommonOptions& o) {
  if (!o.config.empty() && !o.preset.empty()) {
    throw std::invalid_argument("give either --config or --preset, not both");
  }
  ConfigDocument doc;
  if (!o.config.empty()) {
    doc = ConfigDocument::load(o.config);
  } else if (!o.preset.empty()) {
    const auto text = preset_text(o.preset);
    if (!text) throw std::invalid_argument("unknown preset '" + o.preset + "'");
    doc = ConfigDocument::parse(*text, "preset:" + o.preset);
  } else {
    throw std::invalid_argument("one of --config or --preset is required");
  }
  for (const auto& ov : o.overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects section.key=value");
    doc.set(ov.substr(0, eq), ov.substr(eq + 1));
  }
  if (o.dt > 0.0) doc.set("run", "dt", shortest(o.dt));
  if (o.seed >= 0) doc.set("run", "seed", std::to_string(o.seed));
  if (o.safety_factor > 0.0) doc.set("analysis", "safety_factor", shortest(o.safety_factor));
  return doc;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os << text;
}

void write_outputs(const fs::path& dir, const RunConfig& cfg, const ScenarioResult& res) {
  fs::create_directories(dir);
  write_text(dir / "config.toml", cfg.document.to_text());
  write_text(dir / "report.json", res.report.dump(2) + "\n");
  if (!res.trajectory) return;
  {
    std::ofstream os(dir / "ledger.csv", std::ios::binary);
    report::write_ledger_csv(os, *res.trajectory);
  }
  if (cfg.run.snapshots) {
    const bool binary = cfg.run.snapshot_format == "binary";
    const fs::path snaps = dir / "snapshots";
    fs::create_directories(snaps);
    std::size_t i = 0;
    std::ostringstream index;
    index << "index,t,file\n";
    for (const auto& s : res.trajectory->snapshots) {
      char name[64];
      std::snprintf(name, sizeof name, "snap_%06zu.%s", i, binary ? "bin" : "csv");
      save_field((snaps / name).string(), s.state, binary ? SnapshotFormat::binary : SnapshotFormat::csv);
      index << i << ',' << shortest(s.t) << ',' << name << '\n';
      ++i;
    }
    write_text(snaps / "index.csv", index.str());
  }
}

ScenarioOptions scenario_options(const CommonOptions& o, std::ostream& err) {
  ScenarioOptions so;
  so.timestamp = !o.no_timestamp;
  if (!o.quiet) so.log = [&err](const std::string& m) { err << "[dnls] " << m << '\n'; };
  return so;
}

int finish(const ScenarioResult& res, std::ostream& out) {
  out << "scenario: " << res.report.value("scenario", std::string()) << '\n';
  out << "statement: " << res.report.value("statement", std::string()) << '\n';
  out << report::format_table(res.verdicts);
  out << (res.pass ? "RESULT: PASS" : "RESULT: FAIL") << '\n';
  return res.pass ? kExitPass : kExitVerdictFail;
}

int cmd_run(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = interpret(load_document(o));
  const ScenarioResult res = run_scenario(cfg, scenario_options(o, err));
  write_outputs(o.out.empty() ? fs::path("out") : fs::path(o.out), cfg, res);
  return finish(res, out);
}

struct Axis {
  std::string key;
  std::vector<std::string> values;
};

Axis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("--axis expects section.key=range");
  Axis a{spec.substr(0, eq), {}};
  const std::string range = spec.substr(eq + 1);
  if (range.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(range);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_number(item));
    if (parts.size() != 3 || !(parts[2] > 0.0)) {
      throw std::invalid_argument("range must be start:stop:step with step > 0");
    }
    const double n = std::floor((parts[1] - parts[0]) / parts[2] + 1e-9);
    for (long i = 0; i <= static_cast<long>(n); ++i) a.values.push_back(shortest(parts[0] + i * parts[2]));
  } else {
    std::stringstream ss(range);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto b = item.find_first_not_of(' ');
      if (b != std::string::npos) a.values.push_back(item.substr(b, item.find_last_not_of(' ') - b + 1));
    }
  }
  return a;
}

int cmd_sweep(const CommonOptions& o, const std::string& axis_spec, std::ostream& out,
              std::ostream& err) {
  const ConfigDocument base = load_document(o);
  const Axis axis = parse_axis(axis_spec);
  const fs::path dir = o.out.empty() ? fs::path("sweep") : fs::path(o.out);
  if (axis.values.empty()) {
    out << "empty sweep range; nothing to do\n";
    return kExitPass;
  }
  fs::create_directories(dir);
  std::ostringstream summary;
  summary << "index,value,status,pass,T_num,T_lower,T_upper,max_residual,error\n";
  bool any_error = false, any_fail = false;
  for (std::size_t i = 0; i < axis.values.size(); ++i) {
    ConfigDocument doc = base;
    doc.set(axis.key, axis.values[i]);
    std::string status = "ok", error, tnum, tl, tu, resid;
    bool pass = false;
    try {
      const RunConfig cfg = interpret(doc);
      ScenarioOptions so = scenario_options(o, err);
      const ScenarioResult res = run_scenario(cfg, so);
      char name[32];
      std::snprintf(name, sizeof name, "point_%03zu", i);
      write_outputs(dir / name, cfg, res);
      pass = res.pass;
      const auto& r = res.report;
      auto num = [](const report::Json& j) { return j.is_number() ? shortest(j.get<double>()) : std::string(); };
      if (r.contains("extinction")) {
        tnum = num(r["extinction"]["T_num"]);
        tl = num(r["extinction"]["T_lower"]);
        tu = num(r["extinction"]["T_upper"]);
      } else if (r.contains("convergence")) {
        tnum = num(r["convergence"]["levels"][0]["T_num"]);
      }
      if (r.contains("convergence")) resid = num(r["convergence"]["levels"][0]["max_residual"]);
      if (!pass) {
        status = "verdict_fail";
        any_fail = true;
      }
    } catch (const std::exception& e) {
      status = "error";
      error = e.what();
      for (auto& ch : error) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      any_error = true;
    }
    summary << i << ',' << axis.values[i] << ',' << status << ',' << (pass ? 1 : 0) << ',' << tnum
            << ',' << tl << ',' << tu << ',' << resid << ',' << error << '\n';
    out << axis.key << " = " << axis.values[i] << ": " << status << (tnum.empty() ? "" : ", T_num = " + tnum)
        << '\n';
  }
  write_text(dir / "summary.csv", summary.str());
  out << "summary written to " << (dir / "summary.csv").string() << '\n';
  return any_error ? kExitError : (any_fail ? kExitVerdictFail : kExitPass);
}

int cmd_verify(const CommonOptions& o, const std::string& report_path, std::ostream& out,
               std::ostream& err) {
  if (!report_path.empty()) {
    std::ifstream in(report_path);
    if (!in) throw std::runtime_error("cannot open report " + report_path);
    report::Json r = report::Json::parse(in);
    const auto verdicts = report::evaluate_verdicts(r);
    ScenarioResult res{r, std::nullopt, verdicts, report::all_pass(verdicts)};
    return finish(res, out);
  }
  const RunConfig cfg = interpret(load_document(o));
  const ScenarioResult res = run_scenario(cfg, scenario_options(o, err));
  if (!o.out.empty()) write_outputs(o.out, cfg, res);
  return finish(res, out);
}

struct OdiTableOptions {
  std::vector<double> alpha{1.0};
  std::vector<double> delta{0.5, 1.0, 2.0};
  double y0 = 1.0;
  double T0 = 0.0;
  double span = 10.0;
  int samples = 101;
  std::string out;
};

int cmd_odi_table(const OdiTableOptions& o, std::ostream& out) {
  std::ostringstream csv;
  csv << "alpha,delta,T0,y0,regime,extinction_time,ystar,xstar,t,envelope\n";
  for (double alpha : o.alpha) {
    for (double delta : o.delta) {
      const odi::OdiParams p{alpha, delta, o.T0, o.y0};
      const auto env = odi::make_envelope(p);
      const bool sub = delta > 0.0 && delta < 1.0;
      const std::string tstar = env.extinction_time ? shortest(*env.extinction_time) : "";
      const std::string ys = sub ? shortest(odi::ystar(alpha, delta)) : "";
      const std::string xs = sub && o.T0 > 0.0 ? shortest(odi::xstar(alpha, delta, o.T0)) : "";
      for (int i = 0; i < o.samples; ++i) {
        const double t = o.T0 + o.span * i / std::max(o.samples - 1, 1);
        csv << shortest(alpha) << ',' << shortest(delta) << ',' << shortest(o.T0) << ','
            << shortest(o.y0) << ',' << odi::to_string(env.regime) << ',' << tstar << ',' << ys
            << ',' << xs << ',' << shortest(t) << ',' << shortest(odi::envelope_eval(env, t)) << '\n';
      }
    }
  }
  if (o.out.empty()) {
    out << csv.str();
  } else {
    write_text(o.out, csv.str());
  }
  return kExitPass;
}

struct GnOptions {
  CommonOptions common;
  int dims = 1;
  double length = 3.141592653589793;
  int points = 0;
  double m = 0.5;
  int ell = 0;
  int budget = 400;
};

int cmd_gn(const GnOptions& o, std::ostream& out) {
  BoxDomain dom = BoxDomain::cube(o.dims, o.length,
                                  o.points > 0 ? o.points : (o.dims == 1 ? 255 : (o.dims == 2 ? 127 : 47)));
  int ell = o.ell > 0 ? o.ell : odi::default_ell(o.dims);
  double m = o.m;
  int budget = o.budget;
  std::uint64_t seed = o.common.seed >= 0 ? static_cast<std::uint64_t>(o.common.seed) : 42;
  double safety = o.common.safety_factor > 0.0 ? o.common.safety_factor : 2.0;
  if (!o.common.config.empty() || !o.common.preset.empty()) {
    const RunConfig cfg = interpret(load_document(o.common));
    dom = cfg.box();
    ell = cfg.analysis.ell > 0 ? cfg.analysis.ell : odi::default_ell(dom.dims());
    m = cfg.model.m;
    budget = cfg.analysis.gn_budget;
    seed = cfg.run.seed;
    safety = cfg.analysis.safety_factor;
  }
  const GnEstimate est = estimate_gn_constant(dom, m, ell, budget, seed, safety);
  report::Json j;
  j["dims"] = dom.dims();
  j["lengths"] = dom.lengths();
  j["points"] = dom.points();
  j["m"] = m;
  j["ell"] = ell;
  j["budget"] = budget;
  j["seed"] = seed;
  j["lower_bound"] = est.lower_bound;
  j["safety_factor"] = est.safety_factor;
  j["value"] = est.value;
  j["evaluations"] = est.evaluations;
  j["best_family"] = est.best_family;
  const std::string text = j.dump(2) + "\n";
  if (o.common.out.empty()) {
    out << text;
  } else {
    write_text(o.common.out, text);
  }
  return kExitPass;
}

int cmd_design_source(const CommonOptions& o, int samples, std::ostream& out) {
  const RunConfig cfg = interpret(load_document(o));
  if (!(cfg.source.T0 > 0.0)) throw std::invalid_argument("source.T0 must be > 0");
  const BoxDomain dom = cfg.box();
  const int ell = cfg.analysis.ell > 0 ? cfg.analysis.ell : odi::default_ell(dom.dims());
  const ComplexField u0 = build_initial(cfg, dom);
  const ModelParams p = build_params(cfg, SourceSpec::zero());
  const GnEstimate gn = estimate_gn_constant(dom, cfg.model.m, ell, cfg.analysis.gn_budget,
                                             cfg.run.seed, cfg.analysis.safety_factor);
  std::optional<ComplexField> profile;
  if (cfg.source.profile == "sine") {
    std::vector<int> k = cfg.source.profile_modes;
    if (k.size() == 1) k.assign(static_cast<std::size_t>(dom.dims()), k.front());
    profile = ComplexField::sine_mode(dom, k);
  }
  const CriticalSourceDesign d = design_critical_source(u0, p, cfg.source.T0, gn.value, ell, profile);
  report::Json j;
  j["T0"] = d.T0;
  j["ell"] = d.ell;
  j["delta"] = d.delta;
  j["c_gn"] = d.c_gn;
  j["epsilon_star"] = d.epsilon_star;
  j["sup_bound"] = d.sup_bound;
  j["smallness_lhs"] = d.smallness_lhs;
  j["smallness_rhs"] = d.smallness_rhs;
  j["amplitude"] = d.amplitude;
  j["exponent"] = d.exponent;
  out << j.dump(2) << '\n';
  if (!o.out.empty()) {
    std::ostringstream csv;
    csv << "t,c,f_l2,bound\n";
    for (int i = 0; i <= samples; ++i) {
      const double t = d.T0 * i / samples;
      csv << shortest(t) << ',' << shortest(d.source.amplitude(t)) << ','
          << shortest(d.source.l2_norm(t)) << ','
          << shortest(std::sqrt(critical_decay_bound(d, dom.dims(), t))) << '\n';
    }
    write_text(o.out, csv.str());
  }
  return kExitPass;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"dnls: damped nonlinear Schroedinger laboratory"};
  app.require_subcommand(1);

  CommonOptions run_o, sweep_o, verify_o, design_o;
  auto* run = app.add_subcommand("run", "simulate a config or preset and write ledger, snapshots, report");
  add_common(run, run_o);

  auto* sweep = app.add_subcommand("sweep", "run a config over a range of one key");
  add_common(sweep, sweep_o);
  std::string axis;
  sweep->add_option("--axis", axis, "section.key=start:stop:step or section.key=v1,v2,...")->required();

  auto* verify = app.add_subcommand("verify", "re-evaluate the verdicts of a report or preset");
  add_common(verify, verify_o);
  std::string report_path;
  verify->add_option("--report", report_path, "report.json to re-check");

  OdiTableOptions odi_o;
  auto* odi_cmd = app.add_subcommand("odi-table", "CSV of closed-form envelopes and constants");
  odi_cmd->add_option("--alpha", odi_o.alpha, "alpha values")->delimiter(',');
  odi_cmd->add_option("--delta", odi_o.delta, "delta values")->delimiter(',');
  odi_cmd->add_option("--y0", odi_o.y0, "initial value");
  odi_cmd->add_option("--T0", odi_o.T0, "start time");
  odi_cmd->add_option("--span", odi_o.span, "time span after T0");
  odi_cmd->add_option("--samples", odi_o.samples, "samples per envelope")->check(CLI::PositiveNumber);
  odi_cmd->add_option("--out", odi_o.out, "output CSV (default stdout)");

  GnOptions gn_o;
  auto* gn = app.add_subcommand("gn-estimate", "estimate the interpolation constant");
  add_common(gn, gn_o.common);
  gn->add_option("--dims", gn_o.dims, "box dimension")->check(CLI::Range(1, 3));
  gn->add_option("--length", gn_o.length, "box side length");
  gn->add_option("--points", gn_o.points, "interior points per axis");
  gn->add_option("--m", gn_o.m, "damping exponent");
  gn->add_option("--ell", gn_o.ell, "Sobolev order (0: auto)");
  gn->add_option("--budget", gn_o.budget, "candidate evaluations")->check(CLI::PositiveNumber);

  int design_samples = 200;
  auto* design = app.add_subcommand("design-source", "design a critically decaying source for a config");
  add_common(design, design_o);
  design->add_option("--samples", design_samples, "rows of the amplitude table")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (*run) return cmd_run(run_o, out, err);
    if (*sweep) return cmd_sweep(sweep_o, axis, out, err);
    if (*verify) return cmd_verify(verify_o, report_path, out, err);
    if (*odi_cmd) return cmd_odi_table(odi_o, out);
    if (*gn) return cmd_gn(gn_o, out);
    if (*design) return cmd_design_source(design_o, design_samples, out);
  } catch (const SmallnessViolation& e) {
    err << "error: " << e.what() << " (required u0 scale " << e.required_scale() << ")\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace dnls
