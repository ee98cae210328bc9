#include "dnls/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace dnls {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

/// Strips a trailing comment that is not inside quotes.
std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(value);
  while (std::getline(is, item, ',')) out.push_back(trim(item));
  if (!value.empty() && value.back() == ',') out.push_back({});
  return out;
}

bool is_ident(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

}  // namespace

ConfigError::ConfigError(const std::string& origin, int line, const std::string& message)
    : std::runtime_error(origin + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                         message),
      line_(line) {}

double parse_number(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  double result = 1.0;
  char op = '*';
  std::size_t pos = 0;
  bool first = true;
  while (pos <= s.size()) {
    const auto next = s.find_first_of("*/", pos);
    std::string tok = trim(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    double sign = 1.0;
    if (first && !tok.empty() && (tok[0] == '-' || tok[0] == '+') && tok.size() > 1 &&
        !std::isdigit(static_cast<unsigned char>(tok[1])) && tok[1] != '.') {
      if (tok[0] == '-') sign = -1.0;
      tok = trim(tok.substr(1));
    }
    double v = 0.0;
    if (tok == "pi") {
      v = std::numbers::pi;
    } else {
      const char* b = tok.data();
      const char* e = tok.data() + tok.size();
      if (b != e && *b == '+') ++b;
      auto [ptr, ec] = std::from_chars(b, e, v);
      if (ec != std::errc() || ptr != e) throw std::invalid_argument("not a number: '" + s + "'");
    }
    v *= sign;
    result = op == '*' ? result * v : result / v;
    first = false;
    if (next == std::string::npos) break;
    op = s[next];
    pos = next + 1;
  }
  if (!std::isfinite(result)) throw std::invalid_argument("non-finite number: '" + s + "'");
  return result;
}

ConfigDocument ConfigDocument::parse(std::string_view text, std::string origin) {
  ConfigDocument doc;
  doc.origin_ = std::move(origin);
  std::string section;
  std::istringstream is{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(doc.origin_, line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (!is_ident(section)) throw ConfigError(doc.origin_, line, "invalid section name '" + section + "'");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(doc.origin_, line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = unquote(trim(s.substr(eq + 1)));
    if (!is_ident(key)) throw ConfigError(doc.origin_, line, "invalid key '" + key + "'");
    if (section.empty()) throw ConfigError(doc.origin_, line, "key '" + key + "' outside of a section");
    if (doc.find(section, key)) {
      throw ConfigError(doc.origin_, line, "duplicate key '" + key + "' in [" + section + "]");
    }
    doc.entries_.push_back({section, key, value, line});
  }
  return doc;
}

ConfigDocument ConfigDocument::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

const ConfigDocument::Entry* ConfigDocument::find(std::string_view section,
                                                  std::string_view key) const {
  for (const auto& e : entries_) {
    if (e.section == section && e.key == key) return &e;
  }
  return nullptr;
}

void ConfigDocument::set(std::string_view section, std::string_view key, std::string value) {
  for (auto& e : entries_) {
    if (e.section == section && e.key == key) {
      e.value = std::move(value);
      e.line = 0;
      return;
    }
  }
  entries_.push_back({std::string(section), std::string(key), std::move(value), 0});
}

void ConfigDocument::set(std::string_view dotted, std::string value) {
  const auto dot = dotted.find('.');
  if (dot == std::string_view::npos) {
    throw ConfigError(origin_, 0, "expected section.key, got '" + std::string(dotted) + "'");
  }
  set(dotted.substr(0, dot), dotted.substr(dot + 1), std::move(value));
}

std::string ConfigDocument::to_text() const {
  std::vector<std::string> sections;
  for (const auto& e : entries_) {
    if (std::find(sections.begin(), sections.end(), e.section) == sections.end()) {
      sections.push_back(e.section);
    }
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    if (i) os << '\n';
    os << '[' << sections[i] << "]\n";
    for (const auto& e : entries_) {
      if (e.section == sections[i]) os << e.key << " = " << e.value << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

class Reader {
 public:
  explicit Reader(const ConfigDocument& doc) : doc_(doc) {}

  template <class T>
  void bind(const char* section, const char* key, T& target) {
    handlers_[std::string(section) + "." + key] = [&target, this](const ConfigDocument::Entry& e) {
      assign(e, target);
    };
  }

  void run() {
    for (const auto& e : doc_.entries()) {
      const auto it = handlers_.find(e.section + "." + e.key);
      if (it == handlers_.end()) {
        bool known_section = false;
        for (const auto& [k, _] : handlers_) known_section = known_section || k.rfind(e.section + ".", 0) == 0;
        throw fail(e, known_section ? "unknown key '" + e.key + "' in [" + e.section + "]"
                                    : "unknown section [" + e.section + "]");
      }
      it->second(e);
    }
  }

  ConfigError fail(const ConfigDocument::Entry& e, const std::string& msg) const {
    return ConfigError(doc_.origin(), e.line, msg);
  }

  int line_of(const char* section, const char* key) const {
    const auto* e = doc_.find(section, key);
    return e ? e->line : 0;
  }

 private:
  double number(const ConfigDocument::Entry& e, const std::string& text) const {
    try {
      return parse_number(text);
    } catch (const std::invalid_argument& ex) {
      throw fail(e, e.section + "." + e.key + ": " + ex.what());
    }
  }
  long long integer(const ConfigDocument::Entry& e, const std::string& text) const {
    const double v = number(e, text);
    if (v != std::floor(v) || std::abs(v) > 9e15) {
      throw fail(e, e.section + "." + e.key + ": expected an integer, got '" + text + "'");
    }
    return static_cast<long long>(v);
  }

  void assign(const ConfigDocument::Entry& e, double& t) const { t = number(e, e.value); }
  void assign(const ConfigDocument::Entry& e, int& t) const { t = static_cast<int>(integer(e, e.value)); }
  void assign(const ConfigDocument::Entry& e, std::uint64_t& t) const {
    const long long v = integer(e, e.value);
    if (v < 0) throw fail(e, e.key + ": must be >= 0");
    t = static_cast<std::uint64_t>(v);
  }
  void assign(const ConfigDocument::Entry& e, bool& t) const {
    if (e.value == "true") t = true;
    else if (e.value == "false") t = false;
    else throw fail(e, e.key + ": expected true or false, got '" + e.value + "'");
  }
  void assign(const ConfigDocument::Entry& e, std::string& t) const { t = e.value; }
  void assign(const ConfigDocument::Entry& e, Scheme& t) const {
    if (e.value == "strang") t = Scheme::strang;
    else if (e.value == "midpoint") t = Scheme::midpoint;
    else throw fail(e, "scheme must be strang or midpoint, got '" + e.value + "'");
  }
  void assign(const ConfigDocument::Entry& e, std::vector<double>& t) const {
    t.clear();
    for (const auto& item : split_list(e.value)) t.push_back(number(e, item));
  }
  void assign(const ConfigDocument::Entry& e, std::vector<int>& t) const {
    t.clear();
    for (const auto& item : split_list(e.value)) t.push_back(static_cast<int>(integer(e, item)));
  }
  void assign(const ConfigDocument::Entry& e, std::vector<std::string>& t) const {
    t.clear();
    for (const auto& item : split_list(e.value)) {
      if (!item.empty()) t.push_back(item);
    }
  }

  const ConfigDocument& doc_;
  std::map<std::string, std::function<void(const ConfigDocument::Entry&)>> handlers_;
};

template <class T>
std::vector<T> per_axis(std::vector<T> v, int dims) {
  if (v.size() == 1) v.assign(static_cast<std::size_t>(dims), v.front());
  return v;
}

}  // namespace

BoxDomain RunConfig::box() const {
  const int n = domain.dims;
  return BoxDomain(per_axis(domain.lengths, n), per_axis(domain.points, n));
}

DampingCoefficient RunConfig::damping() const {
  const Complex a(model.a_re, model.a_im);
  return model.allow_conservative && model.a_im == 0.0 ? DampingCoefficient::unchecked(a, model.m)
                                                       : DampingCoefficient(a, model.m);
}

RunConfig interpret(const ConfigDocument& doc) {
  RunConfig c;
  c.document = doc;
  Reader r(doc);
  r.bind("domain", "dims", c.domain.dims);
  r.bind("domain", "lengths", c.domain.lengths);
  r.bind("domain", "points", c.domain.points);
  r.bind("model", "a_re", c.model.a_re);
  r.bind("model", "a_im", c.model.a_im);
  r.bind("model", "m", c.model.m);
  r.bind("model", "allow_conservative", c.model.allow_conservative);
  r.bind("initial", "kind", c.initial.kind);
  r.bind("initial", "modes", c.initial.modes);
  r.bind("initial", "amplitude", c.initial.amplitude);
  r.bind("initial", "width", c.initial.width);
  r.bind("initial", "center", c.initial.center);
  r.bind("initial", "path", c.initial.path);
  r.bind("source", "kind", c.source.kind);
  r.bind("source", "T0", c.source.T0);
  r.bind("source", "amplitude", c.source.amplitude);
  r.bind("source", "exponent", c.source.exponent);
  r.bind("source", "times", c.source.times);
  r.bind("source", "values", c.source.values);
  r.bind("source", "profile", c.source.profile);
  r.bind("source", "profile_modes", c.source.profile_modes);
  r.bind("run", "t_end", c.run.t_end);
  r.bind("run", "dt", c.run.dt);
  r.bind("run", "stride", c.run.stride);
  r.bind("run", "scheme", c.run.scheme);
  r.bind("run", "seed", c.run.seed);
  r.bind("run", "snapshots", c.run.snapshots);
  r.bind("run", "snapshot_format", c.run.snapshot_format);
  r.bind("analysis", "scenario", c.analysis.scenario);
  r.bind("analysis", "statement", c.analysis.statement);
  r.bind("analysis", "checks", c.analysis.checks);
  r.bind("analysis", "ell", c.analysis.ell);
  r.bind("analysis", "gn_budget", c.analysis.gn_budget);
  r.bind("analysis", "safety_factor", c.analysis.safety_factor);
  r.bind("analysis", "dt_levels", c.analysis.dt_levels);
  r.bind("analysis", "residual_tol", c.analysis.residual_tol);
  r.bind("analysis", "exp_law_tol", c.analysis.exp_law_tol);
  r.bind("analysis", "dt_agreement", c.analysis.dt_agreement);
  r.bind("analysis", "vanish_fraction", c.analysis.vanish_fraction);
  r.bind("analysis", "auto_rescale", c.analysis.auto_rescale);
  r.bind("analysis", "rescale_margin", c.analysis.rescale_margin);
  r.bind("analysis", "negative_control", c.analysis.negative_control);
  r.bind("analysis", "companion_m", c.analysis.companion_m);
  r.run();

  auto fail = [&](const char* section, const char* key, const std::string& msg) {
    return ConfigError(doc.origin(), r.line_of(section, key), msg);
  };

  // Defaults that depend on the dimension.
  if (c.domain.dims < 1 || c.domain.dims > 3) throw fail("domain", "dims", "dims must be 1, 2 or 3");
  if (c.domain.lengths.empty()) c.domain.lengths = {std::numbers::pi};
  if (c.domain.points.empty()) c.domain.points = {c.domain.dims == 1 ? 255 : (c.domain.dims == 2 ? 127 : 47)};
  const auto n = static_cast<std::size_t>(c.domain.dims);
  if (c.domain.lengths.size() != 1 && c.domain.lengths.size() != n) {
    throw fail("domain", "lengths", "lengths needs 1 or dims entries");
  }
  if (c.domain.points.size() != 1 && c.domain.points.size() != n) {
    throw fail("domain", "points", "points needs 1 or dims entries");
  }
  try {
    (void)c.box();
  } catch (const std::exception& e) {
    const char* key = doc.find("domain", "points") ? "points" : "lengths";
    throw fail("domain", key, e.what());
  }
  try {
    (void)c.damping();
  } catch (const std::exception& e) {
    const char* key = doc.find("model", "a_im") ? "a_im" : (doc.find("model", "m") ? "m" : "a_re");
    throw fail("model", key, std::string("inadmissible damping: ") + e.what());
  }

  const std::vector<std::string> initial_kinds{"sine", "gaussian", "zero", "file"};
  if (std::find(initial_kinds.begin(), initial_kinds.end(), c.initial.kind) == initial_kinds.end()) {
    throw fail("initial", "kind", "initial.kind must be sine, gaussian, zero or file");
  }
  if (c.initial.kind == "sine" && c.initial.modes.size() != 1 && c.initial.modes.size() != n) {
    throw fail("initial", "modes", "modes needs 1 or dims entries");
  }
  if (c.initial.kind == "file" && c.initial.path.empty()) {
    throw fail("initial", "kind", "initial.kind = file requires initial.path");
  }

  const std::vector<std::string> source_kinds{"zero", "compact", "critical", "table", "designed"};
  if (std::find(source_kinds.begin(), source_kinds.end(), c.source.kind) == source_kinds.end()) {
    throw fail("source", "kind", "source.kind must be zero, compact, critical, table or designed");
  }
  if (c.source.kind != "zero" && c.source.kind != "table" && !(c.source.T0 > 0.0)) {
    throw fail("source", "T0", "source.T0 must be > 0");
  }
  if (c.source.kind == "table" && (c.source.times.size() < 2 || c.source.times.size() != c.source.values.size())) {
    throw fail("source", "times", "table source needs matching times and values (>= 2)");
  }
  if (c.source.profile != "initial" && c.source.profile != "sine") {
    throw fail("source", "profile", "source.profile must be initial or sine");
  }

  if (!(c.run.dt > 0.0)) throw fail("run", "dt", "dt must be > 0");
  if (!(c.run.t_end >= 0.0)) throw fail("run", "t_end", "t_end must be >= 0");
  if (c.run.stride < 1) throw fail("run", "stride", "stride must be >= 1");
  if (c.run.snapshot_format != "csv" && c.run.snapshot_format != "binary") {
    throw fail("run", "snapshot_format", "snapshot_format must be csv or binary");
  }

  if (c.analysis.ell < 0 || c.analysis.ell > 2) throw fail("analysis", "ell", "ell must be 0 (auto), 1 or 2");
  if (c.analysis.gn_budget < 1) throw fail("analysis", "gn_budget", "gn_budget must be >= 1");
  if (!(c.analysis.safety_factor >= 1.0)) {
    throw fail("analysis", "safety_factor", "safety_factor must be >= 1");
  }
  if (c.analysis.dt_levels < 1 || c.analysis.dt_levels > 4) {
    throw fail("analysis", "dt_levels", "dt_levels must lie in 1..4");
  }
  if (c.analysis.companion_m != 0.0 && !(c.analysis.companion_m > 0.0 && c.analysis.companion_m <= 1.0)) {
    throw fail("analysis", "companion_m", "companion_m must lie in (0,1]");
  }
  return c;
}

}  // namespace dnls
