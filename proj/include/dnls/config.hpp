#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dnls/integrator.hpp"

namespace dnls {

/// Parse or validation failure, anchored to a line of the config text.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& origin, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Raw sectioned key-value document:
///
///   # comment
///   [section]
///   key = value          # numbers accept pi, e.g. 2*pi or pi/2
///   list = 1, 2, 3
///
/// Entry order is preserved. Line 0 marks values set programmatically.
class ConfigDocument {
 public:
  struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
  };

  static ConfigDocument parse(std::string_view text, std::string origin = "<config>");
  static ConfigDocument load(const std::string& path);

  const std::string& origin() const { return origin_; }
  const std::vector<Entry>& entries() const { return entries_; }
  const Entry* find(std::string_view section, std::string_view key) const;

  /// Inserts or replaces section.key; dotted "section.key" is also accepted.
  void set(std::string_view section, std::string_view key, std::string value);
  void set(std::string_view dotted, std::string value);

  /// Canonical text form (sections in first-seen order).
  std::string to_text() const;

 private:
  std::string origin_;
  std::vector<Entry> entries_;
};

/// Evaluates a number literal, optionally multiplied/divided by pi and
/// other literals: "3", "-1e-3", "pi", "2*pi", "pi/2". Throws std::invalid_argument.
double parse_number(std::string_view text);

struct DomainSection {
  int dims = 1;
  std::vector<double> lengths;  // one per axis, or a single value for all
  std::vector<int> points;
};

struct ModelSection {
  double a_re = 0.0;
  double a_im = 1.0;
  double m = 0.5;
  /// Accepts Im(a) = 0 reference models.
  bool allow_conservative = false;
};

struct InitialSection {
  std::string kind = "sine";  // sine | gaussian | zero | file
  std::vector<int> modes{1};
  double amplitude = 1.0;
  double width = 0.1;           // gaussian, relative to L
  std::vector<double> center;   // gaussian, relative to L (default 0.5)
  std::string path;             // file (csv snapshot)
};

struct SourceSection {
  std::string kind = "zero";  // zero | compact | critical | table | designed
  double T0 = 0.0;
  double amplitude = 0.0;
  double exponent = 1.0;
  std::vector<double> times;
  std::vector<double> values;
  std::string profile = "initial";  // initial | sine
  std::vector<int> profile_modes{1};
};

struct RunSection {
  double t_end = 1.0;
  double dt = 1e-3;
  int stride = 100;
  Scheme scheme = Scheme::strang;
  std::uint64_t seed = 42;
  bool snapshots = true;
  std::string snapshot_format = "csv";
};

struct AnalysisSection {
  std::string scenario = "custom";
  std::string statement;
  std::vector<std::string> checks;  // empty: chosen from the model
  int ell = 0;                      // 0: [N/2] + 1
  int gn_budget = 400;
  double safety_factor = 2.0;
  int dt_levels = 2;                // dt, dt/2, ...
  double residual_tol = 0.0;        // 0: 1e-4 for m = 1, 1e-2 otherwise
  double exp_law_tol = 1e-4;
  double dt_agreement = 0.02;
  double vanish_fraction = 1e-3;
  bool auto_rescale = true;         // designed source: shrink u0 until admissible
  double rescale_margin = 0.5;
  double negative_control = 0.0;    // designed source: amplitude factor, 0 disables
  double companion_m = 0.0;         // rerun with this m (0 disables)
};

struct RunConfig {
  DomainSection domain;
  ModelSection model;
  InitialSection initial;
  SourceSection source;
  RunSection run;
  AnalysisSection analysis;
  ConfigDocument document;

  /// Validated domain and damping coefficient.
  BoxDomain box() const;
  DampingCoefficient damping() const;
};

/// Typed view of a document. Unknown sections/keys, malformed values and
/// inadmissible parameters raise ConfigError at the offending line.
RunConfig interpret(const ConfigDocument& doc);

}  // namespace dnls
