#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnls/integrator.hpp"

namespace dnls::report {

using Json = nlohmann::ordered_json;

struct Verdict {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// End of the window over which the mass-law residual is judged: the
/// extinction time (never before the source support) when m < 1, else t_last.
double residual_window_end(double m, std::optional<double> t_num, double support_end,
                           double t_last);

/// Ledger columns as JSON arrays (t, mass, lmp1, pairing, h1, h2, extinct).
Json ledger_to_json(const Trajectory& traj);

/// Reads a numeric array; null entries become NaN.
std::vector<double> number_array(const Json& j, const char* key);

/// Ledger CSV: t,mass,lmp1,pairing,h1,h2,extinct_flag.
void write_ledger_csv(std::ostream& os, const Trajectory& traj);

/// Recomputes every check named in report["checks"] from the data stored in
/// the report (ledger, model, bounds inputs). Unknown check names fail.
std::vector<Verdict> evaluate_verdicts(const Json& report);

Json verdicts_to_json(const std::vector<Verdict>& verdicts);
bool all_pass(const std::vector<Verdict>& verdicts);

/// One line per verdict: name, PASS/FAIL, value, threshold, detail.
std::string format_table(const std::vector<Verdict>& verdicts);

/// UTC time in ISO 8601; the only nondeterministic report field.
std::string utc_timestamp();

/// The model block of a report.
Json model_to_json(const ModelParams& p, int ell);

}  // namespace dnls::report
