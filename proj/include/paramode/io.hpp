#pragma once
// JSON and CSV formats. Every file carries "schema": "paramode/1".

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "paramode/fundamental.hpp"
#include "paramode/inhomog.hpp"
#include "paramode/pathology.hpp"

namespace paramode::io {

using nlohmann::json;

inline constexpr const char* kSchema = "paramode/1";

/// Malformed input. The message starts with "<file>:<line>:<col>:" for JSON
/// syntax errors and with "<file>: <field>:" for semantic ones.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path);
json parse_json(const std::string& text, const std::string& name);
/// "-" writes to stdout.
void write_text(const std::string& path, const std::string& text);
std::string dump(const json& j);

// Region: {"bbox":[t0,t1,x0,x1], "shapes":[{"rect":[t0,t1,x0,x1]} | {"disk":[tc,xc,r]} |
// {"expr":"pred"}], "exclude_shapes":[...], "exclude_points":[[t,x]],
// "exclude_vsegments":[[t,lo,hi]], "exclude_segments":[[t0,x0,t1,x1]],
// "dyadic_punctures": K | "auto", "resolution": h}
json region_to_json(const Region& r);
Region region_from_json(const json& j, const std::string& where);
Region load_region(const std::string& path);

struct Problem {
  ScalarOperator op;
  std::optional<double> theta;  // constant section, else the smooth one
};

// {"region": {...} | "file.json", "order": p, "g": [...], "f": "expr", "theta": c}
json problem_to_json(const ScalarOperator& op, std::optional<double> theta = {});
Problem problem_from_json(const json& j, const std::string& base_dir, const std::string& where);
Problem load_problem(const std::string& path);

struct SystemProblem {
  LinearSystem sys;
  std::optional<double> theta;
};

// {"region": ..., "A": [["expr", ...], ...], "F": ["expr", ...], "theta": c}
json system_to_json(const LinearSystem& sys, std::optional<double> theta = {});
SystemProblem system_from_json(const json& j, const std::string& base_dir, const std::string& where);
SystemProblem load_system(const std::string& path);

// {"t": [...], "zeta": [[zeta^1 samples], ...]}
json zeta_to_json(const Zeta& z);
Zeta zeta_from_json(const json& j, const std::string& where);
Zeta load_zeta(const std::string& path);

json witness_to_json(const Witness& w);
json classification_to_json(const Classification& c);
json verdict_to_json(const Verdict& v);
json report_to_json(const pathology::PathologyReport& r);
json solver_to_json(const SolverOptions& o);
json status_counts(const ParamSolution& u);

/// 17 significant digits.
std::string csv_number(double v);

class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  void row(const std::vector<double>& values);
  const std::string& str() const { return text_; }

 private:
  std::size_t cols_;
  std::string text_;
};

/// t, x, and one column per state component on nx nodes of each slice.
std::string grid_csv(const ParamSolution& u, std::size_t nx);
std::string field_csv(const SampledField& f, const std::string& name);

struct RunConfig {
  std::optional<double> h;  // resolution, default 1e-3 of the bbox diagonal
  double rtol = 1e-9;
  double atol = 1e-12;
  double blowup = 1e12;
  std::size_t nt = 101, nx = 101;
  std::string out, report;
  std::uint64_t seed = 1;

  /// Throws InputError unless every knob is positive.
  void validate() const;
  SolverOptions solver() const;
  json to_json() const;
};

}  // namespace paramode::io
