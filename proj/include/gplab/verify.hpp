#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gplab/funcsum.hpp"
#include "gplab/weight.hpp"

namespace gplab {

inline constexpr const char* kVersion = "0.1.0";

// One checked inequality instance.  margin = lhs - rhs for inequality rows;
// equality rows (P0) carry margin = -|lhs - rhs|.  A row passes when
// margin >= -tol_factor * scale, scale = max(|lhs|, |rhs|, 1).
struct MarginRow {
  std::string theorem;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double scale = 1.0;
  int trial = -1;
  std::string function_id;
  bool pass = true;
};

struct TheoremSummary {
  std::string theorem;
  int rows = 0;
  double min_margin = 0.0;
  double min_margin_rel = 0.0;  // min of margin / scale
  int worst_trial = -1;
  double worst_lhs = 0.0;
  double worst_rhs = 0.0;
  bool pass = true;
};

struct SuiteConfig {
  std::vector<double> alpha;
  double lambda = 0.0;  // <= 0 draws lambda per trial from [1/2, 2]
  int trials = 1000;
  std::uint64_t seed = 1;
  int degree = 6;
  double tol_factor = 1e-9;
  std::optional<FuncSum> fixed_func;  // overrides the generator
};

struct SuiteResult {
  SuiteConfig config;
  std::vector<MarginRow> rows;
  std::vector<TheoremSummary> summaries;
  bool pass = true;
  // Serialized offending functions keyed by function_id (failures only).
  std::vector<std::pair<std::string, std::string>> offending_functions;
};

SuiteResult run_margin_suite(const SuiteConfig& cfg);

// Human-readable one-liners for every catalog id appearing in reports.
const std::vector<std::pair<std::string, std::string>>& theorem_catalog();

nlohmann::json suite_report_json(const SuiteResult& res);
std::string suite_report_csv(const SuiteResult& res);

// Pinned equality and extremizer cases.
struct ReproLine {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = true;  // |lhs - rhs| <= 1e-8 * scale
};
struct ReproResult {
  std::string case_id;
  std::vector<ReproLine> lines;
  bool pass = true;
};
// Throws std::invalid_argument for an unknown id.
ReproResult reproduce_case(const std::string& case_id);
std::vector<std::string> reproduce_case_ids();

}  // namespace gplab
