#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathweave/crossing.hpp"
#include "pathweave/weave.hpp"

namespace pathweave {

struct GeneratorSpec {
  HeavyTailModel model = HeavyTailModel::one_wedge_pareto(1.0);
  std::vector<double> n_list{1.0};
  double x_lo = -1.5;
  double x_hi = 1.5;
  double t_lo = -1.2;
  double t_hi = 1.0;
  GridSpec grid{GridSpec::Kind::Uniform, 15, 15, {}};
  double miss_tol = 1e-4;
};

struct DiagnosticConfig {
  GeneratorSpec generator;
  std::vector<double> T_grid{1.0};
  std::vector<double> delta_grid{0.2, 0.1, 0.05, 0.025};
  std::vector<double> eps_grid{0.5};
  std::vector<double> r_grid{0.0};
  std::vector<std::string> criteria{"M", "CM"};
  int reps = 100;
  std::uint64_t seed = 1;
  double refinement = 0.01;
  // paired: one ensemble stream per (n, replicate), shared across the whole
  // predicate grid (exact delta-nesting); otherwise every cell replicate
  // regenerates independently.
  bool paired = false;

  // Test hook: replaces the weave generator; receives (n, stream seed).
  std::function<PathEnsemble(double, std::uint64_t)> custom_generator;
};

DiagnosticConfig config_from_json(const nlohmann::json& j);
// Reads .toml or .json (sniffed from the first non-space character).
DiagnosticConfig load_config_file(const std::string& path);
nlohmann::json config_to_json(const DiagnosticConfig& c);

struct TightnessCell {
  double n = 1.0;
  double T = 1.0;
  double delta = 0.1;
  double eps = 0.5;
  double r = 0.0;
  std::string criterion;
  double estimate = 0.0;       // sample proportion over successful replicates
  double ci_halfwidth = 0.0;   // 95% Wilson interval halfwidth
  int reps = 0;
  int errors = 0;              // replicates lost to generator failures
};

struct TightnessTable {
  std::vector<TightnessCell> cells;
};

// Per cell: fresh ensemble replicates, indicator of S-membership of any path.
TightnessTable estimate_S_probability(const DiagnosticConfig& config, SVariant criterion,
                                      int threads = 1);

// Indicator of the pair event over all ordered pairs (self-pairs included).
TightnessTable estimate_CM_probability(const DiagnosticConfig& config, int threads = 1);

// All criteria named in config.criteria ("two", "J", "M", "CM") evaluated on
// shared replicate streams, so paired comparisons are exact.
TightnessTable run_tightness_estimation(const DiagnosticConfig& config, int threads = 1);

std::string tightness_table_csv(const TightnessTable& table);
nlohmann::json tightness_table_json(const TightnessTable& table);

struct ReportColumn {
  std::string criterion;
  double T = 0.0;
  double eps = 0.0;
  double r = 0.0;
  std::vector<double> deltas;         // ascending
  std::vector<double> sup_estimates;  // max over the n-list per delta
  std::vector<double> fitted;         // isotonic nondecreasing-in-delta fit
  double terminal = 0.0;              // fitted value at the smallest delta
  int flagged_inversions = 0;         // adjacent estimates inverted beyond CI overlap
  std::string verdict;
};

struct TightnessReportDoc {
  std::vector<ReportColumn> columns;
  std::string worst;  // worst column verdict
  std::string text;   // rendered report
};

// Merges tables, fits the delta-trend per (T, eps, r, criterion) and attaches
// verdict strings. Diagnostics only; the rendered text says so.
TightnessReportDoc tightness_report(const std::vector<TightnessTable>& tables,
                                    double violation_floor = 0.05);

}  // namespace pathweave
