#pragma once

#include <string>
#include <vector>

#include "pathweave/diagnostics.hpp"

namespace pathweave {

struct RunOptions {
  std::string out_dir = ".";
  std::string format = "csv";  // csv | json
  int threads = 1;
};

// Builds one weave per configured n and persists ensemble_n<k>.json plus
// events_n<k>.csv under out_dir.
void run_simulate(const DiagnosticConfig& config, const RunOptions& opt);

// Runs the configured criteria and writes tightness.(csv|json) and report.txt.
void run_diagnose(const DiagnosticConfig& config, const RunOptions& opt);

// Precompactness tables of one weave per n: moduli_n<k>.(csv|json) with
// columns m2, mJ, mM over the (T, delta) grid.
void run_moduli(const DiagnosticConfig& config, const RunOptions& opt);

struct ScalingCheckRow {
  std::string check;  // "cp_vs_trace" or "scaling_identity"
  std::string model;
  double alpha = 0.0;
  double n = 0.0;
  double ks = 0.0;
  double crit = 0.0;
  bool pass = false;
};

struct ScalingCheckResult {
  std::vector<ScalingCheckRow> rows;
  bool all_pass = true;
};

// The Kolmogorov-Smirnov suites: trace-vs-compound-Poisson equivalence and
// the n-rescaling identity of the one-particle motion.
ScalingCheckResult run_scaling_check(int reps, std::uint64_t seed, const RunOptions& opt);

// Quick oracle + property suite; prints one line per check.
bool run_selftest(std::uint64_t seed = 1);

}  // namespace pathweave
