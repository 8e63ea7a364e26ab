#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pathweave/metrics.hpp"
#include "pathweave/parallel.hpp"
#include "pathweave/runner.hpp"
#include "pathweave/serialize.hpp"

namespace {

struct GlobalOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int reps = 0;
  int threads = 0;
};

pathweave::DiagnosticConfig load_or_default(const GlobalOpts& g) {
  pathweave::DiagnosticConfig c;
  if (!g.config_path.empty()) c = pathweave::load_config_file(g.config_path);
  if (g.seed_set) c.seed = g.seed;
  if (g.reps > 0) c.reps = g.reps;
  return c;
}

pathweave::RunOptions run_options(const GlobalOpts& g) {
  return {g.out_dir, g.format, pathweave::effective_thread_count(g.threads)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pathweave: path-space metrics, crossing diagnostics and Poisson-weave simulation"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "Config file (TOML or JSON)");
  app.add_option("--out", g.out_dir, "Output directory");
  app.add_option("--format", g.format, "Table format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "Seed override")->each([&](const std::string&) {
    g.seed_set = true;
  });
  app.add_option("--reps", g.reps, "Replicates override");
  app.add_option("--threads", g.threads,
                 "Worker threads (PATHWEAVE_THREADS overrides; 0 = hardware)");

  auto* simulate = app.add_subcommand("simulate", "Build and persist weave ensembles");
  auto* distance = app.add_subcommand("distance", "J1/M1/Hausdorff distances between path files");
  auto* moduli = app.add_subcommand("moduli", "Precompactness modulus tables of weave ensembles");
  auto* diagnose = app.add_subcommand("diagnose", "Monte Carlo tightness-criterion estimates");
  auto* scaling = app.add_subcommand("scaling-check", "One-particle law and rescaling KS suites");
  auto* selftest = app.add_subcommand("selftest", "Oracle and property quick suite");

  std::string metric = "j1";
  double refinement = 0.01;
  std::string matrix_out;
  std::vector<std::string> files;
  distance->add_option("--metric", metric, "j1 or m1")->check(CLI::IsMember({"j1", "m1"}));
  distance->add_option("--refinement", refinement, "Chart refinement h");
  distance->add_option("--matrix", matrix_out, "Write the full distance matrix CSV here");
  distance->add_option("files", files, "Two path/ensemble JSON files")->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors exit 1; --help exits 0
  }

  try {
    if (simulate->parsed()) {
      pathweave::run_simulate(load_or_default(g), run_options(g));
      return 0;
    }
    if (distance->parsed()) {
      const auto a = pathweave::load_paths_file(files[0]);
      const auto b = pathweave::load_paths_file(files[1]);
      const auto m = metric == "j1" ? pathweave::PathMetric::J1 : pathweave::PathMetric::M1;
      const int threads = pathweave::effective_thread_count(g.threads);
      if (a.size() == 1 && b.size() == 1) {
        const auto r = m == pathweave::PathMetric::J1 ? pathweave::d_J1(a[0], b[0], refinement)
                                                      : pathweave::d_M1(a[0], b[0], refinement);
        std::printf("%s %s (error bound %s)\n", metric.c_str(),
                    pathweave::format_double(r.value).c_str(),
                    pathweave::format_double(r.error_bound).c_str());
      } else {
        const double h = pathweave::hausdorff(a, b, m, refinement, threads);
        std::printf("hausdorff_%s %s\n", metric.c_str(), pathweave::format_double(h).c_str());
      }
      if (!matrix_out.empty()) {
        const auto mat = pathweave::distance_matrix(a, b, m, refinement, threads);
        std::string csv = "id";
        for (std::size_t j = 0; j < b.size(); ++j) csv += "," + b.id(j);
        csv += '\n';
        for (std::size_t i = 0; i < a.size(); ++i) {
          csv += a.id(i);
          for (std::size_t j = 0; j < b.size(); ++j)
            csv += "," + pathweave::format_double(mat[i][j]);
          csv += '\n';
        }
        pathweave::write_text_file(matrix_out, csv);
      }
      return 0;
    }
    if (moduli->parsed()) {
      pathweave::run_moduli(load_or_default(g), run_options(g));
      return 0;
    }
    if (diagnose->parsed()) {
      pathweave::run_diagnose(load_or_default(g), run_options(g));
      return 0;
    }
    if (scaling->parsed()) {
      const auto cfg = load_or_default(g);
      const int reps = g.reps > 0 ? g.reps : 2000;
      const auto res = pathweave::run_scaling_check(reps, cfg.seed, run_options(g));
      for (const auto& row : res.rows)
        std::printf("%s %s alpha=%s n=%s ks=%s crit=%s %s\n", row.check.c_str(),
                    row.model.c_str(), pathweave::format_double(row.alpha).c_str(),
                    pathweave::format_double(row.n).c_str(),
                    pathweave::format_double(row.ks).c_str(),
                    pathweave::format_double(row.crit).c_str(), row.pass ? "pass" : "FAIL");
      return res.all_pass ? 0 : 2;
    }
    if (selftest->parsed()) {
      const auto cfg = load_or_default(g);
      return pathweave::run_selftest(cfg.seed ? cfg.seed : 1) ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
