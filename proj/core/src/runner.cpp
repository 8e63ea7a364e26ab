#include "pathweave/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "pathweave/metrics.hpp"
#include "pathweave/order.hpp"
#include "pathweave/parallel.hpp"
#include "pathweave/random_paths.hpp"
#include "pathweave/serialize.hpp"
#include "pathweave/stats.hpp"

namespace pathweave {

namespace {

std::string out_path(const RunOptions& opt, const std::string& name) {
  std::filesystem::create_directories(opt.out_dir);
  return (std::filesystem::path(opt.out_dir) / name).string();
}

Weave build_configured_weave(const DiagnosticConfig& c, double n, std::uint64_t stream) {
  const SimWindow win{c.generator.x_lo, c.generator.x_hi, c.generator.t_lo, c.generator.t_hi, n};
  return build_weave(c.generator.model, win, c.generator.grid, stream, c.generator.miss_tol);
}

}  // namespace

void run_simulate(const DiagnosticConfig& config, const RunOptions& opt) {
  for (std::size_t ni = 0; ni < config.generator.n_list.size(); ++ni) {
    const double n = config.generator.n_list[ni];
    const Weave w = build_configured_weave(config, n, derive_stream(config.seed, {0x51A, ni}));
    const std::string tag = "n" + format_double(n);
    write_text_file(out_path(opt, "ensemble_" + tag + ".json"),
                    ensemble_to_json(w.ensemble).dump(2) + "\n");
    write_text_file(out_path(opt, "events_" + tag + ".csv"), events_to_csv(w.events));
    write_text_file(out_path(opt, "crossing_check_" + tag + ".json"),
                    crossing_report_json(w.ensemble).dump(2) + "\n");
  }
}

void run_diagnose(const DiagnosticConfig& config, const RunOptions& opt) {
  const TightnessTable table = run_tightness_estimation(config, opt.threads);
  if (opt.format == "json")
    write_text_file(out_path(opt, "tightness.json"), tightness_table_json(table).dump(2) + "\n");
  else
    write_text_file(out_path(opt, "tightness.csv"), tightness_table_csv(table));
  write_text_file(out_path(opt, "report.txt"), tightness_report({table}).text);
}

void run_moduli(const DiagnosticConfig& config, const RunOptions& opt) {
  for (std::size_t ni = 0; ni < config.generator.n_list.size(); ++ni) {
    const double n = config.generator.n_list[ni];
    const Weave w = build_configured_weave(config, n, derive_stream(config.seed, {0x30D, ni}));
    const ModuliTable m2 =
        precompactness_score(w.ensemble, ModulusKind::C, config.T_grid, config.delta_grid);
    const ModuliTable mJ =
        precompactness_score(w.ensemble, ModulusKind::J, config.T_grid, config.delta_grid);
    const ModuliTable mM =
        precompactness_score(w.ensemble, ModulusKind::M, config.T_grid, config.delta_grid);
    std::string csv = "T,delta,m2,mJ,mM\n";
    for (std::size_t ti = 0; ti < config.T_grid.size(); ++ti)
      for (std::size_t di = 0; di < config.delta_grid.size(); ++di)
        csv += format_double(config.T_grid[ti]) + ',' + format_double(config.delta_grid[di]) +
               ',' + format_double(m2.values[ti][di]) + ',' + format_double(mJ.values[ti][di]) +
               ',' + format_double(mM.values[ti][di]) + '\n';
    write_text_file(out_path(opt, "moduli_n" + format_double(n) + ".csv"), csv);
  }
}

ScalingCheckResult run_scaling_check(int reps, std::uint64_t seed, const RunOptions& opt) {
  ScalingCheckResult res;
  const auto point = HeavyTailModel::point_mass(1.0);

  // Field tracing vs direct compound Poisson, both models, n = 1.
  for (const auto& [name, model] :
       std::vector<std::pair<std::string, HeavyTailModel>>{{"point_mass", point},
                                                           {"one_wedge_pareto", default_mu(1.0)}}) {
    const TwoSampleReport r = cp_vs_trace_check(model, 1.0, 1.0, reps,
                                                derive_stream(seed, {0xCF7, res.rows.size()}),
                                                500.0, opt.threads);
    res.rows.push_back(
        {"cp_vs_trace", name, model.alpha(), 1.0, r.ks_stat, r.ks_crit_1pct, r.pass()});
  }

  // X_n(1) against n^(-1/alpha) X_1(n), both via the compound-Poisson sampler
  // but parameterized at different scales.
  for (double alpha : {0.8, 1.0, 1.5})
    for (double n : {4.0, 16.0}) {
      const HeavyTailModel model = default_mu(alpha);
      const double scale = std::pow(n, -1.0 / alpha);
      std::vector<double> arm_a(reps);
      std::vector<double> arm_b(reps);
      parallel_for(static_cast<std::size_t>(reps), opt.threads, [&](std::size_t i) {
        const CadlagPath a = one_particle_cp(
            model, n, 1.0, derive_stream(seed, {0xA0, static_cast<std::uint64_t>(alpha * 10),
                                                static_cast<std::uint64_t>(n), i}));
        arm_a[i] = a.eval(1.0)->right;
        const CadlagPath b = one_particle_cp(
            model, 1.0, n, derive_stream(seed, {0xB0, static_cast<std::uint64_t>(alpha * 10),
                                                static_cast<std::uint64_t>(n), i}));
        arm_b[i] = scale * b.eval(n)->right;
      });
      const double ks = ks_two_sample(arm_a, arm_b);
      const double crit = ks_two_sample_critical(reps, reps, 0.01);
      res.rows.push_back({"scaling_identity", "one_wedge_pareto", alpha, n, ks, crit, ks < crit});
    }

  std::string csv = "check,model,alpha,n,ks,crit,pass\n";
  for (const auto& row : res.rows) {
    csv += row.check + ',' + row.model + ',' + format_double(row.alpha) + ',' +
           format_double(row.n) + ',' + format_double(row.ks) + ',' + format_double(row.crit) +
           ',' + (row.pass ? "1" : "0") + '\n';
    res.all_pass = res.all_pass && row.pass;
  }
  write_text_file(out_path(opt, "scaling.csv"), csv);
  return res;
}

namespace {

bool check(bool ok, const char* what, bool& all) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what);
  all = all && ok;
  return ok;
}

}  // namespace

bool run_selftest(std::uint64_t seed) {
  bool all = true;

  check(phi(0.0) == 0.0 && phi(kPlusInf) == 1.0 && std::abs(phi(1.0) - 1.0 / std::sqrt(2.0)) < 1e-15,
        "phi anchor values", all);
  check(k_pm(0.5).k_plus == 2 && k_pm(0.5).k_minus == -2 && k_pm(1.0).k_plus == 1,
        "k_pm anchor values", all);

  {
    const HeavyTailModel m = default_mu(1.0);
    check(std::abs(m.hit_rate_K() - 3.0) < 1e-12 && std::abs(m.tail(2.0) - 0.5) < 1e-12 &&
              std::abs(m.mass() - 1.5) < 1e-12,
          "default radius measure constants", all);
  }

  {
    Rng rng(derive_stream(seed, {0x0A}));
    bool agree = true;
    for (int i = 0; i < 50 && agree; ++i) {
      const CadlagPath a = random_simple_step_path(rng, 2, 1.0, 1.0);
      const CadlagPath b = random_simple_step_path(rng, 2, 1.0, 1.0);
      for (GraphKind kind : {GraphKind::Closed, GraphKind::Filled}) {
        const double dp = (kind == GraphKind::Closed ? d_J1(a, b, 0.8, false)
                                                     : d_M1(a, b, 0.8, false))
                              .value;
        const double oracle = oracle_distance(a, b, kind, 0.8, 64);
        if (dp != oracle) agree = false;
      }
    }
    check(agree, "distance DP equals exhaustive oracle", all);
  }

  {
    Rng rng(derive_stream(seed, {0x0B}));
    bool ok = true;
    for (int i = 0; i < 200 && ok; ++i) {
      const CadlagPath p = random_simple_step_path(rng, 4, 1.0, 2.0);
      const CrossingWindow w{1.0, 0.1 + rng.uniform01() * 0.3, 0.2 + rng.uniform01() * 0.5,
                             rng.uniform(-1.0, 1.0)};
      const double eta = d_rbar(w.r, w.r + w.eps);
      if (in_S(p, SVariant::Plus, w).member && !in_T(p, TVariant::Plus, w.T, w.delta, eta))
        ok = false;
      if (in_S(p, SVariant::M, w).member && !pair_in_CM(p, p, w).member) ok = false;
    }
    check(ok, "set-comparison inclusions on random paths", all);
  }

  {
    bool ok = true;
    for (std::uint64_t s = 0; s < 3; ++s) {
      const SimWindow win{-1.0, 1.0, -1.0, 1.0, 4.0};
      const Weave w = build_weave(default_mu(1.0), win, {GridSpec::Kind::Uniform, 8, 8, {}},
                                  derive_stream(seed, {0x0C, s}));
      if (!is_noncrossing_set(w.ensemble).noncrossing) ok = false;
    }
    check(ok, "weave realizations are noncrossing", all);
  }

  {
    const SimWindow win{-2.0, 2.0, 0.0, 1.0, 1.0};
    const EventSample a = sample_events(default_mu(1.0), win, derive_stream(seed, {0x0D}));
    const EventSample b = sample_events(default_mu(1.0), win, derive_stream(seed, {0x0D}));
    check(events_to_csv(a) == events_to_csv(b), "seeded event sampling is deterministic", all);
  }

  return all;
}

}  // namespace pathweave
