#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "pathweave/diagnostics.hpp"
#include "pathweave/runner.hpp"
#include "pathweave/serialize.hpp"
#include "pathweave/stats.hpp"
#include "pathweave/toml.hpp"

using namespace pathweave;

namespace {

const char* kTomlConfig = R"(# weave diagnostics
[generator]
family = "one_wedge_pareto"
alpha = 1.0
n = [1, 4]
miss_tol = 1e-3

[generator.window]
x = [-1.5, 1.5]
t = [-1.2, 1.0]

[generator.grid]
kind = "uniform"
space = 6
time = 6

[grids]
T = [1.0]
delta = [0.2, 0.1, 0.05, 0.025]
eps = [0.5]
r = [0.0]

[run]
reps = 10
seed = 7
criteria = ["M", "CM"]
paired = true
)";

DiagnosticConfig zigzag_config() {
  DiagnosticConfig c;
  c.T_grid = {1.0};
  c.delta_grid = {0.2, 0.1, 0.05, 0.025};
  c.eps_grid = {0.5};
  c.r_grid = {0.0};
  c.reps = 5;
  c.seed = 1;
  c.custom_generator = [](double, std::uint64_t) {
    PathEnsemble e;
    e.add(make_step_path(DomainComponent::all_reals(), 0.0, {{0.0, 1.0}, {0.05, 0.0}}));
    return e;
  };
  return c;
}

std::string slurp(const std::filesystem::path& p) { return read_text_file(p.string()); }

}  // namespace

TEST_CASE("toml and json configs parse to the same thing") {
  const DiagnosticConfig a = config_from_json(parse_toml(kTomlConfig));
  const DiagnosticConfig b = config_from_json(config_to_json(a));
  CHECK(config_to_json(a).dump() == config_to_json(b).dump());
  CHECK(a.generator.n_list == std::vector<double>{1.0, 4.0});
  CHECK(a.generator.miss_tol == 1e-3);
  CHECK(a.delta_grid.size() == 4);
  CHECK(a.reps == 10);
  CHECK(a.paired);
  CHECK(a.criteria == std::vector<std::string>{"M", "CM"});
}

TEST_CASE("table models load atoms from a csv file") {
  const auto dir = std::filesystem::temp_directory_path() / "pathweave_table";
  std::filesystem::create_directories(dir);
  write_text_file((dir / "atoms.csv").string(), "r,w\n0.5,1.0\n2.0,0.25\n");
  nlohmann::json j;
  j["generator"] = {{"family", "table"}, {"file", (dir / "atoms.csv").string()}, {"alpha", 1.0}};
  const DiagnosticConfig c = config_from_json(j);
  CHECK(c.generator.model.family() == HeavyTailModel::Family::Table);
  CHECK(c.generator.model.mass() == doctest::Approx(1.25));
  CHECK(c.generator.model.hit_rate_K() == doctest::Approx(2.0 * (0.5 + 0.5)));
}

TEST_CASE("load_config_file sniffs the format") {
  const auto dir = std::filesystem::temp_directory_path() / "pathweave_cfg";
  std::filesystem::create_directories(dir);
  write_text_file((dir / "c.toml").string(), kTomlConfig);
  const DiagnosticConfig a = load_config_file((dir / "c.toml").string());
  write_text_file((dir / "c.json").string(), config_to_json(a).dump(2));
  const DiagnosticConfig b = load_config_file((dir / "c.json").string());
  CHECK(config_to_json(a).dump() == config_to_json(b).dump());
}

TEST_CASE("constant generators estimate zero everywhere") {
  DiagnosticConfig c = zigzag_config();
  c.custom_generator = [](double, std::uint64_t) {
    PathEnsemble e;
    e.add(make_constant_path(DomainComponent::all_reals(), 0.25));
    return e;
  };
  for (const auto& cell : run_tightness_estimation(c).cells) {
    CHECK(cell.estimate == 0.0);
    CHECK(cell.errors == 0);
  }
  const TightnessTable cm = estimate_CM_probability(c);
  for (const auto& cell : cm.cells) CHECK(cell.estimate == 0.0);
}

TEST_CASE("deterministic zigzag flips exactly at its gap") {
  const DiagnosticConfig c = zigzag_config();
  const TightnessTable t = estimate_S_probability(c, SVariant::M);
  REQUIRE(t.cells.size() == 4);
  for (const auto& cell : t.cells) {
    const double expect = cell.delta >= 0.05 ? 1.0 : 0.0;
    CHECK(cell.estimate == expect);
    CHECK(cell.criterion == "M");
    CHECK(cell.reps == 5);
  }
}

TEST_CASE("estimate_S_probability rejects the pair criterion") {
  CHECK_THROWS_AS(estimate_S_probability(zigzag_config(), SVariant::PlusMinus),
                  std::invalid_argument);
}

TEST_CASE("generator failures abort the cell, not the run") {
  DiagnosticConfig c = zigzag_config();
  c.reps = 6;
  c.custom_generator = [](double, std::uint64_t stream) {
    if (stream % 3 == 0) throw std::runtime_error("flaky generator");
    PathEnsemble e;
    e.add(make_constant_path(DomainComponent::all_reals(), 0.0));
    return e;
  };
  const TightnessTable t = estimate_S_probability(c, SVariant::M);
  for (const auto& cell : t.cells) {
    CHECK(cell.reps + cell.errors == 6);
    CHECK(cell.estimate == 0.0);
  }
}

TEST_CASE("paired streams give the exact self-pair ordering") {
  DiagnosticConfig c = zigzag_config();
  c.paired = true;
  c.criteria = {"M", "CM"};
  c.reps = 8;
  c.custom_generator = [](double n, std::uint64_t stream) {
    // A randomized zigzag whose gap depends on the stream, so both criteria
    // see a nontrivial mix across replicates.
    Rng rng(stream);
    PathEnsemble e;
    const double gap = rng.uniform(0.01, 0.3);
    e.add(make_step_path(DomainComponent::all_reals(), 0.0, {{0.0, 1.0}, {gap, 0.0}}));
    e.add(make_constant_path(DomainComponent::all_reals(), n));
    return e;
  };
  const TightnessTable t = run_tightness_estimation(c);
  // Group cells by coordinates and compare M vs CM.
  for (std::size_t i = 0; i < t.cells.size(); ++i)
    for (std::size_t j = 0; j < t.cells.size(); ++j) {
      const auto& a = t.cells[i];
      const auto& b = t.cells[j];
      if (a.criterion == "M" && b.criterion == "CM" && a.delta == b.delta && a.T == b.T &&
          a.eps == b.eps && a.r == b.r && a.n == b.n)
        CHECK(a.estimate <= b.estimate);
    }
}

TEST_CASE("csv schema is bit exact and json mirrors the fields") {
  const TightnessTable t = estimate_S_probability(zigzag_config(), SVariant::M);
  const std::string csv = tightness_table_csv(t);
  CHECK(csv.rfind("n,T,delta,eps,r,criterion,estimate,ci,reps\n", 0) == 0);
  const nlohmann::json j = tightness_table_json(t);
  REQUIRE(j.is_array());
  for (const char* key : {"n", "T", "delta", "eps", "r", "criterion", "estimate", "ci", "reps"})
    CHECK(j.at(0).contains(key));
}

TEST_CASE("report verdicts") {
  auto make_table = [](std::vector<double> estimates) {
    TightnessTable t;
    const std::vector<double> deltas{0.2, 0.1, 0.05, 0.025};
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      TightnessCell cell;
      cell.delta = deltas[i];
      cell.criterion = "M";
      cell.estimate = estimates[i];
      cell.reps = 400;
      cell.ci_halfwidth = 0.02;
      t.cells.push_back(cell);
    }
    return t;
  };
  const auto consistent = tightness_report({make_table({0.0, 0.0, 0.0, 0.0})});
  CHECK(consistent.columns.front().verdict == "consistent with tightness");
  CHECK(consistent.worst == "consistent with tightness");

  const auto violation = tightness_report({make_table({0.3, 0.3, 0.3, 0.3})});
  CHECK(violation.columns.front().verdict == "violation signature");

  const auto trend = tightness_report({make_table({0.6, 0.3, 0.1, 0.02})});
  CHECK(trend.columns.front().verdict == "consistent with tightness");
  CHECK(trend.columns.front().terminal <= 0.05);

  TightnessTable merged = make_table({0.0, 0.0, 0.0, 0.0});
  for (auto& cell : make_table({0.5, 0.5, 0.5, 0.5}).cells) {
    cell.criterion = "CM";
    merged.cells.push_back(cell);
  }
  const auto mixed = tightness_report({merged});
  CHECK(mixed.columns.size() == 2);
  CHECK(mixed.worst == "violation signature");
  CHECK(mixed.text.find("worst-case verdict: violation signature") != std::string::npos);
}

TEST_CASE("isotonic fit is nondecreasing along delta") {
  TightnessTable t;
  const std::vector<double> deltas{0.2, 0.1, 0.05, 0.025};
  const std::vector<double> noisy{0.5, 0.2, 0.25, 0.1};  // one inversion
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    TightnessCell cell;
    cell.delta = deltas[i];
    cell.criterion = "M";
    cell.estimate = noisy[i];
    cell.reps = 100;
    t.cells.push_back(cell);
  }
  const auto rep = tightness_report({t});
  const auto& fitted = rep.columns.front().fitted;
  for (std::size_t i = 1; i < fitted.size(); ++i) CHECK(fitted[i - 1] <= fitted[i]);
  // The raw column inverts once beyond the (zero-width) intervals.
  CHECK(rep.columns.front().flagged_inversions == 1);
  CHECK(rep.text.find("flagged:  1 inversion(s)") != std::string::npos);
}

TEST_CASE("diagnose and simulate outputs are byte-identical across thread counts") {
  DiagnosticConfig c = config_from_json(parse_toml(kTomlConfig));
  c.generator.n_list = {1.0};
  c.generator.grid = {GridSpec::Kind::Uniform, 5, 5, {}};
  c.reps = 8;

  const auto base = std::filesystem::temp_directory_path() / "pathweave_threads";
  std::filesystem::remove_all(base);
  std::vector<std::string> tightness;
  std::vector<std::string> reports;
  std::vector<std::string> ensembles;
  for (int threads : {1, 2, 8}) {
    const auto dir = base / ("t" + std::to_string(threads));
    const RunOptions opt{dir.string(), "csv", threads};
    run_diagnose(c, opt);
    run_simulate(c, opt);
    tightness.push_back(slurp(dir / "tightness.csv"));
    reports.push_back(slurp(dir / "report.txt"));
    ensembles.push_back(slurp(dir / "ensemble_n1.json"));
  }
  CHECK(tightness[0] == tightness[1]);
  CHECK(tightness[0] == tightness[2]);
  CHECK(reports[0] == reports[1]);
  CHECK(reports[0] == reports[2]);
  CHECK(ensembles[0] == ensembles[1]);
  CHECK(ensembles[0] == ensembles[2]);
  CHECK(tightness[0].rfind("n,T,delta,eps,r,criterion,estimate,ci,reps\n", 0) == 0);
}

TEST_CASE("pair-crossing estimates sit under the stopping-time bound") {
  // The exit-time recursion on [r, r+2 eps] upper-bounds the probability of
  // the pair event at spatial gap 2 eps; compare the two Monte Carlo routes.
  DiagnosticConfig c;
  c.generator.model = default_mu(1.0);
  c.generator.n_list = {4.0};
  c.generator.grid = {GridSpec::Kind::Uniform, 10, 10, {}};
  c.T_grid = {1.0};
  c.delta_grid = {0.2, 0.1, 0.05};
  c.eps_grid = {1.0};  // = 2 eps of the stopping-time strip
  c.r_grid = {0.0};
  c.reps = 150;
  c.seed = 21;
  const TightnessTable cm = estimate_CM_probability(c, 2);

  const auto st = stopping_time_diagnostic(default_mu(1.0), 4.0, {1.0, 0.2, 0.5, 0.0}, 400, 22,
                                           1e-4, 2);
  for (const auto& cell : cm.cells) {
    const double bound = st.estimate(cell.delta);
    const double bound_ci = wilson_interval(bound * st.reps, st.reps).halfwidth();
    CHECK(cell.estimate <= bound + cell.ci_halfwidth + bound_ci);
  }
}

TEST_CASE("moduli runner writes the table schema") {
  DiagnosticConfig c = config_from_json(parse_toml(kTomlConfig));
  c.generator.n_list = {1.0};
  c.generator.grid = {GridSpec::Kind::Uniform, 4, 4, {}};
  const auto dir = std::filesystem::temp_directory_path() / "pathweave_moduli";
  std::filesystem::remove_all(dir);
  run_moduli(c, {dir.string(), "csv", 1});
  const std::string csv = slurp(dir / "moduli_n1.csv");
  CHECK(csv.rfind("T,delta,m2,mJ,mM\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 1 T x 4 deltas
}

TEST_CASE("simulate persists loadable ensembles and events") {
  DiagnosticConfig c = config_from_json(parse_toml(kTomlConfig));
  c.generator.n_list = {1.0};
  c.generator.grid = {GridSpec::Kind::Uniform, 3, 3, {}};
  const auto dir = std::filesystem::temp_directory_path() / "pathweave_sim";
  std::filesystem::remove_all(dir);
  run_simulate(c, {dir.string(), "csv", 1});
  const PathEnsemble e = load_paths_file((dir / "ensemble_n1.json").string());
  CHECK(e.size() == 9);
  for (const auto& p : e.paths()) CHECK(p.is_valid());
  const std::string events = slurp(dir / "events_n1.csv");
  CHECK(events.rfind("x,t,r\n", 0) == 0);
}
