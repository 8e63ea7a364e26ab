#include "pathweave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "pathweave/parallel.hpp"
#include "pathweave/serialize.hpp"
#include "pathweave/stats.hpp"
#include "pathweave/toml.hpp"

namespace pathweave {

namespace {

// "r,w" rows, optionally with that header line.
std::vector<std::pair<double, double>> atoms_from_csv(const std::string& text) {
  std::vector<std::pair<double, double>> atoms;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty() || line == "r,w" || line[0] == '#') continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("table file: expected 'r,w' rows");
    atoms.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  return atoms;
}

HeavyTailModel model_from_json(const nlohmann::json& g) {
  const std::string family = g.value("family", std::string("one_wedge_pareto"));
  if (family == "one_wedge_pareto") return HeavyTailModel::one_wedge_pareto(g.value("alpha", 1.0));
  if (family == "point_mass")
    return HeavyTailModel::point_mass(g.value("r0", 1.0), g.value("weight", 1.0),
                                      g.value("alpha", 1.0));
  if (family == "table") {
    std::vector<std::pair<double, double>> atoms;
    if (g.contains("file"))
      atoms = atoms_from_csv(read_text_file(g.at("file").get<std::string>()));
    else
      for (const auto& a : g.at("atoms")) atoms.emplace_back(a.at(0), a.at(1));
    return HeavyTailModel::table(std::move(atoms), g.value("alpha", 1.0));
  }
  throw std::invalid_argument("config: unknown model family '" + family + "'");
}

std::vector<double> doubles_from(const nlohmann::json& j) {
  std::vector<double> out;
  for (const auto& v : j) out.push_back(v.get<double>());
  return out;
}

}  // namespace

DiagnosticConfig config_from_json(const nlohmann::json& j) {
  DiagnosticConfig c;
  if (j.contains("generator")) {
    const auto& g = j.at("generator");
    c.generator.model = model_from_json(g);
    if (g.contains("n")) c.generator.n_list = doubles_from(g.at("n"));
    if (g.contains("window")) {
      const auto& w = g.at("window");
      if (w.contains("x")) {
        c.generator.x_lo = w.at("x").at(0);
        c.generator.x_hi = w.at("x").at(1);
      }
      if (w.contains("t")) {
        c.generator.t_lo = w.at("t").at(0);
        c.generator.t_hi = w.at("t").at(1);
      }
    }
    if (g.contains("grid")) {
      const auto& gr = g.at("grid");
      const std::string kind = gr.value("kind", std::string("uniform"));
      if (kind == "lattice") {
        c.generator.grid.kind = GridSpec::Kind::Lattice;
      } else if (kind == "uniform") {
        c.generator.grid.kind = GridSpec::Kind::Uniform;
        c.generator.grid.nx = gr.value("space", 15);
        c.generator.grid.nt = gr.value("time", 15);
      } else {
        throw std::invalid_argument("config: unknown grid kind '" + kind + "'");
      }
    }
    c.generator.miss_tol = g.value("miss_tol", 1e-4);
  }
  if (j.contains("grids")) {
    const auto& g = j.at("grids");
    if (g.contains("T")) c.T_grid = doubles_from(g.at("T"));
    if (g.contains("delta")) c.delta_grid = doubles_from(g.at("delta"));
    if (g.contains("eps")) c.eps_grid = doubles_from(g.at("eps"));
    if (g.contains("r")) c.r_grid = doubles_from(g.at("r"));
  }
  if (j.contains("run")) {
    const auto& r = j.at("run");
    c.reps = r.value("reps", c.reps);
    c.seed = r.value("seed", static_cast<std::uint64_t>(c.seed));
    c.refinement = r.value("refinement", c.refinement);
    c.paired = r.value("paired", c.paired);
    if (r.contains("criteria")) {
      c.criteria.clear();
      for (const auto& s : r.at("criteria")) c.criteria.push_back(s.get<std::string>());
    }
  }
  if (c.T_grid.empty() || c.delta_grid.empty() || c.eps_grid.empty() || c.r_grid.empty())
    throw std::invalid_argument("config: all predicate grids must be nonempty");
  if (c.reps < 1) throw std::invalid_argument("config: reps must be >= 1");
  return c;
}

DiagnosticConfig load_config_file(const std::string& path) {
  const std::string text = read_text_file(path);
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return config_from_json(nlohmann::json::parse(text));
  return config_from_json(parse_toml(text));
}

nlohmann::json config_to_json(const DiagnosticConfig& c) {
  nlohmann::json g;
  switch (c.generator.model.family()) {
    case HeavyTailModel::Family::OneWedgePareto:
      g["family"] = "one_wedge_pareto";
      break;
    case HeavyTailModel::Family::PointMass:
      g["family"] = "point_mass";
      break;
    case HeavyTailModel::Family::Table:
      g["family"] = "table";
      break;
  }
  g["alpha"] = c.generator.model.alpha();
  g["n"] = c.generator.n_list;
  g["window"] = {{"x", {c.generator.x_lo, c.generator.x_hi}},
                 {"t", {c.generator.t_lo, c.generator.t_hi}}};
  g["grid"] = {{"kind", c.generator.grid.kind == GridSpec::Kind::Lattice ? "lattice" : "uniform"},
               {"space", c.generator.grid.nx},
               {"time", c.generator.grid.nt}};
  g["miss_tol"] = c.generator.miss_tol;
  return {{"generator", g},
          {"grids",
           {{"T", c.T_grid}, {"delta", c.delta_grid}, {"eps", c.eps_grid}, {"r", c.r_grid}}},
          {"run",
           {{"reps", c.reps},
            {"seed", c.seed},
            {"refinement", c.refinement},
            {"paired", c.paired},
            {"criteria", c.criteria}}}};
}

namespace {

enum CriterionBit : std::uint8_t {
  kBitTwo = 1,
  kBitJ = 2,
  kBitM = 4,
  kBitCM = 8,
  kBitError = 128,
};

std::uint8_t criterion_bit(const std::string& name) {
  if (name == "two") return kBitTwo;
  if (name == "J") return kBitJ;
  if (name == "M") return kBitM;
  if (name == "CM") return kBitCM;
  throw std::invalid_argument("config: unknown criterion '" + name + "' (two|J|M|CM)");
}

std::string criterion_name(std::uint8_t bit) {
  switch (bit) {
    case kBitTwo:
      return "two";
    case kBitJ:
      return "J";
    case kBitM:
      return "M";
    default:
      return "CM";
  }
}

PathEnsemble generate_ensemble(const DiagnosticConfig& c, double n, std::uint64_t stream) {
  if (c.custom_generator) return c.custom_generator(n, stream);
  const SimWindow win{c.generator.x_lo, c.generator.x_hi, c.generator.t_lo, c.generator.t_hi, n};
  return build_weave(c.generator.model, win, c.generator.grid, stream, c.generator.miss_tol)
      .ensemble;
}

std::uint8_t eval_indicators(const PathEnsemble& ens, const CrossingWindow& w,
                             std::uint8_t mask) {
  std::uint8_t out = 0;
  auto any_in_S = [&](SVariant v) {
    for (const auto& p : ens.paths())
      if (in_S(p, v, w).member) return true;
    return false;
  };
  if ((mask & kBitTwo) && any_in_S(SVariant::Two)) out |= kBitTwo;
  if ((mask & kBitJ) && any_in_S(SVariant::J)) out |= kBitJ;
  if ((mask & kBitM) && any_in_S(SVariant::M)) out |= kBitM;
  if ((mask & kBitCM) && any_pair_in_CM(ens, w)) out |= kBitCM;
  return out;
}

struct CellCoord {
  std::size_t ni, Ti, di, ei, ri;
};

TightnessTable run_with_mask(const DiagnosticConfig& c, std::uint8_t mask, int threads) {
  std::vector<CellCoord> cells;
  for (std::size_t ni = 0; ni < c.generator.n_list.size(); ++ni)
    for (std::size_t Ti = 0; Ti < c.T_grid.size(); ++Ti)
      for (std::size_t di = 0; di < c.delta_grid.size(); ++di)
        for (std::size_t ei = 0; ei < c.eps_grid.size(); ++ei)
          for (std::size_t ri = 0; ri < c.r_grid.size(); ++ri)
            cells.push_back({ni, Ti, di, ei, ri});

  const std::size_t reps = static_cast<std::size_t>(c.reps);
  std::vector<std::uint8_t> results;

  if (c.paired) {
    // One ensemble per (n, replicate), evaluated against the whole grid.
    const std::size_t per_n = cells.size() / c.generator.n_list.size();
    results.assign(cells.size() * reps, 0);
    parallel_for(c.generator.n_list.size() * reps, threads, [&](std::size_t item) {
      const std::size_t ni = item / reps;
      const std::size_t rep = item % reps;
      const std::uint64_t stream = derive_stream(c.seed, {0xE45, ni, rep});
      std::uint8_t err = 0;
      PathEnsemble ens;
      try {
        ens = generate_ensemble(c, c.generator.n_list[ni], stream);
      } catch (const std::exception&) {
        err = kBitError;
      }
      for (std::size_t ci = 0; ci < per_n; ++ci) {
        const CellCoord& cc = cells[ni * per_n + ci];
        const CrossingWindow w{c.T_grid[cc.Ti], c.delta_grid[cc.di], c.eps_grid[cc.ei],
                               c.r_grid[cc.ri]};
        results[(ni * per_n + ci) * reps + rep] =
            err ? err : eval_indicators(ens, w, mask);
      }
    });
  } else {
    results.assign(cells.size() * reps, 0);
    parallel_for(cells.size() * reps, threads, [&](std::size_t item) {
      const std::size_t ci = item / reps;
      const std::size_t rep = item % reps;
      const CellCoord& cc = cells[ci];
      const std::uint64_t stream =
          derive_stream(c.seed, {0xE45, cc.ni, cc.Ti, cc.di, cc.ei, cc.ri, rep});
      const CrossingWindow w{c.T_grid[cc.Ti], c.delta_grid[cc.di], c.eps_grid[cc.ei],
                             c.r_grid[cc.ri]};
      try {
        const PathEnsemble ens = generate_ensemble(c, c.generator.n_list[cc.ni], stream);
        results[item] = eval_indicators(ens, w, mask);
      } catch (const std::exception&) {
        results[item] = kBitError;
      }
    });
  }

  TightnessTable table;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const CellCoord& cc = cells[ci];
    for (std::uint8_t bit : {kBitTwo, kBitJ, kBitM, kBitCM}) {
      if (!(mask & bit)) continue;
      int hits = 0;
      int errors = 0;
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const std::uint8_t r = results[ci * reps + rep];
        if (r & kBitError)
          ++errors;
        else if (r & bit)
          ++hits;
      }
      const int good = static_cast<int>(reps) - errors;
      TightnessCell cell;
      cell.n = c.generator.n_list[cc.ni];
      cell.T = c.T_grid[cc.Ti];
      cell.delta = c.delta_grid[cc.di];
      cell.eps = c.eps_grid[cc.ei];
      cell.r = c.r_grid[cc.ri];
      cell.criterion = criterion_name(bit);
      cell.reps = good;
      cell.errors = errors;
      cell.estimate = good > 0 ? static_cast<double>(hits) / good : 0.0;
      cell.ci_halfwidth = wilson_interval(hits, good).halfwidth();
      table.cells.push_back(std::move(cell));
    }
  }
  return table;
}

}  // namespace

TightnessTable estimate_S_probability(const DiagnosticConfig& config, SVariant criterion,
                                      int threads) {
  std::uint8_t bit = 0;
  switch (criterion) {
    case SVariant::Two:
      bit = kBitTwo;
      break;
    case SVariant::J:
      bit = kBitJ;
      break;
    case SVariant::M:
      bit = kBitM;
      break;
    default:
      throw std::invalid_argument("estimate_S_probability: criterion must be two, J or M");
  }
  return run_with_mask(config, bit, threads);
}

TightnessTable estimate_CM_probability(const DiagnosticConfig& config, int threads) {
  return run_with_mask(config, kBitCM, threads);
}

TightnessTable run_tightness_estimation(const DiagnosticConfig& config, int threads) {
  std::uint8_t mask = 0;
  for (const auto& name : config.criteria) mask |= criterion_bit(name);
  if (mask == 0) throw std::invalid_argument("config: no criteria selected");
  return run_with_mask(config, mask, threads);
}

std::string tightness_table_csv(const TightnessTable& table) {
  std::string out = "n,T,delta,eps,r,criterion,estimate,ci,reps\n";
  for (const auto& c : table.cells) {
    out += format_double(c.n) + ',' + format_double(c.T) + ',' + format_double(c.delta) + ',' +
           format_double(c.eps) + ',' + format_double(c.r) + ',' + c.criterion + ',' +
           format_double(c.estimate) + ',' + format_double(c.ci_halfwidth) + ',' +
           std::to_string(c.reps) + '\n';
  }
  return out;
}

nlohmann::json tightness_table_json(const TightnessTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : table.cells)
    rows.push_back({{"n", c.n},
                    {"T", c.T},
                    {"delta", c.delta},
                    {"eps", c.eps},
                    {"r", c.r},
                    {"criterion", c.criterion},
                    {"estimate", c.estimate},
                    {"ci", c.ci_halfwidth},
                    {"reps", c.reps}});
  return rows;
}

TightnessReportDoc tightness_report(const std::vector<TightnessTable>& tables,
                                    double violation_floor) {
  if (tables.empty()) throw std::invalid_argument("tightness_report: need at least one table");
  struct ColKey {
    std::string criterion;
    double T, eps, r;
    bool operator<(const ColKey& o) const {
      return std::tie(criterion, T, eps, r) < std::tie(o.criterion, o.T, o.eps, o.r);
    }
  };
  // (column, delta) -> sup over n of the estimate, carrying the sup cell.
  std::map<ColKey, std::map<double, TightnessCell>> sup;
  for (const auto& table : tables)
    for (const auto& cell : table.cells) {
      auto& slot = sup[{cell.criterion, cell.T, cell.eps, cell.r}][cell.delta];
      if (slot.reps == 0 || cell.estimate > slot.estimate) slot = cell;
    }

  TightnessReportDoc doc;
  std::string text =
      "tightness diagnostics report\n"
      "Monte Carlo estimates on a finite parameter grid; the sup over laws is\n"
      "realized as the max over the configured n-list. Nothing here proves\n"
      "tightness; the verdicts describe trends only.\n\n";
  int worst_rank = 0;
  const char* verdict_names[3] = {"consistent with tightness", "inconclusive",
                                  "violation signature"};
  for (auto& [key, by_delta] : sup) {
    ReportColumn col;
    col.criterion = key.criterion;
    col.T = key.T;
    col.eps = key.eps;
    col.r = key.r;
    std::vector<double> weights;
    std::vector<double> cis;
    for (auto& [delta, cell] : by_delta) {
      col.deltas.push_back(delta);
      col.sup_estimates.push_back(cell.estimate);
      cis.push_back(cell.ci_halfwidth);
      weights.push_back(std::max(1, cell.reps));
    }
    col.fitted = isotonic_nondecreasing(col.sup_estimates, weights);
    col.terminal = col.fitted.front();
    for (std::size_t i = 0; i + 1 < col.sup_estimates.size(); ++i)
      if (col.sup_estimates[i] > col.sup_estimates[i + 1] + cis[i] + cis[i + 1])
        ++col.flagged_inversions;
    const TightnessCell& smallest = by_delta.begin()->second;
    const double lo_bound =
        wilson_interval(smallest.estimate * smallest.reps, smallest.reps).lo;
    int rank;
    if (smallest.estimate > violation_floor && lo_bound > 0.0)
      rank = 2;
    else if (smallest.estimate <= violation_floor)
      rank = 0;
    else
      rank = 1;
    col.verdict = verdict_names[rank];
    worst_rank = std::max(worst_rank, rank);

    text += "criterion=" + col.criterion + " T=" + format_double(col.T) +
            " eps=" + format_double(col.eps) + " r=" + format_double(col.r) + "\n";
    text += "  delta:    ";
    for (double d : col.deltas) text += format_double(d) + " ";
    text += "\n  sup-est:  ";
    for (double e : col.sup_estimates) text += format_double(e) + " ";
    text += "\n  isotonic: ";
    for (double f : col.fitted) text += format_double(f) + " ";
    if (col.flagged_inversions > 0)
      text += "\n  flagged:  " + std::to_string(col.flagged_inversions) +
              " inversion(s) beyond CI overlap";
    text += "\n  verdict:  " + col.verdict + "\n\n";
    doc.columns.push_back(std::move(col));
  }
  doc.worst = verdict_names[worst_rank];
  text += "worst-case verdict: " + doc.worst + "\n";
  doc.text = std::move(text);
  return doc;
}

}  // namespace pathweave
