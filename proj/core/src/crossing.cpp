#include "pathweave/crossing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "pathweave/graph.hpp"

namespace pathweave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_window(double T, double delta) {
  if (!(T > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("crossing window: T and delta must be positive");
}

}  // namespace

std::vector<ValueRun> value_runs(const CadlagPath& p, double T) {
  const GraphPolyline g = closed_graph(p, {-T, T});
  std::vector<ValueRun> runs;
  bool connected = false;  // whether previous vertex links to this one horizontally
  for (const auto& vtx : g.vertices) {
    if (vtx.p.is_star()) {
      connected = false;
      continue;
    }
    if (connected && !runs.empty() && runs.back().x == vtx.p.x) {
      runs.back().t_end = vtx.p.t;
    } else {
      runs.push_back({vtx.p.x, vtx.p.t, vtx.p.t});
    }
    connected = vtx.seg_to_next == SegKind::Horizontal;
  }
  return runs;
}

namespace {

// Minimal achievable time gap between a point of run i and a later point of
// run j (i <= j in run order): run intervals are nondecreasing, so this is
// (t_begin_j - t_end_i)+, achieved at s = t_end_i.
double run_gap(const std::vector<ValueRun>& r, std::size_t i, std::size_t j) {
  return std::max(0.0, r[j].t_begin - r[i].t_end);
}

Delta2Witness make_pair_witness(const std::vector<ValueRun>& r, std::size_t i, std::size_t j) {
  const double s = r[i].t_end;
  const double t = std::max(r[j].t_begin, s);
  return {r[i].x, r[j].x, s, t};
}

Delta3Witness make_triple_witness(const std::vector<ValueRun>& r, std::size_t i, std::size_t j,
                                  std::size_t k) {
  const double s = r[i].t_end;
  const double u = std::max(r[k].t_begin, s);
  const double t = std::min(std::max(r[j].t_begin, s), u);
  return {r[i].x, r[j].x, r[k].x, s, t, u};
}

// First index whose run can pair with run j within the time budget; the
// feasible set of partners below j is the contiguous block [lo_index(j), j].
struct FeasibleLow {
  const std::vector<ValueRun>& runs;
  double delta;
  std::size_t i0 = 0;

  std::size_t advance(std::size_t j) {
    while (i0 < j && runs[i0].t_end < runs[j].t_begin - delta) ++i0;
    return i0;
  }
};

}  // namespace

std::vector<Delta2Witness> enum_delta2(const CadlagPath& p, double T, double delta) {
  check_window(T, delta);
  const auto runs = value_runs(p, T);
  std::vector<Delta2Witness> out;
  for (std::size_t j = 0; j < runs.size(); ++j)
    for (std::size_t i = 0; i <= j; ++i)
      if (run_gap(runs, i, j) <= delta) out.push_back(make_pair_witness(runs, i, j));
  return out;
}

std::vector<Delta3Witness> enum_delta3(const CadlagPath& p, double T, double delta) {
  check_window(T, delta);
  const auto runs = value_runs(p, T);
  std::vector<Delta3Witness> out;
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (std::size_t k = i; k < runs.size(); ++k) {
      if (run_gap(runs, i, k) > delta) break;
      for (std::size_t j = i; j <= k; ++j) out.push_back(make_triple_witness(runs, i, j, k));
    }
  return out;
}

double modulus2(const CadlagPath& p, double T, double delta) {
  check_window(T, delta);
  const auto runs = value_runs(p, T);
  if (runs.empty()) return 0.0;
  // Sliding-window extremes of phi over the feasible partner block.
  std::deque<std::size_t> lo_q;
  std::deque<std::size_t> hi_q;
  FeasibleLow win{runs, delta};
  double sup = 0.0;
  std::vector<double> ph(runs.size());
  for (std::size_t i = 0; i < runs.size(); ++i) ph[i] = phi(runs[i].x);
  for (std::size_t j = 0; j < runs.size(); ++j) {
    while (!lo_q.empty() && ph[lo_q.back()] >= ph[j]) lo_q.pop_back();
    lo_q.push_back(j);
    while (!hi_q.empty() && ph[hi_q.back()] <= ph[j]) hi_q.pop_back();
    hi_q.push_back(j);
    const std::size_t i0 = win.advance(j);
    while (lo_q.front() < i0) lo_q.pop_front();
    while (hi_q.front() < i0) hi_q.pop_front();
    sup = std::max({sup, ph[j] - ph[lo_q.front()], ph[hi_q.front()] - ph[j]});
  }
  return sup;
}

// Per middle index j, the best triple (i <= j <= k, span <= delta) decomposes
// into suffix statistics over i and a two-pointer over k: O(R^2) overall.
double modulusJ(const CadlagPath& p, double T, double delta) {
  check_window(T, delta);
  const auto runs = value_runs(p, T);
  const std::size_t n = runs.size();
  if (n == 0) return 0.0;
  std::vector<double> ph(n);
  for (std::size_t i = 0; i < n; ++i) ph[i] = phi(runs[i].x);
  std::vector<double> suff(n);
  double sup = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    // suff[i] = max over i' in [i, j] of |phi_i' - phi_j|
    suff[j] = 0.0;
    for (std::size_t i = j; i-- > 0;) suff[i] = std::max(suff[i + 1], std::abs(ph[i] - ph[j]));
    std::size_t i0 = 0;
    for (std::size_t k = j; k < n; ++k) {
      while (i0 < j && runs[i0].t_end < runs[k].t_begin - delta) ++i0;
      if (runs[i0].t_end < runs[k].t_begin - delta) break;  // even i = j infeasible
      sup = std::max(sup, std::min(suff[i0], std::abs(ph[k] - ph[j])));
    }
  }
  return sup;
}

double modulusM(const CadlagPath& p, double T, double delta) {
  check_window(T, delta);
  const auto runs = value_runs(p, T);
  const std::size_t n = runs.size();
  if (n == 0) return 0.0;
  std::vector<double> ph(n);
  for (std::size_t i = 0; i < n; ++i) ph[i] = phi(runs[i].x);
  std::vector<double> suff_min(n);
  std::vector<double> suff_max(n);
  double sup = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    suff_min[j] = ph[j];
    suff_max[j] = ph[j];
    for (std::size_t i = j; i-- > 0;) {
      suff_min[i] = std::min(suff_min[i + 1], ph[i]);
      suff_max[i] = std::max(suff_max[i + 1], ph[i]);
    }
    // y must clear the order interval [x, z]: either above both ends or
    // below both, so push max(phi_i, phi_k) down and min(phi_i, phi_k) up.
    double min_over_max = kInf;
    double max_over_min = -kInf;
    std::size_t i0 = 0;
    for (std::size_t k = j; k < n; ++k) {
      while (i0 < j && runs[i0].t_end < runs[k].t_begin - delta) ++i0;
      if (runs[i0].t_end < runs[k].t_begin - delta) break;
      min_over_max = std::min(min_over_max, std::max(suff_min[i0], ph[k]));
      max_over_min = std::max(max_over_min, std::min(suff_max[i0], ph[k]));
    }
    sup = std::max({sup, ph[j] - min_over_max, max_over_min - ph[j]});
  }
  return sup;
}

namespace {

struct PrefixBest {
  std::size_t index = SIZE_MAX;
  double t_end = -kInf;
};

struct SuffixBest {
  std::size_t index = SIZE_MAX;
  double t_begin = kInf;
};

SMembership pair_scan(const std::vector<ValueRun>& runs, double delta, bool up, double r,
                      double eps) {
  // up: x <= r first then y >= r+eps; down: the mirror image.
  PrefixBest best;
  for (std::size_t j = 0; j < runs.size(); ++j) {
    const double xj = runs[j].x;
    const bool j_low = xj <= r;
    const bool j_high = xj >= r + eps;
    if ((up && j_high) || (!up && j_low)) {
      if (best.index != SIZE_MAX && runs[j].t_begin - best.t_end <= delta) {
        SMembership m;
        m.member = true;
        const Delta2Witness w = make_pair_witness(runs, best.index, j);
        m.witness = {w.x, w.y, w.y, w.s, w.t, w.t};
        return m;
      }
    }
    if ((up && j_low) || (!up && j_high)) {
      if (runs[j].t_end > best.t_end) best = {j, runs[j].t_end};
    }
  }
  return {};
}

// Generic three-block scan: outer values satisfying `outer`, middle values
// satisfying `mid`; returns a witness triple with minimal span per middle.
template <class OuterPred1, class MidPred, class OuterPred2>
SMembership triple_scan(const std::vector<ValueRun>& runs, double delta, OuterPred1 first_ok,
                        MidPred mid_ok, OuterPred2 last_ok) {
  const std::size_t n = runs.size();
  if (n == 0) return {};
  std::vector<PrefixBest> pre(n);
  PrefixBest run_best;
  for (std::size_t i = 0; i < n; ++i) {
    if (first_ok(runs[i].x) && runs[i].t_end > run_best.t_end) run_best = {i, runs[i].t_end};
    pre[i] = run_best;
  }
  std::vector<SuffixBest> suf(n);
  SuffixBest run_best2;
  for (std::size_t k = n; k-- > 0;) {
    if (last_ok(runs[k].x) && runs[k].t_begin < run_best2.t_begin)
      run_best2 = {k, runs[k].t_begin};
    suf[k] = run_best2;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!mid_ok(runs[j].x)) continue;
    const PrefixBest& a = pre[j];
    const SuffixBest& c = suf[j];
    if (a.index == SIZE_MAX || c.index == SIZE_MAX) continue;
    if (std::max(0.0, c.t_begin - a.t_end) <= delta) {
      SMembership m;
      m.member = true;
      m.witness = make_triple_witness(runs, a.index, j, c.index);
      return m;
    }
  }
  return {};
}

}  // namespace

SMembership in_S(const CadlagPath& p, SVariant variant, const CrossingWindow& w) {
  if (!(w.T > 0.0) || !(w.delta > 0.0) || !(w.eps > 0.0))
    throw std::invalid_argument("in_S: T, delta, eps must be positive");
  const auto runs = value_runs(p, w.T);
  const double r = w.r;
  const double eps = w.eps;
  auto low = [&](ExtReal x) { return x <= r; };
  auto high = [&](ExtReal x) { return x >= r + eps; };
  auto band = [&](ExtReal x) { return x >= r + eps && x <= r + 2 * eps; };
  auto top = [&](ExtReal x) { return x >= r + 3 * eps; };
  switch (variant) {
    case SVariant::Plus:
      return pair_scan(runs, w.delta, true, r, eps);
    case SVariant::Minus:
      return pair_scan(runs, w.delta, false, r, eps);
    case SVariant::PlusMinus:
      return triple_scan(runs, w.delta, low, high, low);
    case SVariant::MinusPlus:
      return triple_scan(runs, w.delta, high, low, high);
    case SVariant::PlusPlus:
      return triple_scan(runs, w.delta, low, band, top);
    case SVariant::MinusMinus:
      return triple_scan(runs, w.delta, top, band, low);
    case SVariant::Two: {
      SMembership m = pair_scan(runs, w.delta, true, r, eps);
      return m.member ? m : pair_scan(runs, w.delta, false, r, eps);
    }
    case SVariant::J: {
      SMembership m = triple_scan(runs, w.delta, low, band, top);
      return m.member ? m : triple_scan(runs, w.delta, top, band, low);
    }
    case SVariant::M: {
      SMembership m = triple_scan(runs, w.delta, low, high, low);
      return m.member ? m : triple_scan(runs, w.delta, high, low, high);
    }
  }
  return {};
}

namespace {

bool t_pair_scan(const std::vector<ValueRun>& runs, double delta, double eta, int sign) {
  // sign > 0: x < y with d > eta; sign < 0: x > y; sign == 0: unsigned.
  const std::size_t n = runs.size();
  std::size_t i0 = 0;
  std::deque<std::size_t> lo_q;
  std::deque<std::size_t> hi_q;
  std::vector<double> ph(n);
  for (std::size_t i = 0; i < n; ++i) ph[i] = phi(runs[i].x);
  for (std::size_t j = 0; j < n; ++j) {
    while (!lo_q.empty() && ph[lo_q.back()] >= ph[j]) lo_q.pop_back();
    lo_q.push_back(j);
    while (!hi_q.empty() && ph[hi_q.back()] <= ph[j]) hi_q.pop_back();
    hi_q.push_back(j);
    while (i0 < j && runs[i0].t_end < runs[j].t_begin - delta) ++i0;
    while (lo_q.front() < i0) lo_q.pop_front();
    while (hi_q.front() < i0) hi_q.pop_front();
    const double up_gap = ph[j] - ph[lo_q.front()];   // some earlier x below y
    const double down_gap = ph[hi_q.front()] - ph[j];  // some earlier x above y
    if (sign > 0 && up_gap > eta) return true;
    if (sign < 0 && down_gap > eta) return true;
    if (sign == 0 && std::max(up_gap, down_gap) > eta) return true;
  }
  return false;
}

bool t_triple_scan(const std::vector<ValueRun>& runs, double delta, double eta, int sign_xy,
                   int sign_yz) {
  // sign_xy > 0 means x < y (phi_i < phi_j - eta), < 0 means x > y; likewise
  // for sign_yz about z against y.
  const std::size_t n = runs.size();
  std::vector<double> ph(n);
  for (std::size_t i = 0; i < n; ++i) ph[i] = phi(runs[i].x);
  for (std::size_t j = 0; j < n; ++j) {
    double best_b = -kInf;
    for (std::size_t i = 0; i <= j; ++i) {
      const bool ok = sign_xy > 0 ? ph[i] < ph[j] - eta : ph[i] > ph[j] + eta;
      if (ok) best_b = std::max(best_b, runs[i].t_end);
    }
    if (best_b == -kInf) continue;
    for (std::size_t k = j; k < n; ++k) {
      const bool ok = sign_yz > 0 ? ph[k] > ph[j] + eta : ph[k] < ph[j] - eta;
      if (ok && std::max(0.0, runs[k].t_begin - best_b) <= delta) return true;
    }
  }
  return false;
}

}  // namespace

bool in_T(const CadlagPath& p, TVariant variant, double T, double delta, double eta) {
  check_window(T, delta);
  if (!(eta > 0.0)) throw std::invalid_argument("in_T: eta must be positive");
  const auto runs = value_runs(p, T);
  switch (variant) {
    case TVariant::Two:
      return t_pair_scan(runs, delta, eta, 0);
    case TVariant::Plus:
      return t_pair_scan(runs, delta, eta, +1);
    case TVariant::Minus:
      return t_pair_scan(runs, delta, eta, -1);
    case TVariant::PlusPlus:
      return t_triple_scan(runs, delta, eta, +1, +1);
    case TVariant::PlusMinus:
      return t_triple_scan(runs, delta, eta, +1, -1);
    case TVariant::MinusPlus:
      return t_triple_scan(runs, delta, eta, -1, +1);
    case TVariant::MinusMinus:
      return t_triple_scan(runs, delta, eta, -1, -1);
    case TVariant::J:
      return t_triple_scan(runs, delta, eta, +1, +1) || t_triple_scan(runs, delta, eta, -1, -1);
    case TVariant::M:
      return t_triple_scan(runs, delta, eta, +1, -1) || t_triple_scan(runs, delta, eta, -1, +1);
  }
  return false;
}

namespace {

struct CrossInterval {
  double lo = 0.0;  // latest departure time (end of the first run)
  double hi = 0.0;  // earliest arrival time (start of the second run)
  std::size_t i = 0;
  std::size_t j = 0;
};

// Minimal critical intervals of crossings of [r, r+eps]; up = from <= r to
// >= r+eps. A window [W0, W1] admits the crossing (i, j) iff W0 <= lo and
// hi <= W1.
std::vector<CrossInterval> crossing_intervals(const std::vector<ValueRun>& runs, double r,
                                              double eps, bool up) {
  std::vector<CrossInterval> out;
  PrefixBest best;
  for (std::size_t j = 0; j < runs.size(); ++j) {
    const bool j_first = up ? runs[j].x <= r : runs[j].x >= r + eps;
    const bool j_second = up ? runs[j].x >= r + eps : runs[j].x <= r;
    if (j_second && best.index != SIZE_MAX)
      out.push_back({best.t_end, std::max(runs[j].t_begin, best.t_end), best.index, j});
    if (j_first && runs[j].t_end > best.t_end) best = {j, runs[j].t_end};
  }
  return out;
}

}  // namespace

CMMembership pair_in_CM(const CadlagPath& p1, const CadlagPath& p2, const CrossingWindow& w) {
  if (!(w.T > 0.0) || !(w.delta > 0.0) || !(w.eps > 0.0))
    throw std::invalid_argument("pair_in_CM: T, delta, eps must be positive");
  const auto runs1 = value_runs(p1, w.T);
  const auto runs2 = value_runs(p2, w.T);
  const auto ups = crossing_intervals(runs1, w.r, w.eps, true);
  const auto downs = crossing_intervals(runs2, w.r, w.eps, false);
  for (const auto& u : ups)
    for (const auto& d : downs) {
      const double span = std::max(u.hi, d.hi) - std::min(u.lo, d.lo);
      if (span <= w.delta) {
        CMMembership m;
        m.member = true;
        m.first = make_pair_witness(runs1, u.i, u.j);
        m.second = make_pair_witness(runs2, d.i, d.j);
        return m;
      }
    }
  return {};
}

bool any_pair_in_CM(const PathEnsemble& ensemble, const CrossingWindow& w) {
  if (!(w.T > 0.0) || !(w.delta > 0.0) || !(w.eps > 0.0))
    throw std::invalid_argument("any_pair_in_CM: T, delta, eps must be positive");
  std::vector<CrossInterval> ups;
  std::vector<CrossInterval> downs;
  for (const auto& p : ensemble.paths()) {
    const auto runs = value_runs(p, w.T);
    auto u = crossing_intervals(runs, w.r, w.eps, true);
    auto d = crossing_intervals(runs, w.r, w.eps, false);
    ups.insert(ups.end(), u.begin(), u.end());
    downs.insert(downs.end(), d.begin(), d.end());
  }
  for (const auto& u : ups)
    for (const auto& d : downs)
      if (std::max(u.hi, d.hi) - std::min(u.lo, d.lo) <= w.delta) return true;
  return false;
}

ModuliTable precompactness_score(const PathEnsemble& ensemble, ModulusKind kind,
                                 const std::vector<double>& T_grid,
                                 const std::vector<double>& delta_grid) {
  if (ensemble.empty()) throw std::invalid_argument("precompactness_score: empty ensemble");
  ModuliTable table;
  table.T_grid = T_grid;
  table.delta_grid = delta_grid;
  table.values.assign(T_grid.size(), std::vector<double>(delta_grid.size(), 0.0));
  for (std::size_t ti = 0; ti < T_grid.size(); ++ti)
    for (std::size_t di = 0; di < delta_grid.size(); ++di) {
      double sup = 0.0;
      for (const auto& p : ensemble.paths()) {
        switch (kind) {
          case ModulusKind::C:
            sup = std::max(sup, modulus2(p, T_grid[ti], delta_grid[di]));
            break;
          case ModulusKind::J:
            sup = std::max(sup, modulusJ(p, T_grid[ti], delta_grid[di]));
            break;
          case ModulusKind::M:
            sup = std::max(sup, modulusM(p, T_grid[ti], delta_grid[di]));
            break;
        }
      }
      table.values[ti][di] = sup;
    }
  return table;
}

}  // namespace pathweave
