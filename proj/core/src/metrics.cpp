#include "pathweave/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pathweave/parallel.hpp"

namespace pathweave {

CorrespondenceGrid make_correspondence_grid(const CadlagPath& a, const CadlagPath& b,
                                            GraphKind kind, double refinement) {
  if (!(refinement > 0.0))
    throw std::invalid_argument("correspondence grid: refinement must be positive");
  CorrespondenceGrid grid;
  grid.rows = refine_graph(compact_graph(a, kind), refinement);
  grid.cols = refine_graph(compact_graph(b, kind), refinement);
  grid.refinement = refinement;
  return grid;
}

namespace {

double frechet_value(const CorrespondenceGrid& g) {
  const auto& A = g.rows.points;
  const auto& B = g.cols.points;
  const std::size_t m = A.size();
  const std::size_t n = B.size();
  std::vector<double> row(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double d = d_sqz(A[0], B[j]);
    row[j] = j == 0 ? d : std::max(row[j - 1], d);
  }
  std::vector<double> next(n);
  for (std::size_t i = 1; i < m; ++i) {
    next[0] = std::max(row[0], d_sqz(A[i], B[0]));
    for (std::size_t j = 1; j < n; ++j) {
      const double best = std::min({row[j], row[j - 1], next[j - 1]});
      next[j] = std::max(best, d_sqz(A[i], B[j]));
    }
    row.swap(next);
  }
  return row[n - 1];
}

// Lexicographically smallest optimal staircase: a backward feasibility table
// under the cap `value`, then a greedy forward walk preferring the smallest
// next index pair.
std::vector<std::pair<std::size_t, std::size_t>> frechet_witness(const CorrespondenceGrid& g,
                                                                 double value) {
  const auto& A = g.rows.points;
  const auto& B = g.cols.points;
  const std::size_t m = A.size();
  const std::size_t n = B.size();
  std::vector<std::uint8_t> feas(m * n, 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint8_t& { return feas[i * n + j]; };
  for (std::size_t ii = m; ii-- > 0;) {
    for (std::size_t jj = n; jj-- > 0;) {
      if (d_sqz(A[ii], B[jj]) > value) continue;
      if (ii + 1 == m && jj + 1 == n) {
        at(ii, jj) = 1;
        continue;
      }
      const bool down = ii + 1 < m && at(ii + 1, jj);
      const bool right = jj + 1 < n && at(ii, jj + 1);
      const bool diag = ii + 1 < m && jj + 1 < n && at(ii + 1, jj + 1);
      at(ii, jj) = down || right || diag;
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> w;
  std::size_t i = 0;
  std::size_t j = 0;
  w.emplace_back(i, j);
  while (i + 1 < m || j + 1 < n) {
    if (j + 1 < n && at(i, j + 1)) {
      ++j;
    } else if (i + 1 < m && at(i + 1, j)) {
      ++i;
    } else {
      ++i;
      ++j;
    }
    w.emplace_back(i, j);
  }
  return w;
}

PathDistanceResult frechet_distance(const CadlagPath& a, const CadlagPath& b, GraphKind kind,
                                    double refinement, bool with_witness) {
  const CorrespondenceGrid g = make_correspondence_grid(a, b, kind, refinement);
  PathDistanceResult r;
  r.value = frechet_value(g);
  r.error_bound = refinement;
  if (with_witness) r.witness = frechet_witness(g, r.value);
  return r;
}

}  // namespace

PathDistanceResult d_J1(const CadlagPath& a, const CadlagPath& b, double refinement,
                        bool with_witness) {
  return frechet_distance(a, b, GraphKind::Closed, refinement, with_witness);
}

PathDistanceResult d_M1(const CadlagPath& a, const CadlagPath& b, double refinement,
                        bool with_witness) {
  return frechet_distance(a, b, GraphKind::Filled, refinement, with_witness);
}

namespace {

void oracle_rec(const std::vector<ChartCoords>& A, const std::vector<ChartCoords>& B,
                std::size_t i, std::size_t j, double cur, double& best) {
  cur = std::max(cur, d_sqz(A[i], B[j]));
  if (cur >= best) return;
  if (i + 1 == A.size() && j + 1 == B.size()) {
    best = cur;
    return;
  }
  if (i + 1 < A.size() && j + 1 < B.size()) oracle_rec(A, B, i + 1, j + 1, cur, best);
  if (i + 1 < A.size()) oracle_rec(A, B, i + 1, j, cur, best);
  if (j + 1 < B.size()) oracle_rec(A, B, i, j + 1, cur, best);
}

}  // namespace

double oracle_distance(const CadlagPath& a, const CadlagPath& b, GraphKind kind, double refinement,
                       std::size_t max_vertices) {
  const CorrespondenceGrid g = make_correspondence_grid(a, b, kind, refinement);
  if (g.rows.points.size() > max_vertices || g.cols.points.size() > max_vertices)
    throw TooLargeError("oracle_distance: too_large (refined vertex count exceeds limit)");
  double best = std::numeric_limits<double>::infinity();
  oracle_rec(g.rows.points, g.cols.points, 0, 0, 0.0, best);
  return best;
}

std::vector<std::vector<double>> distance_matrix(const PathEnsemble& a, const PathEnsemble& b,
                                                 PathMetric metric, double refinement,
                                                 int threads) {
  if (a.empty() || b.empty()) throw std::invalid_argument("distance_matrix: empty ensemble");
  const GraphKind kind = metric == PathMetric::J1 ? GraphKind::Closed : GraphKind::Filled;
  std::vector<std::vector<double>> m(a.size(), std::vector<double>(b.size(), 0.0));
  parallel_for(a.size() * b.size(), threads, [&](std::size_t idx) {
    const std::size_t i = idx / b.size();
    const std::size_t j = idx % b.size();
    const CorrespondenceGrid g = make_correspondence_grid(a[i], b[j], kind, refinement);
    m[i][j] = frechet_value(g);
  });
  return m;
}

double hausdorff(const PathEnsemble& a, const PathEnsemble& b, PathMetric metric,
                 double refinement, int threads) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff: empty ensemble");
  const auto m = distance_matrix(a, b, metric, refinement, threads);
  double h = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) best = std::min(best, m[i][j]);
    h = std::max(h, best);
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) best = std::min(best, m[i][j]);
    h = std::max(h, best);
  }
  return h;
}

double graph_hausdorff_window(const CadlagPath& a, const CadlagPath& b, GraphKind kind,
                              TimeWindow window, double refinement) {
  const GraphPolyline ga =
      kind == GraphKind::Closed ? closed_graph(a, window) : filled_graph(a, window);
  const GraphPolyline gb =
      kind == GraphKind::Closed ? closed_graph(b, window) : filled_graph(b, window);
  const RefinedGraph ra = refine_graph(ga, refinement);
  const RefinedGraph rb = refine_graph(gb, refinement);
  auto one_sided = [](const std::vector<ChartCoords>& from, const std::vector<ChartCoords>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) best = std::min(best, d_sqz(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(ra.points, rb.points), one_sided(rb.points, ra.points));
}

}  // namespace pathweave
