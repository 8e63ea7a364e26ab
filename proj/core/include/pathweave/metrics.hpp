#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pathweave/graph.hpp"
#include "pathweave/path.hpp"

namespace pathweave {

enum class PathMetric : std::uint8_t { J1, M1 };

struct TooLargeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Refined vertex lists of the two compactified graphs entering the
// correspondence optimization. Monotone correspondences between finite
// totally ordered sets are exactly the staircase couplings over this grid.
struct CorrespondenceGrid {
  RefinedGraph rows;
  RefinedGraph cols;
  double refinement = 0.0;
};

CorrespondenceGrid make_correspondence_grid(const CadlagPath& a, const CadlagPath& b,
                                            GraphKind kind, double refinement);

struct PathDistanceResult {
  double value = 0.0;
  double error_bound = 0.0;
  // Staircase coupling attaining `value`: index pairs into the refined vertex
  // lists, nondecreasing in both coordinates and covering both lists.
  std::vector<std::pair<std::size_t, std::size_t>> witness;
};

// Distance over monotone correspondences of the compactified closed graphs,
// computed as a discrete Frechet dynamic program on the refined grid. The
// graph segments are affine in chart coordinates, so extending the optimal
// staircase affinely along segments yields a full correspondence with the
// same sup: the DP value is an upper bound on the true distance, and the
// refinement argument brackets it within `error_bound` = refinement.
PathDistanceResult d_J1(const CadlagPath& a, const CadlagPath& b, double refinement = 0.01,
                        bool with_witness = true);

// Same over the filled graphs (jump verticals included).
PathDistanceResult d_M1(const CadlagPath& a, const CadlagPath& b, double refinement = 0.01,
                        bool with_witness = true);

// Independent check: exhaustive enumeration of every staircase coupling on
// the same refined grid. Exact min-max; throws TooLargeError when either
// refined list exceeds max_vertices.
double oracle_distance(const CadlagPath& a, const CadlagPath& b, GraphKind kind,
                       double refinement, std::size_t max_vertices = 10);

// Hausdorff distance between two nonempty path ensembles under d_J1 or d_M1.
double hausdorff(const PathEnsemble& a, const PathEnsemble& b, PathMetric metric,
                 double refinement = 0.01, int threads = 1);

// Pairwise distance matrix (rows = a, cols = b), for CSV export.
std::vector<std::vector<double>> distance_matrix(const PathEnsemble& a, const PathEnsemble& b,
                                                 PathMetric metric, double refinement = 0.01,
                                                 int threads = 1);

// Hausdorff distance in d_sqz between the windowed graph samples of two
// paths. A necessary-condition cross-check: small d_J1 forces this small.
double graph_hausdorff_window(const CadlagPath& a, const CadlagPath& b, GraphKind kind,
                              TimeWindow window, double refinement = 0.01);

}  // namespace pathweave
