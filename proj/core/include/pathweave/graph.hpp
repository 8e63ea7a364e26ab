#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pathweave/path.hpp"
#include "pathweave/squeezed.hpp"

namespace pathweave {

struct TimeWindow {
  double lo = 0.0;
  double hi = 0.0;
};

enum class GraphKind : std::uint8_t { Closed, Filled };

// Connectivity tag from one polyline vertex to the next (in the total order
// of the graph):
//   None         gap; no graph points between the two vertices
//   Horizontal   constant stretch (x fixed, time varies)
//   JumpVertical the vertical of a jump (time fixed, x varies); filled only
//   TailRay      constant stretch running to t = +-inf, ending at a star
enum class SegKind : std::uint8_t { None, Horizontal, JumpVertical, TailRay };

struct GraphVertex {
  SqueezedPoint p;
  SegKind seg_to_next = SegKind::None;
};

// The closed or filled graph of a path as an ordered vertex list. The list
// order is the total order on the graph: time increasing, and at a jump time
// from pi(t-) toward pi(t+). First vertex is (*,-inf), last is (*,+inf).
struct GraphPolyline {
  std::vector<GraphVertex> vertices;
};

// Graph restricted to a time window; the stars stand in for everything
// outside. Throws std::invalid_argument when window.lo > window.hi.
GraphPolyline closed_graph(const CadlagPath& p, TimeWindow window);
GraphPolyline filled_graph(const CadlagPath& p, TimeWindow window);

// The full compactified graph. Unbounded components run to the stars via
// exact tail rays, so no window is involved and nothing is cut off.
GraphPolyline compact_graph(const CadlagPath& p, GraphKind kind);

// Refined chart sample of a polyline: every original vertex is kept, every
// graph segment is subdivided so that consecutive samples sit within chart
// distance h of each other, and the in-graph connectivity is preserved.
struct RefinedGraph {
  std::vector<ChartCoords> points;
  // in_graph_segment[i] == true when the stretch between points i and i+1
  // lies inside the graph (horizontal, jump vertical or tail ray).
  std::vector<bool> in_graph_segment;
};

RefinedGraph refine_graph(const GraphPolyline& g, double h);

}  // namespace pathweave
