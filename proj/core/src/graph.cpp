#include "pathweave/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathweave {

namespace {

struct Emitter {
  GraphPolyline out;

  void push(SqueezedPoint p, SegKind seg) { out.vertices.push_back({p, seg}); }

  void set_last_seg(SegKind seg) {
    if (!out.vertices.empty()) out.vertices.back().seg_to_next = seg;
  }
};

// Emits the vertices of one component clipped to [lo, hi] (finite bounds).
// `jump_seg` is JumpVertical for filled graphs and None for closed graphs.
void emit_component(const CadlagPath& p, double lo, double hi, SegKind jump_seg, Emitter& em) {
  std::vector<double> times;
  times.push_back(lo);
  for (const auto& b : p.breakpoints())
    if (b.t > lo && b.t < hi) times.push_back(b.t);
  if (hi > lo) times.push_back(hi);

  bool first = true;
  for (double t : times) {
    const PathValue v = *p.eval(t);
    if (!first) em.set_last_seg(SegKind::Horizontal);
    if (v.left != v.right) {
      em.push(SqueezedPoint::interior(v.left, t), jump_seg);
      em.push(SqueezedPoint::interior(v.right, t), SegKind::None);
    } else {
      em.push(SqueezedPoint::interior(v.left, t), SegKind::None);
    }
    first = false;
  }
}

GraphPolyline build_graph(const CadlagPath& p, GraphKind kind, std::optional<TimeWindow> window) {
  if (window && window->lo > window->hi)
    throw std::invalid_argument("graph window: need lo <= hi");
  const SegKind jump_seg = kind == GraphKind::Filled ? SegKind::JumpVertical : SegKind::None;

  Emitter em;
  em.push(SqueezedPoint::star_minus(), SegKind::None);
  for (const DomainComponent& c : p.components()) {
    double lo = c.lo;
    double hi = c.hi;
    if (window) {
      lo = std::max(lo, window->lo);
      hi = std::min(hi, window->hi);
      if (lo > hi) continue;
    } else if (c.lo_unbounded() || c.hi_unbounded()) {
      // Full graph: unbounded stretches become exact tail rays, so the finite
      // part only needs to span the breakpoints inside this component.
      std::optional<double> first_bp;
      std::optional<double> last_bp;
      for (const auto& b : p.breakpoints()) {
        if (!c.contains(b.t)) continue;
        if (!first_bp) first_bp = b.t;
        last_bp = b.t;
      }
      if (c.lo_unbounded()) lo = first_bp ? *first_bp : (c.hi_unbounded() ? 0.0 : c.hi);
      if (c.hi_unbounded()) hi = last_bp ? *last_bp : lo;
    }
    const bool ray_down = !window && c.lo_unbounded();
    const bool ray_up = !window && c.hi_unbounded();
    if (ray_down) em.set_last_seg(SegKind::TailRay);
    emit_component(p, lo, hi, jump_seg, em);
    if (ray_up) em.set_last_seg(SegKind::TailRay);
  }
  em.push(SqueezedPoint::star_plus(), SegKind::None);
  return std::move(em.out);
}

}  // namespace

GraphPolyline closed_graph(const CadlagPath& p, TimeWindow window) {
  return build_graph(p, GraphKind::Closed, window);
}

GraphPolyline filled_graph(const CadlagPath& p, TimeWindow window) {
  return build_graph(p, GraphKind::Filled, window);
}

GraphPolyline compact_graph(const CadlagPath& p, GraphKind kind) {
  return build_graph(p, kind, std::nullopt);
}

namespace {

// Chart curves of horizontal stretches are affine in v on each side of v = 0
// (u = phi(x) * (1 - |v|)), so subdividing uniformly in v with step h keeps
// consecutive samples within chart distance h. Jump verticals are affine in
// u outright.
void subdivide_horizontal(double x, double v0, double v1, const ChartCoords& to,
                          RefinedGraph& out, double h) {
  const double px = phi(x);
  auto emit_leg = [&](double a, double b) {
    const double len = std::abs(b - a);
    const int n = std::max(1, static_cast<int>(std::ceil(len / h)));
    for (int k = 1; k <= n; ++k) {
      const double v = a + (b - a) * (static_cast<double>(k) / n);
      out.points.push_back({px * (1.0 - std::abs(v)), v});
      out.in_graph_segment.push_back(true);
    }
  };
  if ((v0 < 0.0 && v1 > 0.0) || (v0 > 0.0 && v1 < 0.0)) {
    emit_leg(v0, 0.0);
    emit_leg(0.0, v1);
  } else {
    emit_leg(v0, v1);
  }
  // Snap the final sample to the exact target vertex.
  out.points.back() = to;
}

}  // namespace

RefinedGraph refine_graph(const GraphPolyline& g, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("refine_graph: refinement must be positive");
  RefinedGraph out;
  if (g.vertices.empty()) return out;
  out.points.push_back(to_chart(g.vertices.front().p));
  for (std::size_t i = 0; i + 1 < g.vertices.size(); ++i) {
    const GraphVertex& a = g.vertices[i];
    const GraphVertex& b = g.vertices[i + 1];
    const ChartCoords ca = to_chart(a.p);
    const ChartCoords cb = to_chart(b.p);
    switch (a.seg_to_next) {
      case SegKind::None:
        out.points.push_back(cb);
        out.in_graph_segment.push_back(false);
        break;
      case SegKind::JumpVertical: {
        const double len = std::abs(cb.u - ca.u);
        const int n = std::max(1, static_cast<int>(std::ceil(len / h)));
        for (int k = 1; k <= n; ++k) {
          const double u = ca.u + (cb.u - ca.u) * (static_cast<double>(k) / n);
          out.points.push_back({u, ca.v});
          out.in_graph_segment.push_back(true);
        }
        out.points.back() = cb;
        break;
      }
      case SegKind::Horizontal:
      case SegKind::TailRay: {
        const double x = a.p.is_star() ? b.p.x : a.p.x;
        subdivide_horizontal(x, ca.v, cb.v, cb, out, h);
        break;
      }
    }
  }
  return out;
}

}  // namespace pathweave
