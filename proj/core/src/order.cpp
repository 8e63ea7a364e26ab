#include "pathweave/order.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace pathweave {

namespace {

void require_connected(const CadlagPath& p) {
  if (p.components().size() > 1)
    throw std::invalid_argument("requires_connected: path domain must be a single interval");
}

}  // namespace

bool in_split_domain(const CadlagPath& p, const SplitTime& st) {
  require_connected(p);
  if (p.empty_domain()) return false;
  const DomainComponent& c = p.components().front();
  if (!c.contains(st.t)) return false;
  if (st.side == SplitTime::Side::Minus && st.t == c.lo) return false;
  if (st.side == SplitTime::Side::Plus && st.t == c.hi) return false;
  return true;
}

ExtReal eval_split(const CadlagPath& p, const SplitTime& st) {
  const auto v = p.eval(st.t);
  if (!v) throw std::invalid_argument("eval_split: time outside domain");
  return st.side == SplitTime::Side::Minus ? v->left : v->right;
}

bool in_Il(const CadlagPath& p, const SplitTime& st) {
  require_connected(p);
  if (p.empty_domain()) return false;
  const DomainComponent& c = p.components().front();
  if (!c.contains(st.t)) return false;
  if (in_split_domain(p, st)) return true;
  const auto v = *p.eval(st.t);
  if (st.side == SplitTime::Side::Minus && st.t == c.lo) return v.right < v.left;
  if (st.side == SplitTime::Side::Plus && st.t == c.hi) return v.left < v.right;
  return false;
}

bool in_Ir(const CadlagPath& p, const SplitTime& st) {
  require_connected(p);
  if (p.empty_domain()) return false;
  const DomainComponent& c = p.components().front();
  if (!c.contains(st.t)) return false;
  if (in_split_domain(p, st)) return true;
  const auto v = *p.eval(st.t);
  if (st.side == SplitTime::Side::Minus && st.t == c.lo) return v.left < v.right;
  if (st.side == SplitTime::Side::Plus && st.t == c.hi) return v.right < v.left;
  return false;
}

SplitIndexSets split_index_sets(const CadlagPath& p) {
  require_connected(p);
  SplitIndexSets out;
  if (p.empty_domain()) return out;
  const DomainComponent& c = p.components().front();
  std::set<double> times;
  if (!c.lo_unbounded()) times.insert(c.lo);
  if (!c.hi_unbounded()) times.insert(c.hi);
  for (const auto& b : p.breakpoints()) times.insert(b.t);
  for (double t : times)
    for (auto side : {SplitTime::Side::Minus, SplitTime::Side::Plus}) {
      const SplitTime st{t, side};
      if (in_split_domain(p, st)) out.I_s.push_back(st);
      if (in_Il(p, st)) out.I_l.push_back(st);
      if (in_Ir(p, st)) out.I_r.push_back(st);
    }
  return out;
}

namespace {

// Probe times for deciding L(p1) n R(p2): the endpoints of every maximal
// stretch on which both paths are constant, inside the common domain. A
// sentinel probe is added on unbounded sides so constant tails get sampled.
std::vector<double> probe_times(const CadlagPath& p1, const CadlagPath& p2, double lo, double hi) {
  std::set<double> cands;
  if (!std::isinf(lo)) cands.insert(lo);
  if (!std::isinf(hi)) cands.insert(hi);
  for (const auto& b : p1.breakpoints())
    if (b.t >= lo && b.t <= hi) cands.insert(b.t);
  for (const auto& b : p2.breakpoints())
    if (b.t >= lo && b.t <= hi) cands.insert(b.t);
  if (cands.empty()) cands.insert(0.0);
  if (std::isinf(lo)) cands.insert(*cands.begin() - 1.0);
  if (std::isinf(hi)) cands.insert(*cands.rbegin() + 1.0);
  return {cands.begin(), cands.end()};
}

}  // namespace

bool is_ordered(const CadlagPath& p1, const CadlagPath& p2) {
  require_connected(p1);
  require_connected(p2);
  if (p1.empty_domain() || p2.empty_domain()) return true;
  const DomainComponent& c1 = p1.components().front();
  const DomainComponent& c2 = p2.components().front();
  const double lo = std::max(c1.lo, c2.lo);
  const double hi = std::min(c1.hi, c2.hi);
  if (lo > hi) return true;  // disjoint domains: both orderings hold
  for (double t : probe_times(p1, p2, lo, hi)) {
    if (!c1.contains(t) || !c2.contains(t)) continue;
    for (auto side : {SplitTime::Side::Minus, SplitTime::Side::Plus}) {
      const SplitTime st{t, side};
      if (in_Il(p1, st) && in_Ir(p2, st) && eval_split(p2, st) < eval_split(p1, st)) return false;
    }
  }
  return true;
}

bool crosses(const CadlagPath& p1, const CadlagPath& p2) {
  return !is_ordered(p1, p2) && !is_ordered(p2, p1);
}

bool collides_at(const CadlagPath& p1, const CadlagPath& p2, double t) {
  const auto v1 = p1.eval(t);
  const auto v2 = p2.eval(t);
  if (!v1 || !v2) return false;
  // Sign choice +: p1 jumps down over the same interval p2 jumps up over.
  const bool plus = std::max(v1->right, v2->left) < std::min(v1->left, v2->right);
  const bool minus = std::max(v1->left, v2->right) < std::min(v1->right, v2->left);
  return plus || minus;
}

NoncrossingReport is_noncrossing_set(const PathEnsemble& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (crosses(a[i], a[j])) return {false, i, j};
  return {};
}

std::vector<CollisionEvent> collision_scan(const CadlagPath& p1, const CadlagPath& p2,
                                           bool boundary_only) {
  std::set<double> times;
  for (const auto& b : p1.breakpoints()) times.insert(b.t);
  for (const auto& b : p2.breakpoints()) times.insert(b.t);
  std::set<double> boundary;
  for (const auto* p : {&p1, &p2})
    for (const auto& c : p->components()) {
      if (!c.lo_unbounded()) boundary.insert(c.lo);
      if (!c.hi_unbounded()) boundary.insert(c.hi);
    }
  std::vector<CollisionEvent> out;
  for (double t : times) {
    if (!collides_at(p1, p2, t)) continue;
    const bool on_boundary = boundary.count(t) > 0;
    if (boundary_only && !on_boundary) continue;
    out.push_back({t, on_boundary});
  }
  return out;
}

}  // namespace pathweave
