#include "pathweave/path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathweave {

CadlagPath::CadlagPath(std::vector<DomainComponent> components, std::vector<Breakpoint> breakpoints,
                       std::map<std::size_t, ExtReal> tails)
    : components_(std::move(components)),
      breakpoints_(std::move(breakpoints)),
      tails_(std::move(tails)) {}

std::optional<std::size_t> CadlagPath::component_containing(double t) const {
  // Components are sorted; find the last one starting at or before t.
  auto it = std::upper_bound(components_.begin(), components_.end(), t,
                             [](double v, const DomainComponent& c) { return v < c.lo; });
  if (it == components_.begin()) return std::nullopt;
  --it;
  if (!it->contains(t)) return std::nullopt;
  return static_cast<std::size_t>(it - components_.begin());
}

namespace {

bool finite_or_inf(double v) { return !std::isnan(v); }

}  // namespace

std::vector<Violation> CadlagPath::validate() const {
  std::vector<Violation> out;
  auto flag = [&](std::string what, double t) { out.push_back({std::move(what), t}); };

  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& c = components_[i];
    if (std::isnan(c.lo) || std::isnan(c.hi) || c.lo > c.hi ||
        (std::isinf(c.lo) && c.lo == c.hi))
      flag("malformed component", c.lo);
    if (c.lo_unbounded() && i != 0) flag("lower-unbounded component not first", c.hi);
    if (c.hi_unbounded() && i + 1 != components_.size())
      flag("upper-unbounded component not last", c.lo);
    if (i > 0 && !(components_[i - 1].hi < c.lo))
      flag("components not separated and increasing", c.lo);
  }

  std::vector<std::size_t> bp_count(components_.size(), 0);
  for (std::size_t j = 0; j < breakpoints_.size(); ++j) {
    const auto& b = breakpoints_[j];
    if (!finite_or_inf(b.left) || !finite_or_inf(b.right) || std::isnan(b.t) || std::isinf(b.t))
      flag("malformed breakpoint", b.t);
    if (j > 0 && !(breakpoints_[j - 1].t < b.t)) flag("breakpoints not strictly increasing", b.t);
    auto ci = component_containing(b.t);
    if (!ci) {
      flag("breakpoint outside domain", b.t);
      continue;
    }
    ++bp_count[*ci];
    // Left-limit consistency inside a component: a breakpoint preceded by
    // another one in the same component must start where the previous stretch
    // ends. At the component start the left value is free (start jumps).
    if (j > 0) {
      const auto& prev = breakpoints_[j - 1];
      auto cp = component_containing(prev.t);
      if (cp && *cp == *ci && b.left != prev.right)
        flag("left value does not match limit from below", b.t);
    }
  }

  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (bp_count[i] == 0 && tails_.find(i) == tails_.end())
      flag("component carries no breakpoint and no tail value", components_[i].lo);
  }
  for (const auto& [idx, value] : tails_) {
    if (idx >= components_.size())
      flag("tail value for nonexistent component", static_cast<double>(idx));
    else if (bp_count[idx] > 0)
      flag("tail value for component with breakpoints", components_[idx].lo);
    if (!finite_or_inf(value)) flag("malformed tail value", 0.0);
  }
  return out;
}

std::optional<PathValue> CadlagPath::eval(double t) const {
  auto ci = component_containing(t);
  if (!ci) return std::nullopt;
  const DomainComponent& comp = components_[*ci];

  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t,
                             [](const Breakpoint& b, double v) { return b.t < v; });
  if (it != breakpoints_.end() && it->t == t) return PathValue{it->left, it->right};

  // Constant stretch: the level is the right value of the previous breakpoint
  // in this component, else the left value of the next one, else the tail.
  if (it != breakpoints_.begin()) {
    const Breakpoint& prev = *(it - 1);
    if (prev.t >= comp.lo) return PathValue{prev.right, prev.right};
  }
  if (it != breakpoints_.end() && it->t <= comp.hi) return PathValue{it->left, it->left};
  auto tail = tails_.find(*ci);
  if (tail != tails_.end()) return PathValue{tail->second, tail->second};
  return PathValue{0.0, 0.0};  // unreachable on validated paths
}

ExtReal CadlagPath::initial_time() const {
  if (components_.empty()) throw std::logic_error("initial_time on empty path");
  return components_.front().lo;
}

ExtReal CadlagPath::final_time() const {
  if (components_.empty()) throw std::logic_error("final_time on empty path");
  return components_.back().hi;
}

PathClass CadlagPath::classify() const {
  PathClass pc;
  pc.continuous = std::all_of(breakpoints_.begin(), breakpoints_.end(),
                              [](const Breakpoint& b) { return b.left == b.right; });
  pc.connected = components_.size() <= 1;
  pc.down_infinite = !components_.empty() && components_.front().lo_unbounded();
  pc.up_infinite = !components_.empty() && components_.back().hi_unbounded();
  pc.bi_infinite = pc.up_infinite && pc.down_infinite;
  return pc;
}

CadlagPath make_constant_path(DomainComponent dom, ExtReal value) {
  return CadlagPath({dom}, {}, {{0, value}});
}

CadlagPath make_step_path(DomainComponent dom, ExtReal initial,
                          std::span<const std::pair<double, ExtReal>> jumps) {
  if (jumps.empty()) return make_constant_path(dom, initial);
  std::vector<Breakpoint> bps;
  bps.reserve(jumps.size());
  ExtReal level = initial;
  for (const auto& [t, next] : jumps) {
    bps.push_back({t, level, next});
    level = next;
  }
  return CadlagPath({dom}, std::move(bps));
}

CadlagPath make_step_path(DomainComponent dom, ExtReal initial,
                          std::initializer_list<std::pair<double, ExtReal>> jumps) {
  std::vector<std::pair<double, ExtReal>> v(jumps);
  return make_step_path(dom, initial, std::span<const std::pair<double, ExtReal>>(v));
}

CadlagPath make_ramp_path(double t0, double t1, ExtReal x0, ExtReal x1, int steps,
                          DomainComponent dom) {
  if (steps < 1) throw std::invalid_argument("make_ramp_path: steps must be >= 1");
  if (!(t0 < t1)) throw std::invalid_argument("make_ramp_path: need t0 < t1");
  std::vector<std::pair<double, ExtReal>> jumps;
  jumps.reserve(static_cast<std::size_t>(steps));
  const double dt = (t1 - t0) / steps;
  const double dx = (x1 - x0) / steps;
  for (int k = 1; k <= steps; ++k) jumps.emplace_back(t0 + k * dt, x0 + k * dx);
  return make_step_path(dom, x0, jumps);
}

void PathEnsemble::add(CadlagPath path, std::string id) {
  if (path.empty_domain())
    throw std::invalid_argument("PathEnsemble: empty-domain paths are not allowed");
  if (id.empty()) id = "p" + std::to_string(paths_.size());
  paths_.push_back(std::move(path));
  ids_.push_back(std::move(id));
}

}  // namespace pathweave
