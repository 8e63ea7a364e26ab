#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pathweave/squeezed.hpp"

namespace pathweave {

// One maximal piece of a closed time domain: an interval [lo, hi] (either end
// may be infinite) or a single point (lo == hi, finite).
struct DomainComponent {
  double lo = 0.0;
  double hi = 0.0;

  static DomainComponent point(double t) { return {t, t}; }
  static DomainComponent interval(double lo, double hi) { return {lo, hi}; }
  static DomainComponent all_reals() { return {kMinusInf, kPlusInf}; }
  static DomainComponent from(double lo) { return {lo, kPlusInf}; }
  static DomainComponent up_to(double hi) { return {kMinusInf, hi}; }

  bool is_point() const { return lo == hi; }
  bool lo_unbounded() const { return lo == kMinusInf; }
  bool hi_unbounded() const { return hi == kPlusInf; }
  bool contains(double t) const { return lo <= t && t <= hi; }
};

// A recorded (time, left value, right value) triple. Breakpoints with
// left != right are jumps; equal values act as anchors that pin the constant
// level of the surrounding stretch.
struct Breakpoint {
  double t = 0.0;
  ExtReal left = 0.0;
  ExtReal right = 0.0;
};

struct PathValue {
  ExtReal left = 0.0;
  ExtReal right = 0.0;
};

struct PathClass {
  bool continuous = false;
  bool connected = false;
  bool up_infinite = false;
  bool down_infinite = false;
  bool bi_infinite = false;
};

struct Violation {
  std::string what;
  double t = 0.0;
};

// A cadlag path in the step-function model: a closed domain made of finitely
// many components, piecewise-constant values between breakpoints, and left /
// right values at every domain time. Values may be +-inf. Components without
// any breakpoint carry their constant level in `tails`.
class CadlagPath {
 public:
  CadlagPath() = default;
  CadlagPath(std::vector<DomainComponent> components, std::vector<Breakpoint> breakpoints,
             std::map<std::size_t, ExtReal> tails = {});

  const std::vector<DomainComponent>& components() const { return components_; }
  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
  const std::map<std::size_t, ExtReal>& tails() const { return tails_; }

  bool empty_domain() const { return components_.empty(); }

  // All invariant checks; returns every violation found, not just the first.
  std::vector<Violation> validate() const;
  bool is_valid() const { return validate().empty(); }

  // (pi(t-), pi(t+)) for t in the domain, nothing otherwise.
  std::optional<PathValue> eval(double t) const;

  // Infimum of the domain; throws std::logic_error on an empty domain.
  ExtReal initial_time() const;

  // Supremum of the domain; throws std::logic_error on an empty domain.
  ExtReal final_time() const;

  PathClass classify() const;

  std::optional<std::size_t> component_containing(double t) const;

  // Used by the simulator to mark where tracing stopped; the path continues
  // constantly past this time.
  std::optional<double> truncation_horizon;

 private:
  friend class PathBuilder;

  std::vector<DomainComponent> components_;
  std::vector<Breakpoint> breakpoints_;
  std::map<std::size_t, ExtReal> tails_;
};

// Convenience constructors used all over the tests and the simulator.
CadlagPath make_constant_path(DomainComponent dom, ExtReal value);

// Step path on a single component: `initial` until the first jump, then the
// values listed in `jumps` (time, new value); jump times strictly increasing
// and inside dom.
CadlagPath make_step_path(DomainComponent dom, ExtReal initial,
                          std::span<const std::pair<double, ExtReal>> jumps);
CadlagPath make_step_path(DomainComponent dom, ExtReal initial,
                          std::initializer_list<std::pair<double, ExtReal>> jumps);

// Fine staircase approximation of the linear ramp from (t0, x0) to (t1, x1),
// constant outside [t0, t1], on the given single-component domain. The sup
// distance to the true ramp is (x1 - x0) / steps.
CadlagPath make_ramp_path(double t0, double t1, ExtReal x0, ExtReal x1, int steps,
                          DomainComponent dom);

// A finite set of nonempty paths standing in for a compact subset of path
// space. Empty-domain paths are rejected here (they stay representable as
// bare CadlagPath values).
class PathEnsemble {
 public:
  PathEnsemble() = default;

  void add(CadlagPath path, std::string id = {});

  std::size_t size() const { return paths_.size(); }
  bool empty() const { return paths_.empty(); }
  const CadlagPath& operator[](std::size_t i) const { return paths_[i]; }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  const std::vector<CadlagPath>& paths() const { return paths_; }

 private:
  std::vector<CadlagPath> paths_;
  std::vector<std::string> ids_;
};

}  // namespace pathweave
