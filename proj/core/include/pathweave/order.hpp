#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pathweave/path.hpp"

namespace pathweave {

// A point of the split real line: the word "t-" or "t+".
struct SplitTime {
  double t = 0.0;
  enum class Side : std::uint8_t { Minus, Plus } side = Side::Plus;

  static SplitTime minus(double t) { return {t, Side::Minus}; }
  static SplitTime plus(double t) { return {t, Side::Plus}; }

  // Total order: t- < t+ < s- whenever t < s.
  friend bool operator<(const SplitTime& a, const SplitTime& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.side == Side::Minus && b.side == Side::Plus;
  }
  friend bool operator==(const SplitTime& a, const SplitTime& b) {
    return a.t == b.t && a.side == b.side;
  }
};

// Split-time index sets of a connected path. I_s drops the outer words s-
// and u+ at finite boundaries; I_l / I_r add them back when the boundary
// jump points the right way.
bool in_split_domain(const CadlagPath& p, const SplitTime& st);  // I_s
bool in_Il(const CadlagPath& p, const SplitTime& st);
bool in_Ir(const CadlagPath& p, const SplitTime& st);

// Value of the path at a split-time (pi(t-) or pi(t+)); requires t in domain.
ExtReal eval_split(const CadlagPath& p, const SplitTime& st);

struct SplitIndexSets {
  std::vector<SplitTime> I_s;
  std::vector<SplitTime> I_l;
  std::vector<SplitTime> I_r;
};

// Memberships of the probe split-times (breakpoints and finite boundaries).
// Throws std::invalid_argument for non-connected paths.
SplitIndexSets split_index_sets(const CadlagPath& p);

// The relation p1 <| p2: the two paths admit bi-infinite extensions that are
// ordered everywhere. Decided via emptiness of L(p1) n R(p2) probed at the
// finitely many split-times where the sign pattern can change (both paths are
// constant between breakpoints, so each open stretch is captured by probing
// its endpoints).
bool is_ordered(const CadlagPath& p1, const CadlagPath& p2);

bool crosses(const CadlagPath& p1, const CadlagPath& p2);

// Both paths jump over a common interval in opposite directions at time t.
bool collides_at(const CadlagPath& p1, const CadlagPath& p2, double t);

struct NoncrossingReport {
  bool noncrossing = true;
  std::size_t first = 0;  // offending pair when noncrossing == false
  std::size_t second = 0;
};

NoncrossingReport is_noncrossing_set(const PathEnsemble& a);

struct CollisionEvent {
  double t = 0.0;
  bool boundary = false;  // t is a finite domain-boundary time of either path
};

std::vector<CollisionEvent> collision_scan(const CadlagPath& p1, const CadlagPath& p2,
                                           bool boundary_only = false);

}  // namespace pathweave
