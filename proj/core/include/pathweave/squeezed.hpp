#pragma once

#include <cstdint>
#include <limits>
#include <utility>

namespace pathweave {

// Values on the extended real line [-inf, +inf]. Plain IEEE doubles carry the
// two infinities and give the right total order; NaN is never a legal value.
using ExtReal = double;

inline constexpr ExtReal kMinusInf = -std::numeric_limits<double>::infinity();
inline constexpr ExtReal kPlusInf = std::numeric_limits<double>::infinity();

// phi(x) = x / sqrt(1 + x^2), extended by phi(+-inf) = +-1. Strictly
// increasing bijection from the extended line onto [-1, 1].
double phi(ExtReal x);

// Inverse of phi on (-1, 1); maps +-1 to +-inf.
ExtReal phi_inv(double u);

// Metric on the extended line: |phi(x) - phi(y)|.
double d_rbar(ExtReal x, ExtReal y);

// Distance from a point to the order interval [lo, hi] (lo <= hi) in d_rbar.
double d_rbar_to_interval(ExtReal y, ExtReal lo, ExtReal hi);

// A point of the squeezed space: either an interior point (x, t) with finite
// time t and x in the extended line, or one of the two stars (*, -inf) and
// (*, +inf) that all of space collapses to at infinite times.
struct SqueezedPoint {
  enum class Kind : std::uint8_t { Interior, StarMinus, StarPlus };

  Kind kind = Kind::Interior;
  ExtReal x = 0.0;  // meaningful for Interior only; may be +-inf
  double t = 0.0;   // meaningful for Interior only; finite

  static SqueezedPoint interior(ExtReal x, double t) { return {Kind::Interior, x, t}; }
  static SqueezedPoint star_minus() { return {Kind::StarMinus, 0.0, 0.0}; }
  static SqueezedPoint star_plus() { return {Kind::StarPlus, 0.0, 0.0}; }

  bool is_star() const { return kind != Kind::Interior; }

  friend bool operator==(const SqueezedPoint& a, const SqueezedPoint& b) {
    if (a.kind != b.kind) return false;
    if (a.kind != Kind::Interior) return true;
    return a.x == b.x && a.t == b.t;
  }
};

// Chart coordinates realizing the squeezed topology:
//   interior(x, t) -> (phi(x) * (1 - |tanh t|), tanh t)
//   (*, -inf) -> (0, -1),   (*, +inf) -> (0, +1).
// The space coordinate is pinched to 0 as |v| -> 1, so sequences with
// t_n -> +-inf converge to the corresponding star regardless of x_n.
struct ChartCoords {
  double u = 0.0;
  double v = 0.0;
};

ChartCoords to_chart(const SqueezedPoint& p);

// Max-metric between chart images; this is the d_sqz used everywhere.
double d_sqz(const ChartCoords& a, const ChartCoords& b);
double d_sqz(const SqueezedPoint& p, const SqueezedPoint& q);

// Grid range wide enough that every pair further than 2*eps apart in d_rbar
// straddles one of the cells [k*eps, (k+1)*eps]: k_plus is the smallest
// positive integer with d_rbar(+inf, k_plus * eps) < eps, and k_minus is its
// mirror image -k_plus.
struct KRange {
  long long k_minus = 0;
  long long k_plus = 0;
};

KRange k_pm(double eps);

}  // namespace pathweave
