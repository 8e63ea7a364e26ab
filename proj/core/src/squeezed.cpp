#include "pathweave/squeezed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathweave {

double phi(ExtReal x) {
  if (x == kPlusInf) return 1.0;
  if (x == kMinusInf) return -1.0;
  // The reciprocal form avoids overflow of x * x for huge finite values.
  if (std::abs(x) > 1.0) return std::copysign(1.0 / std::sqrt(1.0 + 1.0 / (x * x)), x);
  return x / std::sqrt(1.0 + x * x);
}

ExtReal phi_inv(double u) {
  if (u >= 1.0) return kPlusInf;
  if (u <= -1.0) return kMinusInf;
  return u / std::sqrt(1.0 - u * u);
}

double d_rbar(ExtReal x, ExtReal y) { return std::abs(phi(x) - phi(y)); }

double d_rbar_to_interval(ExtReal y, ExtReal lo, ExtReal hi) {
  const double py = phi(y);
  const double plo = phi(lo);
  const double phi_hi = phi(hi);
  if (py < plo) return plo - py;
  if (py > phi_hi) return py - phi_hi;
  return 0.0;
}

ChartCoords to_chart(const SqueezedPoint& p) {
  switch (p.kind) {
    case SqueezedPoint::Kind::StarMinus:
      return {0.0, -1.0};
    case SqueezedPoint::Kind::StarPlus:
      return {0.0, 1.0};
    case SqueezedPoint::Kind::Interior: {
      const double v = std::tanh(p.t);
      return {phi(p.x) * (1.0 - std::abs(v)), v};
    }
  }
  return {};
}

double d_sqz(const ChartCoords& a, const ChartCoords& b) {
  return std::max(std::abs(a.u - b.u), std::abs(a.v - b.v));
}

double d_sqz(const SqueezedPoint& p, const SqueezedPoint& q) {
  return d_sqz(to_chart(p), to_chart(q));
}

KRange k_pm(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("k_pm: eps must be positive");
  // Need the smallest k >= 1 with 1 - phi(k * eps) < eps. Seed from the
  // closed-form solution of phi(s) = 1 - eps and adjust locally so the
  // result is exact in floating point.
  long long k = 1;
  if (eps < 1.0) {
    const double p = 1.0 - eps;
    const double s = p / std::sqrt(1.0 - p * p);
    k = std::max<long long>(1, static_cast<long long>(std::floor(s / eps)) - 2);
  }
  while (!(1.0 - phi(static_cast<double>(k) * eps) < eps)) ++k;
  while (k > 1 && 1.0 - phi(static_cast<double>(k - 1) * eps) < eps) --k;
  return {-k, k};
}

}  // namespace pathweave
