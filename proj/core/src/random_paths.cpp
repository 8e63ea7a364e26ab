#include "pathweave/random_paths.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace pathweave {

namespace {

ExtReal draw_value(Rng& rng, const RandomPathOptions& opt) {
  if (opt.p_infinite_value > 0.0 && rng.bernoulli(opt.p_infinite_value))
    return rng.bernoulli(0.5) ? kPlusInf : kMinusInf;
  return rng.uniform(opt.x_lo, opt.x_hi);
}

}  // namespace

CadlagPath random_step_path(Rng& rng, const RandomPathOptions& opt) {
  const int n_components = opt.allow_multi_component ? 1 + static_cast<int>(rng.next_u64() % 3)
                                                     : 1;
  // Split [t_lo, t_hi] into disjoint pieces with gaps.
  std::set<double> cuts;
  while (static_cast<int>(cuts.size()) < 2 * n_components)
    cuts.insert(rng.uniform(opt.t_lo, opt.t_hi));
  std::vector<double> c(cuts.begin(), cuts.end());

  std::vector<DomainComponent> comps;
  for (int i = 0; i < n_components; ++i) {
    double lo = c[2 * i];
    double hi = c[2 * i + 1];
    if (opt.allow_point_component && rng.bernoulli(0.15)) {
      comps.push_back(DomainComponent::point(lo));
      continue;
    }
    if (opt.allow_unbounded && i == 0 && rng.bernoulli(0.25)) lo = kMinusInf;
    if (opt.allow_unbounded && i == n_components - 1 && rng.bernoulli(0.25)) hi = kPlusInf;
    comps.push_back(DomainComponent::interval(lo, hi));
  }

  std::vector<Breakpoint> bps;
  std::map<std::size_t, ExtReal> tails;
  std::set<double> used_times;
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const DomainComponent& comp = comps[ci];
    const int jumps = static_cast<int>(rng.next_u64() % (opt.max_jumps + 1));
    std::set<double> times;
    if (comp.is_point()) {
      if (rng.bernoulli(0.5)) times.insert(comp.lo);  // maybe a jump at the isolated point
    } else {
      const double lo = comp.lo_unbounded() ? opt.t_lo - 1.0 : comp.lo;
      const double hi = comp.hi_unbounded() ? opt.t_hi + 1.0 : comp.hi;
      for (int k = 0; k < jumps; ++k) {
        const double t = rng.uniform(lo, hi);
        if (!used_times.count(t)) times.insert(t);
      }
      // Occasionally a start jump at a finite left endpoint.
      if (!comp.lo_unbounded() && rng.bernoulli(0.2)) times.insert(comp.lo);
    }
    if (times.empty()) {
      tails[ci] = draw_value(rng, opt);
      continue;
    }
    ExtReal level = draw_value(rng, opt);
    bool first = true;
    for (double t : times) {
      used_times.insert(t);
      const ExtReal left = first && rng.bernoulli(0.3) ? draw_value(rng, opt) : level;
      const ExtReal right = draw_value(rng, opt);
      bps.push_back({t, first ? left : level, right});
      level = right;
      first = false;
    }
  }
  std::sort(bps.begin(), bps.end(), [](const Breakpoint& a, const Breakpoint& b) {
    return a.t < b.t;
  });
  return CadlagPath(std::move(comps), std::move(bps), std::move(tails));
}

CadlagPath random_simple_step_path(Rng& rng, int max_jumps, double t_span, double x_span) {
  const int jumps = static_cast<int>(rng.next_u64() % (max_jumps + 1));
  std::set<double> times;
  while (static_cast<int>(times.size()) < jumps) times.insert(rng.uniform(-t_span, t_span));
  std::vector<std::pair<double, ExtReal>> jl;
  for (double t : times) jl.emplace_back(t, rng.uniform(-x_span, x_span));
  return make_step_path(DomainComponent::all_reals(), rng.uniform(-x_span, x_span), jl);
}

}  // namespace pathweave
