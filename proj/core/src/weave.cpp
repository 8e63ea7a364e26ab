#include "pathweave/weave.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

#include "pathweave/parallel.hpp"
#include "pathweave/stats.hpp"

namespace pathweave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

HeavyTailModel HeavyTailModel::one_wedge_pareto(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("one_wedge_pareto: alpha must lie in (0, 2)");
  HeavyTailModel m;
  m.family_ = Family::OneWedgePareto;
  m.alpha_ = alpha;
  m.mass_ = 1.0 + 1.0 / (alpha + 1.0);
  m.K_ = 1.0 + 2.0 / alpha;
  return m;
}

HeavyTailModel HeavyTailModel::point_mass(double r0, double weight, double alpha) {
  if (!(r0 > 0.0) || !(weight > 0.0))
    throw std::invalid_argument("point_mass: r0 and weight must be positive");
  HeavyTailModel m;
  m.family_ = Family::PointMass;
  m.alpha_ = alpha;
  m.r0_ = r0;
  m.weight_ = weight;
  m.mass_ = weight;
  m.K_ = 2.0 * r0 * weight;
  return m;
}

HeavyTailModel HeavyTailModel::table(std::vector<std::pair<double, double>> atoms, double alpha) {
  if (atoms.empty()) throw std::invalid_argument("table: need at least one atom");
  std::sort(atoms.begin(), atoms.end());
  HeavyTailModel m;
  m.family_ = Family::Table;
  m.alpha_ = alpha;
  m.atoms_ = std::move(atoms);
  double cum = 0.0;
  for (const auto& [r, w] : m.atoms_) {
    if (!(r > 0.0) || !(w > 0.0)) throw std::invalid_argument("table: atoms must be positive");
    cum += w;
    m.cum_weight_.push_back(cum);
    m.K_ += 2.0 * r * w;
  }
  m.mass_ = cum;
  return m;
}

HeavyTailModel default_mu(double alpha) { return HeavyTailModel::one_wedge_pareto(alpha); }

double HeavyTailModel::tail(double R) const {
  R = std::max(R, 0.0);
  switch (family_) {
    case Family::OneWedgePareto:
      if (R >= 1.0) return std::pow(R, -alpha_) / alpha_;
      return (1.0 - R * R) / 2.0 + 1.0 / alpha_;
    case Family::PointMass:
      return R <= r0_ ? r0_ * weight_ : 0.0;
    case Family::Table: {
      double s = 0.0;
      for (const auto& [r, w] : atoms_)
        if (r >= R) s += r * w;
      return s;
    }
  }
  return 0.0;
}

double HeavyTailModel::excess(double R) const {
  R = std::max(R, 0.0);
  switch (family_) {
    case Family::OneWedgePareto: {
      const double a = alpha_;
      if (R >= 1.0) return std::pow(R, -a) / (a * (a + 1.0));
      const double s = 1.0 - R;
      return s * s / 2.0 + 1.0 / a - R / (a + 1.0);
    }
    case Family::PointMass:
      return weight_ * std::max(0.0, r0_ - R);
    case Family::Table: {
      double s = 0.0;
      for (const auto& [r, w] : atoms_)
        if (r > R) s += (r - R) * w;
      return s;
    }
  }
  return 0.0;
}

double HeavyTailModel::excess_inv(double y) const {
  if (!(y >= 0.0)) throw std::invalid_argument("excess_inv: y must be nonnegative");
  if (y >= K_ / 2.0) return 0.0;
  switch (family_) {
    case Family::OneWedgePareto: {
      const double a = alpha_;
      const double knee = 1.0 / (a * (a + 1.0));  // excess(1)
      if (y <= knee) return std::pow(y * a * (a + 1.0), -1.0 / a);
      const double b = 1.0 + 1.0 / (a + 1.0);
      const double c = 0.5 + 1.0 / a;
      return b - std::sqrt(b * b - 2.0 * (c - y));
    }
    case Family::PointMass:
      return std::max(0.0, r0_ - y / weight_);
    case Family::Table: {
      // Walk down from the largest atom; excess is piecewise linear with
      // slope -wsum between consecutive atom radii.
      double knot = atoms_.back().first;
      double acc = 0.0;  // excess(knot)
      double wsum = atoms_.back().second;
      if (y <= acc) return knot;
      for (std::size_t i = atoms_.size() - 1; i-- > 0;) {
        const double r = atoms_[i].first;
        const double at_r = acc + wsum * (knot - r);
        if (y <= at_r) return knot - (y - acc) / wsum;
        acc = at_r;
        knot = r;
        wsum += atoms_[i].second;
      }
      return std::max(0.0, knot - (y - acc) / wsum);
    }
  }
  return 0.0;
}

double HeavyTailModel::sample_radius(Rng& rng) const {
  switch (family_) {
    case Family::OneWedgePareto: {
      const double u = rng.uniform01() * mass_;
      if (u <= 1.0) return u;
      const double v = u - 1.0;  // in (0, 1/(alpha+1))
      return std::pow(1.0 - v * (alpha_ + 1.0), -1.0 / (alpha_ + 1.0));
    }
    case Family::PointMass:
      return r0_;
    case Family::Table: {
      const double u = rng.uniform01() * mass_;
      auto it = std::lower_bound(cum_weight_.begin(), cum_weight_.end(), u);
      const std::size_t idx = std::min<std::size_t>(it - cum_weight_.begin(), atoms_.size() - 1);
      return atoms_[idx].first;
    }
  }
  return 0.0;
}

double HeavyTailModel::sample_jump(Rng& rng) const {
  // Inverse-survival sampling of |J|, then a symmetric sign.
  const double w = 1.0 - rng.uniform01();  // in (0, 1]
  const double magnitude = excess_inv(w * K_ / 2.0);
  return rng.sign() * magnitude;
}

EventSample sample_events(const HeavyTailModel& model, const SimWindow& window,
                          std::uint64_t seed, double miss_tol) {
  if (!(window.n >= 1.0)) throw std::invalid_argument("sample_events: n must be >= 1");
  if (!(window.x_lo <= window.x_hi) || !(window.t_lo <= window.t_hi))
    throw std::invalid_argument("sample_events: malformed window");
  const double inv_scale = std::pow(window.n, 1.0 / model.alpha());

  EventSample out;
  out.r_star = model.excess_inv(miss_tol * model.hit_rate_K() / 2.0) / inv_scale;
  out.strip_lo = window.x_lo - out.r_star;
  out.strip_hi = window.x_hi + out.r_star;
  out.missed_hit_rate = 2.0 * window.n * model.excess(inv_scale * out.r_star);

  const double strip_len = out.strip_hi - out.strip_lo;
  const double rate = inv_scale * strip_len * window.n * model.mass();
  if (rate <= 0.0 || window.t_lo == window.t_hi) return out;

  Rng rng(seed);
  double t = window.t_lo;
  double prev_t = -kInf;
  while (true) {
    t += rng.exponential(rate);
    if (t > window.t_hi) break;
    const double x = rng.uniform(out.strip_lo, out.strip_hi);
    const double r = model.sample_radius(rng) / inv_scale;
    if (t == prev_t) ++out.simultaneous_ties;
    out.events.push_back({x, t, r});
    prev_t = t;
  }
  return out;
}

CadlagPath trace_path(std::pair<double, double> z, const std::vector<EventPoint>& events,
                      double horizon) {
  const auto [x0, t0] = z;
  if (!(t0 <= horizon)) throw std::invalid_argument("trace_path: start after horizon");
  std::vector<Breakpoint> bps{{t0, x0, x0}};
  double current = x0;
  auto it = std::upper_bound(events.begin(), events.end(), t0,
                             [](double v, const EventPoint& e) { return v < e.t; });
  for (; it != events.end() && it->t <= horizon; ++it) {
    if (std::abs(current - it->x) > it->r || it->x == current) continue;
    if (bps.back().t == it->t)
      bps.back().right = it->x;  // simultaneous events, applied in order
    else
      bps.push_back({it->t, current, it->x});
    current = it->x;
  }
  CadlagPath p({DomainComponent::from(t0)}, std::move(bps));
  p.truncation_horizon = horizon;
  return p;
}

namespace {

std::vector<std::pair<double, double>> grid_starts(const SimWindow& w, const GridSpec& grid,
                                                   double alpha) {
  std::vector<std::pair<double, double>> starts;
  switch (grid.kind) {
    case GridSpec::Kind::Explicit:
      starts = grid.starts;
      break;
    case GridSpec::Kind::Uniform: {
      auto coord = [](double lo, double hi, int i, int count) {
        if (count == 1 || i == 0) return lo;
        if (i == count - 1) return hi;
        return lo + (hi - lo) * i / (count - 1);
      };
      for (int i = 0; i < grid.nt; ++i)
        for (int j = 0; j < grid.nx; ++j)
          starts.emplace_back(coord(w.x_lo, w.x_hi, j, grid.nx),
                              coord(w.t_lo, w.t_hi, i, grid.nt));
      break;
    }
    case GridSpec::Kind::Lattice: {
      const double dx = std::pow(w.n, -1.0 / alpha);
      const double dt = 1.0 / w.n;
      for (long long i = static_cast<long long>(std::ceil(w.t_lo / dt));
           i * dt <= w.t_hi; ++i)
        for (long long j = static_cast<long long>(std::ceil(w.x_lo / dx));
             j * dx <= w.x_hi; ++j)
          starts.emplace_back(j * dx, i * dt);
      break;
    }
  }
  std::sort(starts.begin(), starts.end(),
            [](const auto& a, const auto& b) { return std::tie(a.second, a.first) <
                                                      std::tie(b.second, b.first); });
  return starts;
}

}  // namespace

Weave build_weave(const HeavyTailModel& model, const SimWindow& window, const GridSpec& grid,
                  std::uint64_t seed, double miss_tol) {
  const auto starts = grid_starts(window, grid, model.alpha());
  if (starts.empty()) throw std::invalid_argument("empty_ensemble: no start points in window");

  Weave w;
  w.events = sample_events(model, window, seed, miss_tol);

  // Shared tracing of all particles: alive positions in an ordered map, event
  // regions resolved by range lookup, coalescing groups that land together.
  std::vector<std::vector<Breakpoint>> bps(starts.size());
  std::map<double, std::vector<std::size_t>> alive;

  std::size_t next_birth = 0;
  auto do_births = [&](double up_to) {
    while (next_birth < starts.size() && starts[next_birth].second <= up_to) {
      const auto [x, t] = starts[next_birth];
      bps[next_birth].push_back({t, x, x});
      alive[x].push_back(next_birth);
      ++next_birth;
    }
  };

  for (const EventPoint& e : w.events.events) {
    // Events strictly before a birth affect only already-alive particles; a
    // particle born at exactly the event time ignores it.
    do_births(std::nextafter(e.t, -kInf));
    auto lo = alive.lower_bound(e.x - e.r);
    auto hi = alive.upper_bound(e.x + e.r);
    if (lo == hi) continue;
    std::vector<std::size_t> moved;
    for (auto it = lo; it != hi;) {
      if (it->first == e.x) {
        ++it;
        continue;  // already at the jump target; no-op hit
      }
      for (std::size_t id : it->second) {
        if (!bps[id].empty() && bps[id].back().t == e.t)
          bps[id].back().right = e.x;  // simultaneous events, applied in order
        else
          bps[id].push_back({e.t, it->first, e.x});
        moved.push_back(id);
      }
      it = alive.erase(it);
    }
    if (!moved.empty()) {
      auto& node = alive[e.x];
      node.insert(node.end(), moved.begin(), moved.end());
    }
  }
  do_births(kInf);

  for (std::size_t i = 0; i < starts.size(); ++i) {
    CadlagPath p({DomainComponent::from(starts[i].second)}, std::move(bps[i]));
    p.truncation_horizon = window.t_hi;
    char id[64];
    std::snprintf(id, sizeof(id), "z%zu", i);
    w.ensemble.add(std::move(p), id);
  }
  return w;
}

CadlagPath one_particle_cp(const HeavyTailModel& model, double n, double duration,
                           std::uint64_t seed) {
  if (!(n >= 1.0)) throw std::invalid_argument("one_particle_cp: n must be >= 1");
  if (!(duration >= 0.0)) throw std::invalid_argument("one_particle_cp: negative duration");
  Rng rng(seed);
  const double rate = n * model.hit_rate_K();
  const double scale = std::pow(n, -1.0 / model.alpha());
  std::vector<Breakpoint> bps{{0.0, 0.0, 0.0}};
  double v = 0.0;
  double t = 0.0;
  while (true) {
    t += rng.exponential(rate);
    if (t > duration) break;
    const double j = scale * model.sample_jump(rng);
    if (j == 0.0) continue;
    bps.push_back({t, v, v + j});
    v += j;
  }
  return CadlagPath({DomainComponent::interval(0.0, duration)}, std::move(bps));
}

namespace {

double value_at_horizon(const CadlagPath& p, double t) { return p.eval(t)->right; }

double jump_count(const CadlagPath& p) {
  double c = 0.0;
  for (const auto& b : p.breakpoints())
    if (b.left != b.right) c += 1.0;
  return c;
}

}  // namespace

TwoSampleReport cp_vs_trace_check(const HeavyTailModel& model, double n, double duration,
                                  int reps, std::uint64_t seed, double strip_halfwidth,
                                  int threads) {
  if (reps < 1) throw std::invalid_argument("cp_vs_trace_check: reps must be >= 1");
  std::vector<double> traced(reps);
  std::vector<double> direct(reps);
  std::vector<double> jumps_a(reps);
  std::vector<double> jumps_b(reps);
  std::vector<int> breach(reps, 0);

  parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t i) {
    const SimWindow win{-strip_halfwidth, strip_halfwidth, 0.0, duration, n};
    const EventSample ev =
        sample_events(model, win, derive_stream(seed, {0x7ace, i}));
    const CadlagPath tp = trace_path({0.0, 0.0}, ev.events, duration);
    traced[i] = value_at_horizon(tp, duration);
    jumps_a[i] = jump_count(tp);
    for (const auto& b : tp.breakpoints())
      if (std::abs(b.right) > strip_halfwidth) breach[i] = 1;

    const CadlagPath cp = one_particle_cp(model, n, duration, derive_stream(seed, {0xc0de, i}));
    direct[i] = value_at_horizon(cp, duration);
    jumps_b[i] = jump_count(cp);
  });

  TwoSampleReport rep;
  rep.reps = reps;
  rep.ks_stat = ks_two_sample(traced, direct);
  rep.ks_crit_1pct = ks_two_sample_critical(reps, reps, 0.01);
  for (int i = 0; i < reps; ++i) {
    rep.mean_jumps_a += jumps_a[i] / reps;
    rep.mean_jumps_b += jumps_b[i] / reps;
    rep.strip_breaches += breach[i];
  }
  return rep;
}

double StoppingTimeReport::estimate(double delta) const {
  if (min_gaps.empty()) return 0.0;
  double c = 0.0;
  for (double g : min_gaps)
    if (g <= delta) c += 1.0;
  return c / static_cast<double>(min_gaps.size());
}

StoppingTimeReport stopping_time_diagnostic(const HeavyTailModel& model, double n,
                                            const CrossingWindow& w, int reps, std::uint64_t seed,
                                            double miss_tol, int threads) {
  if (reps < 1) throw std::invalid_argument("stopping_time_diagnostic: reps must be >= 1");
  StoppingTimeReport out;
  out.reps = reps;
  out.min_gaps.assign(reps, kInf);

  const double strip_lo = w.r;
  const double strip_hi = w.r + 2.0 * w.eps;
  const double start_x = w.r + w.eps;

  parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t i) {
    const SimWindow win{strip_lo, strip_hi, -w.T, w.T, n};
    const EventSample ev = sample_events(model, win, derive_stream(seed, {0x5709, i}), miss_tol);
    const auto& events = ev.events;
    double tau = -w.T;
    double min_gap = kInf;
    std::size_t cursor = 0;
    while (tau < w.T) {
      while (cursor < events.size() && events[cursor].t <= tau) ++cursor;
      double pos = start_x;
      double exit_time = kInf;
      std::size_t k = cursor;
      for (; k < events.size(); ++k) {
        const EventPoint& e = events[k];
        if (std::abs(pos - e.x) <= e.r) {
          pos = e.x;
          if (pos <= strip_lo || pos >= strip_hi) {
            exit_time = e.t;
            break;
          }
        }
      }
      min_gap = std::min(min_gap, exit_time - tau);
      if (exit_time == kInf) break;
      tau = exit_time;
      cursor = k;  // next path scans strictly after tau
    }
    out.min_gaps[i] = min_gap;
  });
  return out;
}

}  // namespace pathweave
