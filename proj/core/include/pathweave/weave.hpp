#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pathweave/crossing.hpp"
#include "pathweave/path.hpp"
#include "pathweave/rng.hpp"

namespace pathweave {

// The jump-radius measure mu: a finite measure on (0, inf) with finite first
// moment. K = 2 * int r mu(dr) is the per-particle hit rate at scale n = 1;
// the displacement of a hit is symmetric with P[J >= R] = excess(R) / K.
class HeavyTailModel {
 public:
  enum class Family : int { OneWedgePareto, PointMass, Table };

  // mu(dr) = (1 & r^(-alpha-2)) dr; regularly varying tail with index alpha.
  static HeavyTailModel one_wedge_pareto(double alpha);
  // mu = weight * delta_{r0}; bounded test model (jump law uniform on [-r0, r0]).
  static HeavyTailModel point_mass(double r0, double weight = 1.0, double alpha = 1.0);
  // Discrete measure from (radius, weight) atoms; alpha only sets the n^(1/alpha)
  // space rescaling of the simulation.
  static HeavyTailModel table(std::vector<std::pair<double, double>> atoms, double alpha = 1.0);

  Family family() const { return family_; }
  double alpha() const { return alpha_; }
  double mass() const { return mass_; }        // mu(0, inf)
  double hit_rate_K() const { return K_; }     // 2 * int r mu(dr)
  double tail(double R) const;                 // int_R^inf r mu(dr)
  double excess(double R) const;               // int (r - R)+ mu(dr)
  double excess_inv(double y) const;           // inverse of excess on [0, K/2]

  double sample_radius(Rng& rng) const;
  double sample_jump(Rng& rng) const;  // symmetric, P[J >= R] = excess(R) / K

 private:
  Family family_ = Family::OneWedgePareto;
  double alpha_ = 1.0;
  double mass_ = 0.0;
  double K_ = 0.0;
  double r0_ = 0.0;
  double weight_ = 0.0;
  std::vector<std::pair<double, double>> atoms_;  // sorted by radius
  std::vector<double> cum_weight_;                // cumulative weights for sampling
};

HeavyTailModel default_mu(double alpha);  // the one-wedge Pareto family

struct EventPoint {
  double x = 0.0;
  double t = 0.0;
  double r = 0.0;
};

struct SimWindow {
  double x_lo = -1.0;
  double x_hi = 1.0;
  double t_lo = -1.0;
  double t_hi = 1.0;
  double n = 1.0;  // scaling index >= 1
};

struct EventSample {
  std::vector<EventPoint> events;  // time-sorted
  double strip_lo = 0.0;           // sampled spatial strip (window + r_star margin)
  double strip_hi = 0.0;
  double r_star = 0.0;
  // Expected hits per particle per unit time lost to the strip truncation.
  double missed_hit_rate = 0.0;
  int simultaneous_ties = 0;
};

// Poisson sample at scale n: intensity n^(1/alpha) dx x n dt x mu_n(dr) with
// mu_n the n^(-1/alpha) radius rescaling of mu. Events are sampled on the
// window enlarged spatially by r_star, chosen so that the missed-hit rate is
// below miss_tol times the hit rate.
EventSample sample_events(const HeavyTailModel& model, const SimWindow& window,
                          std::uint64_t seed, double miss_tol = 1e-4);

// Path of the particle started at z: constant except when an event region
// [x-r, x+r] covers the current position, where it jumps to the center x.
// Events at or before the start instant belong to the past and are ignored.
// The result lives on [z.t, inf) and is constant past `horizon`.
CadlagPath trace_path(std::pair<double, double> z, const std::vector<EventPoint>& events,
                      double horizon);

struct GridSpec {
  enum class Kind : int { Lattice, Uniform, Explicit } kind = Kind::Lattice;
  // Uniform: counts along space and time.
  int nx = 0;
  int nt = 0;
  std::vector<std::pair<double, double>> starts;  // Explicit
};

struct Weave {
  PathEnsemble ensemble;
  EventSample events;
};

// One shared event sample, one traced path per start point. The default grid
// is the rescaled lattice (pitch n^(-1/alpha) in space, 1/n in time)
// intersected with the window.
Weave build_weave(const HeavyTailModel& model, const SimWindow& window, const GridSpec& grid,
                  std::uint64_t seed, double miss_tol = 1e-4);

// Direct compound-Poisson sampler of the one-particle motion at scale n from
// the origin: holding times Exp(n K), jumps n^(-1/alpha) J. Equivalent to
// simulating at scale 1 over n * duration and rescaling.
CadlagPath one_particle_cp(const HeavyTailModel& model, double n, double duration,
                           std::uint64_t seed);

struct TwoSampleReport {
  double ks_stat = 0.0;
  double ks_crit_1pct = 0.0;
  double mean_jumps_a = 0.0;
  double mean_jumps_b = 0.0;
  int reps = 0;
  int strip_breaches = 0;  // traced paths that left the nominal window
  bool pass() const { return ks_stat < ks_crit_1pct; }
};

// Same-law check of the two constructions of the one-particle marginal at
// time `duration`: full event-field tracing vs the direct compound-Poisson
// sampler, compared with a two-sample Kolmogorov-Smirnov statistic.
TwoSampleReport cp_vs_trace_check(const HeavyTailModel& model, double n, double duration,
                                  int reps, std::uint64_t seed, double strip_halfwidth = 500.0,
                                  int threads = 1);

struct StoppingTimeReport {
  std::vector<double> min_gaps;  // per replicate, smallest inter-exit gap
  int reps = 0;

  // Estimate of P[some inter-exit gap <= delta].
  double estimate(double delta) const;
};

// The exit-time recursion on the strip [r, r+2eps]: paths restarted at
// r + eps after each exit; the event "no gap below delta" upper-bounds the
// pair-crossing probability of the weave.
StoppingTimeReport stopping_time_diagnostic(const HeavyTailModel& model, double n,
                                            const CrossingWindow& w, int reps, std::uint64_t seed,
                                            double miss_tol = 1e-4, int threads = 1);

}  // namespace pathweave
