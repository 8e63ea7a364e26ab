#pragma once

#include "pathweave/path.hpp"
#include "pathweave/rng.hpp"

namespace pathweave {

struct RandomPathOptions {
  int max_jumps = 4;
  double t_lo = -2.0;
  double t_hi = 2.0;
  double x_lo = -2.0;
  double x_hi = 2.0;
  bool allow_multi_component = true;
  bool allow_unbounded = true;
  bool allow_point_component = true;
  double p_infinite_value = 0.0;  // chance of a +-inf level per value draw
};

// Random step path for property tests and the selftest suite.
CadlagPath random_step_path(Rng& rng, const RandomPathOptions& opt = {});

// Random finite step path on a single bi-infinite domain (the easy case for
// metric and crossing properties).
CadlagPath random_simple_step_path(Rng& rng, int max_jumps = 4, double t_span = 2.0,
                                   double x_span = 2.0);

}  // namespace pathweave
