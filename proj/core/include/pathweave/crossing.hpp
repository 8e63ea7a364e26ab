#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pathweave/path.hpp"

namespace pathweave {

// Parameters of all crossing predicates: time window [-T, T], time budget
// delta, spatial gap eps, interval anchor r.
struct CrossingWindow {
  double T = 1.0;
  double delta = 0.1;
  double eps = 0.5;
  double r = 0.0;
};

struct Delta2Witness {
  ExtReal x = 0.0;
  ExtReal y = 0.0;
  double s = 0.0;
  double t = 0.0;
};

struct Delta3Witness {
  ExtReal x = 0.0;
  ExtReal y = 0.0;
  ExtReal z = 0.0;
  double s = 0.0;
  double t = 0.0;
  double u = 0.0;
};

// A maximal stretch of graph times on which the path takes the value x; the
// list of runs is the closed graph in the window, collapsed along constant
// stretches, in graph order. Jump endpoints close one run and open the next
// at the same time.
struct ValueRun {
  ExtReal x = 0.0;
  double t_begin = 0.0;
  double t_end = 0.0;
};

std::vector<ValueRun> value_runs(const CadlagPath& p, double T);

// All two-point witnesses at run extremes; complete for step paths (between
// breakpoints the path is constant, so no interior time improves any of the
// defining inequalities).
std::vector<Delta2Witness> enum_delta2(const CadlagPath& p, double T, double delta);
std::vector<Delta3Witness> enum_delta3(const CadlagPath& p, double T, double delta);

// Moduli of continuity. modulus2 is the sup of d_rbar(x, y) over two-point
// configurations; modulusJ the sup of d_rbar(y, {x, z}) over three-point
// configurations; modulusM the sup of d_rbar(y, [x, z]).
double modulus2(const CadlagPath& p, double T, double delta);
double modulusJ(const CadlagPath& p, double T, double delta);
double modulusM(const CadlagPath& p, double T, double delta);

enum class SVariant : std::uint8_t {
  Plus,        // x <= r, r+eps <= y
  Minus,       // y <= r, r+eps <= x
  PlusMinus,   // x,z <= r, r+eps <= y
  MinusPlus,   // y <= r, r+eps <= x,z
  PlusPlus,    // x <= r, r+eps <= y <= r+2eps, r+3eps <= z
  MinusMinus,  // z <= r, r+eps <= y <= r+2eps, r+3eps <= x
  J,           // PlusPlus or MinusMinus
  M,           // PlusMinus or MinusPlus
  Two,         // Plus or Minus
};

struct SMembership {
  bool member = false;
  // Two-point variants fill x,y,s,t and set z = y, u = t.
  Delta3Witness witness;
};

SMembership in_S(const CadlagPath& p, SVariant variant, const CrossingWindow& w);

enum class TVariant : std::uint8_t {
  Two,         // unsigned pair, d_rbar(x, y) > eta
  Plus,        // x < y
  Minus,       // x > y
  PlusPlus,    // x < y < z, both gaps > eta
  PlusMinus,   // x < y > z
  MinusPlus,   // x > y < z
  MinusMinus,  // x > y > z
  J,           // PlusPlus or MinusMinus
  M,           // PlusMinus or MinusPlus
};

bool in_T(const CadlagPath& p, TVariant variant, double T, double delta, double eta);

struct CMMembership {
  bool member = false;
  Delta2Witness first;   // up-crossing on p1: x1 <= r, r+eps <= y1
  Delta2Witness second;  // down-crossing on p2: r+eps <= x2, y2 <= r
};

// The pair event: p1 crosses [r, r+eps] upward and p2 downward, all four
// times within a common span of length delta inside [-T, T].
CMMembership pair_in_CM(const CadlagPath& p1, const CadlagPath& p2, const CrossingWindow& w);

// Whether any ordered pair of ensemble paths (self-pairs included) lies in
// the pair event; equivalent to scanning up-crossings and down-crossings
// pooled over the whole ensemble.
bool any_pair_in_CM(const PathEnsemble& ensemble, const CrossingWindow& w);

enum class ModulusKind : std::uint8_t { C, J, M };

struct ModuliTable {
  std::vector<double> T_grid;
  std::vector<double> delta_grid;
  // values[ti][di] = sup over the ensemble of the modulus at (T, delta).
  std::vector<std::vector<double>> values;
};

ModuliTable precompactness_score(const PathEnsemble& ensemble, ModulusKind kind,
                                 const std::vector<double>& T_grid,
                                 const std::vector<double>& delta_grid);

}  // namespace pathweave
