#pragma once

// Finite-horizon classifier for the boundary limit of an unbounded
// sequence.  A sequence converges to h_{E,p} with E = F* exactly when,
// eventually: its V(F)-part stays in the cone over F and drifts away from
// the cone's relative boundary, while its V(F)^perp-part settles at p.
// The checks below test those conditions on a tail window.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "horoball/geometry.hpp"
#include "horoball/horofunction.hpp"
#include "horoball/types.hpp"

namespace horoball {

struct ScalarGenerator {
  enum class Kind { constant, affine, power, logarithm, sinusoid };
  Kind kind = Kind::constant;
  // affine: a*n + c;  power: c*n^q;  logarithm: c*log(a*n);
  // sinusoid: a*sin(b*n) + c;  constant: c.
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
  double q = 1.0;

  double operator()(int n) const;
};

struct SequenceSpec {
  enum class Kind { explicit_samples, affine, power, logarithm, sinusoid, expr };
  Kind kind = Kind::explicit_samples;
  int horizon = 0;

  // Named planar kinds generate (n, f(n)); parameters as in ScalarGenerator.
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
  double q = 1.0;

  std::vector<Vector> samples;           // explicit_samples
  std::vector<ScalarGenerator> coords;   // expr: one generator per coordinate
};

// z_1 .. z_horizon.  Throws EvalError on undefined expressions (e.g. the
// logarithm of a nonpositive argument) or an empty horizon.
std::vector<Vector> generate(const SequenceSpec& spec);

struct ClassifierParams {
  int window = 200;                  // tail window length
  double unbounded_threshold = 100;  // gauge norm that counts as "escaping"
  double min_final_distance = 5;     // boundary clearance required at the horizon
  double min_growth = 0.1;           // net growth over the window (norms and clearance)
  double p_tolerance = 1e-3;         // tail diameter allowed for the p-estimate
  double verify_tolerance = 1e-2;    // pointwise residual considered sound
};

struct ConditionReport {
  Face face;
  bool unbounded = false;        // tail norms large and still growing
  bool in_cone = false;          // V(F)-part inside the cone over the whole tail
  bool distance_growth = false;  // boundary clearance monotone-ish, grown, and large
  bool p_converged = false;      // V(F)^perp-part settled within p_tolerance

  double max_tail_norm = 0;
  double norm_growth = 0;
  double first_distance = 0;
  double final_distance = 0;
  double distance_growth_amount = 0;
  double min_distance_step = 0;
  std::optional<Vector> p_limit;  // reduced tail mean, present when p_converged
  double p_residual = 0;          // tail diameter of the perp part
  int window_begin = 0;           // 1-based sample indices
  int window_end = 0;

  bool all_passed() const { return unbounded && in_cone && distance_growth && p_converged; }
};

struct ClassificationVerdict {
  enum class Kind { bounded, horofunction, inconclusive };
  Kind kind = Kind::inconclusive;
  std::optional<Horofunction> limit;
  std::vector<ConditionReport> reports;  // one per proper face, lattice order
  std::vector<std::string> diagnostics;
};

ConditionReport check_conditions(const Polytope& unit_ball, const Face& face,
                                 std::span<const Vector> samples,
                                 const ClassifierParams& params);

ClassificationVerdict classify_samples(const Polytope& unit_ball,
                                       std::span<const Vector> samples,
                                       const ClassifierParams& params = {});

ClassificationVerdict classify(const Polytope& unit_ball, const SequenceSpec& spec,
                               const ClassifierParams& params = {});

// r_n = max over the grid of |psi_{z_n} - h|; the residuals should fall to
// zero exactly when h is the sequence's limit.
std::vector<double> verify_pointwise(const Polytope& unit_ball,
                                     std::span<const Vector> samples,
                                     const Horofunction& h, std::span<const Vector> grid);

// Fixed evaluation grid: the 5x5 integer lattice on [-2,2]^2 in the plane,
// a deterministic point cloud in [-2,2]^m otherwise.
std::vector<Vector> default_grid(int dim);

}  // namespace horoball
