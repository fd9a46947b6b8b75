#pragma once

// Horofunctions of a polyhedral normed space, indexed by a face E of the
// dual unit ball and a parameter p orthogonal to span(E*):
//   h_{E,p}(y) = |p - y|_E - |p|_E,
// with basepoint 0.  Interior points embed via psi_z = |z - .| - |z|.

#include <optional>
#include <span>
#include <utility>

#include "horoball/geometry.hpp"
#include "horoball/types.hpp"

namespace horoball {

struct Horofunction {
  Face face;  // face of the dual ball
  Vector p;   // reduced: p lies in V(F)^perp for F = face.dual()
};

// Validates that `dual_ball_face` belongs to the dual lattice of
// `unit_ball` and reduces p onto V(F)^perp.
Horofunction make_horofunction(const Polytope& unit_ball, const Face& dual_ball_face,
                               const Vector& p);

// Component of p orthogonal to span(F's vertices), F = E.dual().
Vector reduce_p(const Face& dual_ball_face, const Vector& p);

double horofunction_value(const Horofunction& h, const Vector& y);

// Same formula over an explicit vertex set and unreduced p.
double horofunction_value(std::span<const Vector> face_vertices, const Vector& p,
                          const Vector& y);

// psi_z(y) = |z - y| - |z| in the gauge norm of the unit ball.
double psi_value(const Polytope& unit_ball, const Vector& z, const Vector& y);

// Legendre-Fenchel route to the same value:
//   max over x in vertices(E) of <x|y-p>  +  min over q in vertices(E) of <q|p>.
// Agrees with horofunction_value; kept separate as an independent check.
double lf_transform_value(const Face& dual_ball_face, const Vector& p, const Vector& y);

// A point y where the two horofunctions differ by more than 1e-6, or
// nullopt when they are the same function.  Throws WitnessSearchFailed if
// the search exhausts its ray budget.
std::optional<Vector> distinguishing_witness(const Horofunction& a, const Horofunction& b);

struct AlmostGeodesicResult {
  bool is_almost_geodesic = false;
  std::size_t tail_start = 0;  // smallest sample index from which the bound holds
};

// Checks |d(g(0), g(s)) + d(g(s), g(t)) - t| < epsilon for all sampled
// t >= s >= t_N, with d(a, b) = |b - a| in the gauge norm; reports the
// smallest admissible N.
AlmostGeodesicResult almost_geodesic_check(std::span<const std::pair<double, Vector>> path,
                                           double epsilon, const Polytope& unit_ball);

}  // namespace horoball
