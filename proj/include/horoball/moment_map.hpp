#pragma once

// The map m^C(x) = sum_i softmax_i(-<c_i|x>) c_i over a vertex set C, its
// Jacobian, Newton inversion onto the relative interior of conv(C), and the
// boundary extension that sends a horofunction h_{E,p} to m^E(p).  Together
// these realize the identification of the compactified space with the dual
// ball: interior points land in int(B°), boundary points in ri(E).

#include <span>
#include <variant>

#include "horoball/geometry.hpp"
#include "horoball/horofunction.hpp"
#include "horoball/types.hpp"

namespace horoball {

struct MomentResult {
  Vector point;    // = sum_i weights[i] * c_i, strictly inside ri(conv C)
  Vector weights;  // softmax weights, each in (0,1), summing to 1
};

// Stabilized softmax combination of the vertices.  Throws EmptyVertexSet.
MomentResult moment_map(std::span<const Vector> c_vertices, const Vector& x);

// d(m^C)/dx as the pair sum -(1/S^2) sum_{i<k} e^{a_i+a_k} (c_i-c_k)(c_i-c_k)^T
// with a_i = -<c_i|x>.  Symmetric, negative definite on span{c_i - c_k}.
Matrix moment_jacobian(std::span<const Vector> c_vertices, const Vector& x);

// Solves moment_map(c_vertices, x).point = y by Newton ascent on the concave
// potential f(x) - <y|x>, f(x) = -ln sum_i e^{-<c_i|x>}, restricted to the
// affine-hull frame of the vertices.  Requires y in the relative interior
// with margin >= 1e-6 (NotInInterior otherwise); NoConvergence after 200
// iterations.
Vector invert_moment_map(std::span<const Vector> c_vertices, const Vector& y,
                         double tol = 1e-10);

// m^E(p) for a proper face E of the dual ball of `unit_ball`; p is reduced
// onto V(F)^perp first.  Computed in the face's own frame (E = E^F + t with
// t the common V(F)-component of E's vertices) and cross-checked against the
// direct ambient evaluation; both must agree to 1e-12.
Vector boundary_moment_map(const Polytope& unit_ball, const Face& dual_ball_face,
                           const Vector& p);

// A point of the compactified space: either an interior point x of X or a
// boundary horofunction.
using CompactifiedPoint = std::variant<Vector, Horofunction>;

// Interior x -> m^{B°}(x); boundary h_{E,p} -> m^E(p).
Vector compactification_point(const Polytope& unit_ball, const CompactifiedPoint& q);

}  // namespace horoball
