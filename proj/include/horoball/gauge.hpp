#pragma once

#include <span>

#include "horoball/geometry.hpp"
#include "horoball/types.hpp"

namespace horoball {

// Minkowski gauge of x with respect to the unit ball:
//   |x|_B = inf { a > 0 : x in a*B } = max_j -<u_j|x>
// over the dual vertices u_j.  Positively homogeneous; possibly asymmetric.
double gauge_norm(const Polytope& unit_ball, const Vector& x);

// Pseudo-norm against a set R of dual vectors:
//   |x|_R = -min over vertices r of R of <r|x>.
// May be negative; |x|_{B*} recovers the gauge norm.
double pseudo_norm(std::span<const Vector> vertices, const Vector& x);

}  // namespace horoball
