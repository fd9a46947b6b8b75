#include "horoball/gauge.hpp"

#include <limits>

#include "horoball/errors.hpp"

namespace horoball {

double gauge_norm(const Polytope& unit_ball, const Vector& x) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& u : unit_ball.dual_vertices()) best = std::max(best, -u.dot(x));
  return best;
}

double pseudo_norm(std::span<const Vector> vertices, const Vector& x) {
  if (vertices.empty()) throw EmptyVertexSet("pseudo-norm needs at least one vertex");
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) lo = std::min(lo, v.dot(x));
  return -lo;
}

}  // namespace horoball
