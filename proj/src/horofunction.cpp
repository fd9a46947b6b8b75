#include "horoball/horofunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "horoball/errors.hpp"
#include "horoball/gauge.hpp"

namespace horoball {

Vector reduce_p(const Face& dual_ball_face, const Vector& p) {
  if (dual_ball_face.side() != FaceSide::dual)
    throw NotAProperFace("expected a face of the dual ball");
  Face f = dual_ball_face.dual();
  Matrix q = span_basis(f);
  if (q.cols() == p.size()) return Vector::Zero(p.size());
  return p - q * (q.transpose() * p);
}

Horofunction make_horofunction(const Polytope& unit_ball, const Face& dual_ball_face,
                               const Vector& p) {
  if (!unit_ball.owns(dual_ball_face) || dual_ball_face.side() != FaceSide::dual)
    throw NotAProperFace("horofunction face must be a dual-ball face of this polytope");
  if (p.size() != unit_ball.dim())
    throw ValidationError("parameter p has the wrong dimension");
  return {dual_ball_face, reduce_p(dual_ball_face, p)};
}

double horofunction_value(std::span<const Vector> face_vertices, const Vector& p,
                          const Vector& y) {
  return pseudo_norm(face_vertices, p - y) - pseudo_norm(face_vertices, p);
}

double horofunction_value(const Horofunction& h, const Vector& y) {
  return horofunction_value(h.face.vertices(), h.p, y);
}

double psi_value(const Polytope& unit_ball, const Vector& z, const Vector& y) {
  return gauge_norm(unit_ball, z - y) - gauge_norm(unit_ball, z);
}

double lf_transform_value(const Face& dual_ball_face, const Vector& p, const Vector& y) {
  auto verts = dual_ball_face.vertices();
  if (verts.empty()) throw EmptyVertexSet("face has no vertices");
  double sup = -std::numeric_limits<double>::infinity();
  double inf = std::numeric_limits<double>::infinity();
  Vector diff = y - p;
  for (const auto& v : verts) {
    sup = std::max(sup, v.dot(diff));
    inf = std::min(inf, v.dot(p));
  }
  return sup + inf;
}

std::optional<Vector> distinguishing_witness(const Horofunction& a, const Horofunction& b) {
  if (!a.face.same_parent(b.face))
    throw ValidationError("horofunctions belong to different polytopes");
  const auto& sa = a.face.vertex_indices();
  const auto& sb = b.face.vertex_indices();
  if (sa == sb && (a.p - b.p).lpNorm<Eigen::Infinity>() <= 1e-9) return std::nullopt;

  // Probe rays y = p_a - t*f with f interior to the facet dual to a single
  // vertex u of either face.  Far along such a ray both functions are
  // dominated by the pairing with u, which separates them.
  std::vector<int> candidates;
  for (int j : sa)
    if (!std::binary_search(sb.begin(), sb.end(), j)) candidates.push_back(j);
  for (int j : sb)
    if (!std::binary_search(sa.begin(), sa.end(), j)) candidates.push_back(j);
  for (int j : sa) candidates.push_back(j);

  auto va = a.face.vertices();
  auto vb = b.face.vertices();
  for (int j : candidates) {
    auto ball_vertex = a.face.lattice_face(FaceSide::dual, {j});
    if (!ball_vertex) continue;
    Face facet = ball_vertex->dual();
    auto fverts = facet.vertices();
    Vector f = Vector::Zero(a.p.size());
    for (const auto& v : fverts) f += v;
    f /= static_cast<double>(fverts.size());

    for (double t = 1.0; t <= 1e6; t *= 10.0) {
      Vector y = a.p - t * f;
      double gap = std::abs(horofunction_value(va, a.p, y) - horofunction_value(vb, b.p, y));
      if (gap > 1e-6) return y;
    }
  }
  throw WitnessSearchFailed("no separating point found along the probe rays");
}

AlmostGeodesicResult almost_geodesic_check(std::span<const std::pair<double, Vector>> path,
                                           double epsilon, const Polytope& unit_ball) {
  const std::size_t n = path.size();
  if (n < 3) throw ValidationError("almost-geodesic check needs at least 3 samples");
  for (std::size_t i = 1; i < n; ++i)
    if (path[i].first <= path[i - 1].first)
      throw ValidationError("path parameters must be strictly increasing");

  std::vector<double> from_start(n);
  for (std::size_t i = 0; i < n; ++i)
    from_start[i] = gauge_norm(unit_ball, path[i].second - path[0].second);

  // Smallest valid N is one past the largest i participating in a bad pair.
  std::ptrdiff_t max_bad = -1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double excess = from_start[i] +
                      gauge_norm(unit_ball, path[j].second - path[i].second) - path[j].first;
      if (std::abs(excess) >= epsilon) {
        max_bad = static_cast<std::ptrdiff_t>(i);
        break;  // larger j cannot lower this i's verdict
      }
    }
  }
  AlmostGeodesicResult res;
  if (max_bad + 1 < static_cast<std::ptrdiff_t>(n)) {
    res.is_almost_geodesic = true;
    res.tail_start = static_cast<std::size_t>(max_bad + 1);
  }
  return res;
}

}  // namespace horoball
