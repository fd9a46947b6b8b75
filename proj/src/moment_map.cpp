#include "horoball/moment_map.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "horoball/errors.hpp"

namespace horoball {

namespace {

// Exponents a_i = -<c_i|x> shifted so the largest is 0; the common shift
// cancels in every softmax-type expression below.
Vector shifted_exponents(std::span<const Vector> c, const Vector& x) {
  Vector a(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) a[static_cast<int>(i)] = -c[i].dot(x);
  return a.array() - a.maxCoeff();
}

// f(x) = -ln sum_i e^{-<c_i|x>}, the concave potential with gradient m^C.
double potential(std::span<const Vector> c, const Vector& x) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& ci : c) m = std::max(m, -ci.dot(x));
  double s = 0.0;
  for (const auto& ci : c) s += std::exp(-ci.dot(x) - m);
  return -(m + std::log(s));
}

}  // namespace

MomentResult moment_map(std::span<const Vector> c_vertices, const Vector& x) {
  if (c_vertices.empty()) throw EmptyVertexSet("moment map over empty vertex set");
  const Vector a = shifted_exponents(c_vertices, x);
  Vector w = a.array().exp();
  w /= w.sum();
  Vector point = Vector::Zero(x.size());
  for (std::size_t i = 0; i < c_vertices.size(); ++i)
    point += w[static_cast<int>(i)] * c_vertices[i];
  return {std::move(point), std::move(w)};
}

Matrix moment_jacobian(std::span<const Vector> c_vertices, const Vector& x) {
  if (c_vertices.empty()) throw EmptyVertexSet("moment jacobian over empty vertex set");
  const int m = static_cast<int>(x.size());
  const Vector a = shifted_exponents(c_vertices, x);
  const double s = a.array().exp().sum();
  Matrix j = Matrix::Zero(m, m);
  for (std::size_t i = 0; i < c_vertices.size(); ++i)
    for (std::size_t k = i + 1; k < c_vertices.size(); ++k) {
      const double e = std::exp(a[static_cast<int>(i)] + a[static_cast<int>(k)]);
      const Vector d = c_vertices[i] - c_vertices[k];
      j.noalias() -= e * (d * d.transpose());
    }
  return j / (s * s);
}

Vector invert_moment_map(std::span<const Vector> c_vertices, const Vector& y, double tol) {
  if (c_vertices.empty()) throw EmptyVertexSet("cannot invert over empty vertex set");
  const int m = static_cast<int>(y.size());
  const double margin = relative_interior_margin(c_vertices, y);
  if (!(margin >= 1e-6)) {
    std::ostringstream msg;
    msg << "target point has relative-interior margin " << margin
        << ", below the required 1e-6";
    throw NotInInterior(msg.str());
  }

  // Frame of the affine hull: orthonormal basis of span{c_i - centroid}.
  Vector centroid = Vector::Zero(m);
  for (const auto& c : c_vertices) centroid += c;
  centroid /= static_cast<double>(c_vertices.size());
  Matrix d(m, static_cast<int>(c_vertices.size()));
  for (std::size_t i = 0; i < c_vertices.size(); ++i)
    d.col(static_cast<int>(i)) = c_vertices[i] - centroid;
  Eigen::JacobiSVD<Matrix> svd(d, Eigen::ComputeThinU);
  const double sigma0 = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-12 * std::max(1.0, sigma0)) ++rank;
  if (rank == 0) return Vector::Zero(m);  // conv(C) is a point; any x maps to it
  const Matrix q = svd.matrixU().leftCols(rank);

  // Maximize phi(xi) = f(Q xi) - <y|Q xi>; its gradient Q^T(m^C - y) vanishes
  // exactly at the preimage because m^C - y stays inside the frame.
  const bool degenerate = rank < m && static_cast<int>(c_vertices.size()) > rank + 1;
  Vector xi = Vector::Zero(rank);
  for (int iter = 0; iter < 200; ++iter) {
    const Vector x = q * xi;
    const MomentResult mr = moment_map(c_vertices, x);
    const Vector residual = mr.point - y;
    if (residual.norm() <= tol) return x;

    const Vector g = q.transpose() * residual;  // gradient of phi at xi
    Matrix h = -(q.transpose() * moment_jacobian(c_vertices, x) * q);  // -Hess, SPD
    if (degenerate) h.diagonal().array() += 1e-12;
    Eigen::LDLT<Matrix> ldlt(h);
    if (ldlt.info() != Eigen::Success) {
      h.diagonal().array() += 1e-12;
      ldlt.compute(h);
      if (ldlt.info() != Eigen::Success)
        throw NoConvergence("moment inversion: Hessian factorization failed");
    }
    const Vector step = ldlt.solve(g);  // Newton ascent direction (-Hess)^{-1} grad
    const double slope = g.dot(step);   // d/dalpha phi(xi + alpha step) at 0, > 0
    const double phi0 = potential(c_vertices, x) - y.dot(x);
    // Sufficient-increase test with an absolute noise floor: once the
    // predicted gain 1e-4*slope sinks below rounding noise in phi, the
    // comparison would otherwise reject or accept at random and freeze the
    // iterate mid-plateau; the padded test lets the full Newton step through,
    // which is safe this close to the maximizer of a strictly concave phi.
    const double noise = 64 * std::numeric_limits<double>::epsilon() * (1 + std::abs(phi0));
    double alpha = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      const Vector trial = q * (xi + alpha * step);
      const double phi = potential(c_vertices, trial) - y.dot(trial);
      if (phi >= phi0 + 1e-4 * alpha * slope - noise) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) alpha = 1.0;
    xi += alpha * step;
  }
  throw NoConvergence("moment inversion did not reach tolerance in 200 iterations");
}

Vector boundary_moment_map(const Polytope& unit_ball, const Face& dual_ball_face,
                           const Vector& p) {
  if (!dual_ball_face.valid() || dual_ball_face.side() != FaceSide::dual ||
      !unit_ball.owns(dual_ball_face))
    throw NotAProperFace("boundary moment map needs a proper face of the dual ball");
  const Vector p_red = reduce_p(dual_ball_face, p);
  const auto verts = dual_ball_face.vertices();

  // Split each vertex c_i = t + c_i^F against V(F); t is shared across the
  // face, so averaging only smooths float noise.
  const Face f = dual_ball_face.dual();
  Vector t = Vector::Zero(unit_ball.dim());
  std::vector<Vector> shifted;
  shifted.reserve(verts.size());
  {
    std::vector<Vector> parts;
    parts.reserve(verts.size());
    for (const auto& c : verts) parts.push_back(project_split(f, c).first);
    for (const auto& part : parts) t += part;
    t /= static_cast<double>(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if ((parts[i] - t).lpNorm<Eigen::Infinity>() > 1e-7)
        throw NumericalError("face vertices do not share their V(F) component");
      shifted.push_back(verts[i] - t);
    }
  }

  const Vector frame_route = moment_map(shifted, p_red).point + t;
  const Vector direct_route = moment_map(verts, p_red).point;
  if ((frame_route - direct_route).lpNorm<Eigen::Infinity>() > 1e-12)
    throw NumericalError("boundary moment map cross-check failed");
  return frame_route;
}

Vector compactification_point(const Polytope& unit_ball, const CompactifiedPoint& q) {
  if (const auto* x = std::get_if<Vector>(&q)) {
    if (x->size() != unit_ball.dim())
      throw ValidationError("interior point dimension does not match the ball");
    return moment_map(unit_ball.dual_vertices(), *x).point;
  }
  const auto& h = std::get<Horofunction>(q);
  return boundary_moment_map(unit_ball, h.face, h.p);
}

}  // namespace horoball
