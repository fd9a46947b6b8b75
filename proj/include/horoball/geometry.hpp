#pragma once

// Full-dimensional bounded polytopes with the origin interior, under the
// pairing convention  <u|x> >= -1:  the polar dual of B is
//   B* = { u : <u|x> >= -1 for all x in B },
// so the facet normals of B, scaled to offset -1, are exactly the vertices
// of B*.  A Polytope therefore carries both vertex sets and both face
// lattices, with each face linked to its dual face
//   E = F* = { u in B* : <u|f> = -1 for all f in F },   dim F + dim E = m-1.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "horoball/types.hpp"

namespace horoball {

struct Halfspace {
  Vector normal;  // <normal|x> >= offset
  double offset = 0.0;
};

enum class FaceSide { primal, dual };

struct FaceRecord {
  std::vector<int> vertex_indices;  // sorted
  int dim = 0;
  int dual_index = -1;  // paired face in the opposite lattice
};

struct PolytopeData {
  int dim = 0;
  double face_eps = kFaceEps;
  std::vector<Vector> vertices;
  std::vector<Vector> dual_vertices;  // facet normals at offset -1
  std::vector<FaceRecord> faces;
  std::vector<FaceRecord> dual_faces;
  std::vector<std::string> validation_log;
};

class Polytope;

// Cheap handle to one proper face of a polytope (or of its dual).
class Face {
 public:
  Face() = default;

  bool valid() const { return data_ != nullptr && index_ >= 0; }
  FaceSide side() const { return side_; }
  int index() const { return index_; }
  int dim() const;
  const std::vector<int>& vertex_indices() const;
  std::vector<Vector> vertices() const;
  // The paired face of the opposite lattice.
  Face dual() const;
  // Faces strictly contained in this one (same side).
  std::vector<Face> proper_subfaces() const;
  // Any face of the same polytope, addressed by side and vertex set.
  std::optional<Face> lattice_face(FaceSide side, std::vector<int> vertex_indices) const;
  bool same_parent(const Face& other) const { return data_ == other.data_; }

  friend bool operator==(const Face& a, const Face& b) {
    return a.data_ == b.data_ && a.side_ == b.side_ && a.index_ == b.index_;
  }

 private:
  friend class Polytope;
  Face(std::shared_ptr<const PolytopeData> data, FaceSide side, int index)
      : data_(std::move(data)), side_(side), index_(index) {}

  const FaceRecord& record() const;

  std::shared_ptr<const PolytopeData> data_;
  FaceSide side_ = FaceSide::primal;
  int index_ = -1;
};

class Polytope {
 public:
  Polytope() = default;

  int dim() const { return data_->dim; }
  const std::vector<Vector>& vertices() const { return data_->vertices; }
  const std::vector<Vector>& dual_vertices() const { return data_->dual_vertices; }
  // H-rep of the primal, normalized so every offset is -1.
  std::vector<Halfspace> halfspaces() const;
  std::vector<Face> faces() const;
  std::vector<Face> dual_faces() const;
  Face face(FaceSide side, int index) const;
  // Looks a face up by its sorted vertex index set.
  std::optional<Face> find_face(FaceSide side, const std::vector<int>& vertex_indices) const;
  bool owns(const Face& f) const;
  const std::vector<std::string>& validation_log() const { return data_->validation_log; }
  double face_eps() const { return data_->face_eps; }

 private:
  friend Polytope build_polytope(std::span<const Vector>, double);
  explicit Polytope(std::shared_ptr<const PolytopeData> data) : data_(std::move(data)) {}

  std::shared_ptr<const PolytopeData> data_;
};

struct ConeQueryResult {
  bool inside = false;
  // Euclidean distance from the query point to the relative boundary of the
  // closed cone over the face (the union of the sub-face cones and {0}).
  double rel_boundary_distance = 0.0;
};

// Validates the input points, drops non-extreme ones (logged), and builds
// the vertex/halfspace representations plus both face lattices.
// Throws DuplicateVertex, NotFullDimensional, OriginNotInterior.
Polytope build_polytope(std::span<const Vector> points, double face_eps = kFaceEps);

// Fresh polytope built from the dual vertex set.  Applying it twice
// reproduces the original vertices up to permutation.
Polytope polar_dual(const Polytope& p);

// The face of the opposite lattice paired with f.  Throws NotAProperFace
// if f does not belong to p.
Face dual_face(const Polytope& p, const Face& f);

// Orthogonal split x = x_F + x_perp against V(F) = span of F's vertices.
std::pair<Vector, Vector> project_split(const Face& f, const Vector& x);

// Membership of x in the closed cone over F, plus the distance from x to
// the relative boundary of that cone.
ConeQueryResult cone_query(const Face& f, const Vector& x);

// Orthonormal basis of span(F's vertices) as columns; identity shortcut
// when the span is the whole space.
Matrix span_basis(const Face& f);

// Supporting halfspaces (unit normals, polytope on the >= side) of the
// convex hull of full-dimensional `points`; brute force over subsets.
std::vector<Halfspace> supporting_halfspaces(std::span<const Vector> points,
                                             double face_eps = kFaceEps);

// Minimum slack of `point` against the facets of conv(points) inside its
// affine hull; +inf for a single point, -inf when `point` is off the hull
// plane.  Positive means the point lies in the relative interior.
double relative_interior_margin(std::span<const Vector> points, const Vector& point,
                                double face_eps = kFaceEps);

}  // namespace horoball
