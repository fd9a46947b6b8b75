#include "horoball/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "horoball/errors.hpp"
#include "horoball/nnls.hpp"

namespace horoball {
namespace {

double coordinate_scale(std::span<const Vector> pts) {
  double s = 1.0;
  for (const auto& v : pts) s = std::max(s, v.lpNorm<Eigen::Infinity>());
  return s;
}

int affine_rank(std::span<const Vector> pts, const std::vector<int>& idx) {
  if (idx.size() <= 1) return 0;
  const auto& base = pts[idx[0]];
  Matrix d(base.size(), idx.size() - 1);
  for (std::size_t j = 1; j < idx.size(); ++j) d.col(j - 1) = pts[idx[j]] - base;
  Eigen::JacobiSVD<Matrix> svd(d);
  const auto& sv = svd.singularValues();
  double tol = 1e-9 * std::max(1.0, sv.size() ? sv[0] : 0.0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > tol) ++r;
  return r;
}

int affine_rank_all(std::span<const Vector> pts) {
  std::vector<int> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  return affine_rank(pts, idx);
}

bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// v is redundant when it lies in the convex hull of the other points
// (homogenized nonnegative least squares fit).
bool in_hull_of_others(std::span<const Vector> pts, int skip, double eps) {
  const int m = static_cast<int>(pts[0].size());
  const int k = static_cast<int>(pts.size());
  Matrix a(m + 1, k - 1);
  int col = 0;
  for (int i = 0; i < k; ++i) {
    if (i == skip) continue;
    a.col(col).head(m) = pts[i];
    a(m, col) = 1.0;
    ++col;
  }
  Vector b(m + 1);
  b.head(m) = pts[skip];
  b[m] = 1.0;
  return nnls(a, b).residual_norm <= eps * (1.0 + pts[skip].norm());
}

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool face_order(const FaceRecord& a, const FaceRecord& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  return a.vertex_indices < b.vertex_indices;
}

}  // namespace

std::vector<Halfspace> supporting_halfspaces(std::span<const Vector> points, double face_eps) {
  if (points.empty()) throw EmptyVertexSet("no points for halfspace enumeration");
  const int m = static_cast<int>(points[0].size());
  const int n = static_cast<int>(points.size());
  const double scale = coordinate_scale(points);
  const double side_tol = face_eps * scale;

  std::vector<Halfspace> out;
  auto push_unique = [&](const Vector& normal, double offset) {
    for (const auto& h : out) {
      if ((h.normal - normal).lpNorm<Eigen::Infinity>() <= 1e-7 &&
          std::abs(h.offset - offset) <= 1e-7 * scale)
        return;
    }
    out.push_back({normal, offset});
  };

  if (m == 1) {
    double lo = points[0][0], hi = points[0][0];
    for (const auto& p : points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    Vector plus = Vector::Constant(1, 1.0), minus = Vector::Constant(1, -1.0);
    push_unique(plus, lo);
    push_unique(minus, -hi);
    return out;
  }

  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  do {
    Matrix a(m - 1, m);
    for (int i = 1; i < m; ++i) a.row(i - 1) = (points[idx[i]] - points[idx[0]]).transpose();
    Eigen::FullPivLU<Matrix> lu(a);
    lu.setThreshold(1e-9);
    if (lu.dimensionOfKernel() != 1) continue;
    Vector n = lu.kernel().col(0);
    n.normalize();
    double b = n.dot(points[idx[0]]);

    bool has_pos = false, has_neg = false;
    for (const auto& pt : points) {
      double s = n.dot(pt) - b;
      if (s > side_tol) has_pos = true;
      if (s < -side_tol) has_neg = true;
      if (has_pos && has_neg) break;
    }
    if (has_pos && has_neg) continue;  // hyperplane cuts the hull
    if (!has_pos) {
      n = -n;
      b = -b;
    }
    push_unique(n, b);
  } while (next_combination(idx, n));
  return out;
}

Polytope build_polytope(std::span<const Vector> points, double face_eps) {
  if (points.empty()) throw NotFullDimensional("no input points");
  const int m = static_cast<int>(points[0].size());
  if (m < 1) throw NotFullDimensional("points must have dimension >= 1");
  for (const auto& p : points)
    if (p.size() != m) throw ValidationError("inconsistent point dimensions");

  const double scale = coordinate_scale(points);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if ((points[i] - points[j]).lpNorm<Eigen::Infinity>() <= face_eps * scale) {
        std::ostringstream msg;
        msg << "input points " << i << " and " << j << " coincide";
        throw DuplicateVertex(msg.str());
      }

  if (affine_rank_all(points) < m)
    throw NotFullDimensional("input points do not affinely span the ambient space");

  auto data = std::make_shared<PolytopeData>();
  data->dim = m;
  data->face_eps = face_eps;

  std::vector<Vector> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points.size() > 1 && in_hull_of_others(points, static_cast<int>(i), face_eps)) {
      std::ostringstream msg;
      msg << "dropped non-extreme input point " << i;
      data->validation_log.push_back(msg.str());
      continue;
    }
    kept.push_back(points[i]);
  }
  if (static_cast<int>(kept.size()) < m + 1 || affine_rank_all(kept) < m)
    throw NotFullDimensional("extreme points do not span the ambient space");
  data->vertices = kept;

  auto raw = supporting_halfspaces(kept, face_eps);
  for (const auto& h : raw)
    if (h.offset >= -face_eps * scale)
      throw OriginNotInterior("a facet hyperplane does not separate the origin");

  std::vector<Vector> duals;
  duals.reserve(raw.size());
  for (const auto& h : raw) duals.push_back(h.normal / (-h.offset));
  std::sort(duals.begin(), duals.end(), [](const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                        b.data() + b.size());
  });
  data->dual_vertices = duals;

  // Facet incidence over the offset -1 normalization.
  const int nf = static_cast<int>(duals.size());
  const int nv = static_cast<int>(kept.size());
  std::vector<std::vector<int>> facet_sets(nf);
  std::vector<std::vector<int>> vertex_facets(nv);
  for (int j = 0; j < nf; ++j) {
    double tol = face_eps * std::max(1.0, duals[j].lpNorm<Eigen::Infinity>() * scale * m);
    for (int i = 0; i < nv; ++i) {
      if (std::abs(duals[j].dot(kept[i]) + 1.0) <= tol) {
        facet_sets[j].push_back(i);
        vertex_facets[i].push_back(j);
      }
    }
    if (static_cast<int>(facet_sets[j].size()) < m ||
        affine_rank(kept, facet_sets[j]) != m - 1)
      throw NumericalError("facet incidence is degenerate");
  }
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nf; ++j)
      if (duals[j].dot(kept[i]) < -1.0 - face_eps * scale * std::max(1.0, duals[j].norm()))
        throw NumericalError("vertex violates a facet halfspace");
  }

  // Proper faces = closure of the facet vertex sets under intersection.
  std::set<std::vector<int>> closed(facet_sets.begin(), facet_sets.end());
  std::vector<std::vector<int>> queue(closed.begin(), closed.end());
  while (!queue.empty()) {
    auto cur = std::move(queue.back());
    queue.pop_back();
    for (const auto& g : facet_sets) {
      auto inter = sorted_intersection(cur, g);
      if (!inter.empty() && closed.insert(inter).second) queue.push_back(inter);
    }
  }

  std::vector<FaceRecord> faces;
  for (const auto& s : closed) {
    FaceRecord f;
    f.vertex_indices = s;
    f.dim = affine_rank(kept, s);
    faces.push_back(std::move(f));
  }
  std::sort(faces.begin(), faces.end(), face_order);

  // Dual lattice: F -> E = { j : facet j contains every vertex of F }.
  std::vector<FaceRecord> dual_faces;
  std::map<std::vector<int>, int> dual_index_of;
  std::vector<int> primal_to_dual(faces.size());
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    std::vector<int> e = vertex_facets[faces[fi].vertex_indices[0]];
    for (std::size_t k = 1; k < faces[fi].vertex_indices.size(); ++k)
      e = sorted_intersection(e, vertex_facets[faces[fi].vertex_indices[k]]);
    if (e.empty()) throw NumericalError("face has an empty dual face");
    auto [it, inserted] = dual_index_of.try_emplace(e, static_cast<int>(dual_faces.size()));
    // The duality map is a bijection on faces, so no two primal faces may
    // share a dual vertex set.
    if (!inserted) throw NumericalError("dual face collision in the lattice");
    FaceRecord rec;
    rec.vertex_indices = e;
    rec.dim = affine_rank(duals, e);
    dual_faces.push_back(std::move(rec));
    primal_to_dual[fi] = it->second;
  }

  // Canonical order for the dual lattice, then cross-link.
  std::vector<int> order(dual_faces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return face_order(dual_faces[a], dual_faces[b]); });
  std::vector<int> new_pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_pos[order[i]] = static_cast<int>(i);
  std::vector<FaceRecord> dual_sorted(dual_faces.size());
  for (std::size_t i = 0; i < order.size(); ++i) dual_sorted[i] = dual_faces[order[i]];

  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    int di = new_pos[primal_to_dual[fi]];
    faces[fi].dual_index = di;
    dual_sorted[di].dual_index = static_cast<int>(fi);
    if (faces[fi].dim + dual_sorted[di].dim != m - 1)
      throw NumericalError("face lattice violates the dual dimension formula");
  }

  data->faces = std::move(faces);
  data->dual_faces = std::move(dual_sorted);
  return Polytope(std::move(data));
}

Polytope polar_dual(const Polytope& p) {
  return build_polytope(p.dual_vertices(), p.face_eps());
}

// ---- Face handle ----

const FaceRecord& Face::record() const {
  if (!valid()) throw NotAProperFace("face handle is empty");
  const auto& list = side_ == FaceSide::primal ? data_->faces : data_->dual_faces;
  if (index_ >= static_cast<int>(list.size())) throw NotAProperFace("face index out of range");
  return list[index_];
}

int Face::dim() const { return record().dim; }

const std::vector<int>& Face::vertex_indices() const { return record().vertex_indices; }

std::vector<Vector> Face::vertices() const {
  const auto& rec = record();
  const auto& pool = side_ == FaceSide::primal ? data_->vertices : data_->dual_vertices;
  std::vector<Vector> out;
  out.reserve(rec.vertex_indices.size());
  for (int i : rec.vertex_indices) out.push_back(pool[i]);
  return out;
}

Face Face::dual() const {
  const auto& rec = record();
  return Face(data_, side_ == FaceSide::primal ? FaceSide::dual : FaceSide::primal,
              rec.dual_index);
}

std::optional<Face> Face::lattice_face(FaceSide side, std::vector<int> vertex_indices) const {
  if (!valid()) return std::nullopt;
  std::sort(vertex_indices.begin(), vertex_indices.end());
  const auto& list = side == FaceSide::primal ? data_->faces : data_->dual_faces;
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i].vertex_indices == vertex_indices)
      return Face(data_, side, static_cast<int>(i));
  return std::nullopt;
}

std::vector<Face> Face::proper_subfaces() const {
  const auto& rec = record();
  const auto& list = side_ == FaceSide::primal ? data_->faces : data_->dual_faces;
  std::vector<Face> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (static_cast<int>(i) == index_) continue;
    if (list[i].vertex_indices.size() >= rec.vertex_indices.size()) continue;
    if (std::includes(rec.vertex_indices.begin(), rec.vertex_indices.end(),
                      list[i].vertex_indices.begin(), list[i].vertex_indices.end()))
      out.push_back(Face(data_, side_, static_cast<int>(i)));
  }
  return out;
}

// ---- Polytope accessors ----

std::vector<Halfspace> Polytope::halfspaces() const {
  std::vector<Halfspace> out;
  out.reserve(data_->dual_vertices.size());
  for (const auto& u : data_->dual_vertices) out.push_back({u, -1.0});
  return out;
}

std::vector<Face> Polytope::faces() const {
  std::vector<Face> out;
  for (std::size_t i = 0; i < data_->faces.size(); ++i)
    out.push_back(Face(data_, FaceSide::primal, static_cast<int>(i)));
  return out;
}

std::vector<Face> Polytope::dual_faces() const {
  std::vector<Face> out;
  for (std::size_t i = 0; i < data_->dual_faces.size(); ++i)
    out.push_back(Face(data_, FaceSide::dual, static_cast<int>(i)));
  return out;
}

Face Polytope::face(FaceSide side, int index) const {
  const auto& list = side == FaceSide::primal ? data_->faces : data_->dual_faces;
  if (index < 0 || index >= static_cast<int>(list.size()))
    throw NotAProperFace("face index out of range");
  return Face(data_, side, index);
}

std::optional<Face> Polytope::find_face(FaceSide side,
                                        const std::vector<int>& vertex_indices) const {
  std::vector<int> key = vertex_indices;
  std::sort(key.begin(), key.end());
  const auto& list = side == FaceSide::primal ? data_->faces : data_->dual_faces;
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i].vertex_indices == key) return Face(data_, side, static_cast<int>(i));
  return std::nullopt;
}

bool Polytope::owns(const Face& f) const { return f.valid() && f.data_ == data_; }

// ---- Face operations ----

Face dual_face(const Polytope& p, const Face& f) {
  if (!p.owns(f)) throw NotAProperFace("face does not belong to this polytope");
  return f.dual();
}

Matrix span_basis(const Face& f) {
  auto verts = f.vertices();
  const int m = static_cast<int>(verts[0].size());
  Matrix g(m, verts.size());
  for (std::size_t j = 0; j < verts.size(); ++j) g.col(j) = verts[j];
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double tol = 1e-9 * std::max(1.0, sv.size() ? sv[0] : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > tol) ++rank;
  if (rank == m) return Matrix::Identity(m, m);
  return svd.matrixU().leftCols(rank);
}

std::pair<Vector, Vector> project_split(const Face& f, const Vector& x) {
  Matrix q = span_basis(f);
  if (q.cols() == x.size()) return {x, Vector::Zero(x.size())};
  Vector x_f = q * (q.transpose() * x);
  return {x_f, x - x_f};
}

ConeQueryResult cone_query(const Face& f, const Vector& x) {
  auto verts = f.vertices();
  const int m = static_cast<int>(verts[0].size());
  Matrix g(m, verts.size());
  for (std::size_t j = 0; j < verts.size(); ++j) g.col(j) = verts[j];

  ConeQueryResult res;
  res.inside = nnls(g, x).residual_norm <= kFaceEps * (1.0 + x.norm());

  // Relative boundary: every proper sub-face cone, plus the apex.
  double dist = x.norm();
  for (const auto& sub : f.proper_subfaces()) {
    auto sverts = sub.vertices();
    Matrix gs(m, sverts.size());
    for (std::size_t j = 0; j < sverts.size(); ++j) gs.col(j) = sverts[j];
    dist = std::min(dist, nnls(gs, x).residual_norm);
  }
  res.rel_boundary_distance = dist;
  return res;
}

double relative_interior_margin(std::span<const Vector> points, const Vector& point,
                                double face_eps) {
  if (points.empty()) throw EmptyVertexSet("no vertices for interior test");
  const int m = static_cast<int>(points[0].size());
  const double inf = std::numeric_limits<double>::infinity();

  Vector centroid = Vector::Zero(m);
  for (const auto& v : points) centroid += v;
  centroid /= static_cast<double>(points.size());

  Matrix d(m, points.size());
  for (std::size_t j = 0; j < points.size(); ++j) d.col(j) = points[j] - centroid;
  Eigen::JacobiSVD<Matrix> svd(d, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double tol = 1e-9 * std::max(1.0, sv.size() ? sv[0] : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > tol) ++rank;

  Vector rel = point - centroid;
  Matrix q = svd.matrixU().leftCols(rank);
  double off_hull = (rel - q * (q.transpose() * rel)).lpNorm<Eigen::Infinity>();
  if (off_hull > 1e-7 * (1.0 + point.lpNorm<Eigen::Infinity>())) return -inf;
  if (rank == 0) return inf;  // conv(points) is a single point

  std::vector<Vector> frame_pts;
  frame_pts.reserve(points.size());
  for (std::size_t j = 0; j < points.size(); ++j)
    frame_pts.push_back(q.transpose() * (points[j] - centroid));
  Vector frame_y = q.transpose() * rel;

  double margin = inf;
  for (const auto& h : supporting_halfspaces(frame_pts, face_eps))
    margin = std::min(margin, h.normal.dot(frame_y) - h.offset);
  return margin;
}

}  // namespace horoball
