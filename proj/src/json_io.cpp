#include "horoball/json_io.hpp"

#include <charconv>
#include <system_error>

#include "horoball/errors.hpp"

namespace horoball {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ValidationError(std::string("missing required field \"") + key + "\"");
  return *it;
}

double require_number(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number()) throw ValidationError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

std::vector<int> int_list_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number_integer())
      throw ValidationError(std::string(what) + " must contain integers");
    out.push_back(e.get<int>());
  }
  return out;
}

std::vector<Vector> vector_list_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
  std::vector<Vector> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(vector_from_json(e));
  return out;
}

json face_to_json(const Face& f) {
  json fj;
  fj["dim"] = f.dim();
  fj["vertex_indices"] = f.vertex_indices();
  fj["dual_vertex_indices"] = f.dual().vertex_indices();
  return fj;
}

ScalarGenerator scalar_generator_from_json(const json& j) {
  ScalarGenerator g;
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind == "constant")
    g.kind = ScalarGenerator::Kind::constant;
  else if (kind == "affine")
    g.kind = ScalarGenerator::Kind::affine;
  else if (kind == "power")
    g.kind = ScalarGenerator::Kind::power;
  else if (kind == "log")
    g.kind = ScalarGenerator::Kind::logarithm;
  else if (kind == "sinusoid")
    g.kind = ScalarGenerator::Kind::sinusoid;
  else
    throw ValidationError("unknown coordinate generator kind \"" + kind + "\"");
  if (j.contains("a")) g.a = require_number(j, "a");
  if (j.contains("b")) g.b = require_number(j, "b");
  if (j.contains("c")) g.c = require_number(j, "c");
  if (j.contains("q")) g.q = require_number(j, "q");
  return g;
}

json scalar_generator_to_json(const ScalarGenerator& g) {
  json j;
  switch (g.kind) {
    case ScalarGenerator::Kind::constant:
      j["kind"] = "constant";
      j["c"] = g.c;
      break;
    case ScalarGenerator::Kind::affine:
      j["kind"] = "affine";
      j["a"] = g.a;
      j["c"] = g.c;
      break;
    case ScalarGenerator::Kind::power:
      j["kind"] = "power";
      j["c"] = g.c;
      j["q"] = g.q;
      break;
    case ScalarGenerator::Kind::logarithm:
      j["kind"] = "log";
      j["a"] = g.a;
      j["c"] = g.c;
      break;
    case ScalarGenerator::Kind::sinusoid:
      j["kind"] = "sinusoid";
      j["a"] = g.a;
      j["b"] = g.b;
      j["c"] = g.c;
      break;
  }
  return j;
}

}  // namespace

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of numbers");
  Vector v(static_cast<int>(j.size()));
  int i = 0;
  for (const auto& e : j) {
    if (!e.is_number()) throw ValidationError("expected an array of numbers");
    v[i++] = e.get<double>();
  }
  return v;
}

json polytope_to_json(const Polytope& p) {
  json j;
  j["dim"] = p.dim();
  json verts = json::array();
  for (const auto& v : p.vertices()) verts.push_back(vector_to_json(v));
  j["vertices"] = verts;
  json hs = json::array();
  for (const auto& h : p.halfspaces()) {
    json hj;
    hj["normal"] = vector_to_json(h.normal);
    hj["offset"] = h.offset;
    hs.push_back(hj);
  }
  j["halfspaces"] = hs;
  json faces = json::array();
  for (const auto& f : p.faces()) faces.push_back(face_to_json(f));
  j["faces"] = faces;
  return j;
}

Polytope polytope_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("polytope JSON must be an object");
  const int dim = require(j, "dim").get<int>();
  auto verts = vector_list_from_json(require(j, "vertices"), "\"vertices\"");
  for (const auto& v : verts)
    if (v.size() != dim)
      throw ValidationError("vertex length does not match \"dim\"");
  return build_polytope(verts);
}

json horofunction_to_json(const Horofunction& h) {
  json j;
  j["face_vertex_indices"] = h.face.vertex_indices();
  j["p"] = vector_to_json(h.p);
  return j;
}

Horofunction horofunction_from_json(const Polytope& unit_ball, const json& j) {
  if (!j.is_object()) throw ValidationError("horofunction JSON must be an object");
  auto ids = int_list_from_json(require(j, "face_vertex_indices"), "\"face_vertex_indices\"");
  Vector p = vector_from_json(require(j, "p"));
  auto face = unit_ball.find_face(FaceSide::dual, ids);
  if (!face)
    throw NotAProperFace("face_vertex_indices do not name a face of the dual ball");
  return make_horofunction(unit_ball, *face, p);
}

json sequence_spec_to_json(const SequenceSpec& s) {
  json j;
  json params = json::object();
  switch (s.kind) {
    case SequenceSpec::Kind::explicit_samples: {
      j["kind"] = "explicit";
      json samples = json::array();
      for (const auto& z : s.samples) samples.push_back(vector_to_json(z));
      params["samples"] = samples;
      break;
    }
    case SequenceSpec::Kind::affine:
      j["kind"] = "affine";
      params["a"] = s.a;
      params["c"] = s.c;
      break;
    case SequenceSpec::Kind::power:
      j["kind"] = "power";
      params["c"] = s.c;
      params["q"] = s.q;
      break;
    case SequenceSpec::Kind::logarithm:
      j["kind"] = "log";
      params["a"] = s.a;
      params["c"] = s.c;
      break;
    case SequenceSpec::Kind::sinusoid:
      j["kind"] = "sinusoid";
      params["a"] = s.a;
      params["b"] = s.b;
      params["c"] = s.c;
      break;
    case SequenceSpec::Kind::expr: {
      j["kind"] = "expr";
      json coords = json::array();
      for (const auto& g : s.coords) coords.push_back(scalar_generator_to_json(g));
      params["coords"] = coords;
      break;
    }
  }
  j["params"] = params;
  j["horizon"] = s.horizon;
  return j;
}

SequenceSpec sequence_spec_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("sequence spec JSON must be an object");
  SequenceSpec s;
  const std::string kind = require(j, "kind").get<std::string>();
  const json params = j.contains("params") ? j.at("params") : json::object();
  if (kind == "explicit") {
    s.kind = SequenceSpec::Kind::explicit_samples;
    s.samples = vector_list_from_json(require(params, "samples"), "\"samples\"");
    s.horizon = static_cast<int>(s.samples.size());
    if (s.samples.empty()) throw ValidationError("explicit sequence has no samples");
    return s;
  }
  s.horizon = require(j, "horizon").get<int>();
  if (s.horizon < 1) throw ValidationError("horizon must be at least 1");
  if (kind == "affine") {
    s.kind = SequenceSpec::Kind::affine;
    s.a = require_number(params, "a");
    s.c = require_number(params, "c");
  } else if (kind == "power") {
    s.kind = SequenceSpec::Kind::power;
    s.c = require_number(params, "c");
    s.q = require_number(params, "q");
  } else if (kind == "log") {
    s.kind = SequenceSpec::Kind::logarithm;
    s.a = require_number(params, "a");
    s.c = require_number(params, "c");
  } else if (kind == "sinusoid") {
    s.kind = SequenceSpec::Kind::sinusoid;
    s.a = require_number(params, "a");
    s.b = require_number(params, "b");
    s.c = require_number(params, "c");
  } else if (kind == "expr") {
    s.kind = SequenceSpec::Kind::expr;
    const json& coords = require(params, "coords");
    if (!coords.is_array() || coords.empty())
      throw ValidationError("\"coords\" must be a nonempty array");
    for (const auto& c : coords) s.coords.push_back(scalar_generator_from_json(c));
  } else {
    throw ValidationError("unknown sequence kind \"" + kind + "\"");
  }
  return s;
}

json verdict_to_json(const ClassificationVerdict& v) {
  json j;
  switch (v.kind) {
    case ClassificationVerdict::Kind::bounded:
      j["verdict"] = "bounded";
      break;
    case ClassificationVerdict::Kind::horofunction:
      j["verdict"] = "horofunction";
      j["horofunction"] = horofunction_to_json(*v.limit);
      break;
    case ClassificationVerdict::Kind::inconclusive:
      j["verdict"] = "inconclusive";
      break;
  }
  json reports = json::array();
  for (const auto& r : v.reports) {
    json rj;
    rj["face"] = face_to_json(r.face);
    rj["unbounded"] = r.unbounded;
    rj["in_cone"] = r.in_cone;
    rj["distance_growth"] = r.distance_growth;
    rj["p_converged"] = r.p_converged;
    rj["max_tail_norm"] = r.max_tail_norm;
    rj["norm_growth"] = r.norm_growth;
    rj["first_distance"] = r.first_distance;
    rj["final_distance"] = r.final_distance;
    rj["distance_growth_amount"] = r.distance_growth_amount;
    rj["min_distance_step"] = r.min_distance_step;
    if (r.p_limit) rj["p_limit"] = vector_to_json(*r.p_limit);
    rj["p_residual"] = r.p_residual;
    rj["window"] = {r.window_begin, r.window_end};
    reports.push_back(rj);
  }
  j["reports"] = reports;
  j["diagnostics"] = v.diagnostics;
  return j;
}

json moment_result_to_json(const MomentResult& r) {
  json j;
  j["point"] = vector_to_json(r.point);
  j["weights"] = vector_to_json(r.weights);
  return j;
}

CompactifiedPoint compactified_point_from_json(const Polytope& unit_ball, const json& j) {
  if (j.is_array()) return vector_from_json(j);
  if (!j.is_object()) throw ValidationError("expected a point array or an object");
  if (j.contains("face_vertex_indices")) return horofunction_from_json(unit_ball, j);
  if (j.contains("point")) return vector_from_json(j.at("point"));
  throw ValidationError("object is neither a point nor a horofunction");
}

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // collapse negative zero
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (res.ec != std::errc()) throw NumericalError("real formatting failed");
  return std::string(buf, res.ptr);
}

}  // namespace horoball
