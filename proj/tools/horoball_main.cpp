// Command-line front end: polar duals, sequence classification, the
// compactification map and its inverse, gauge evaluation, and a demo corpus
// of artifacts for the running square example.
//
// Exit codes: 0 success, 2 input/validation error, 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "horoball/convergence.hpp"
#include "horoball/errors.hpp"
#include "horoball/gauge.hpp"
#include "horoball/geometry.hpp"
#include "horoball/horofunction.hpp"
#include "horoball/json_io.hpp"
#include "horoball/moment_map.hpp"

namespace {

using nlohmann::json;
using namespace horoball;

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open input file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("invalid JSON in " + path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file " + path);
  out << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Vector point_from_doc(const json& j) {
  if (j.is_object() && j.contains("point")) return vector_from_json(j.at("point"));
  return vector_from_json(j);
}

std::vector<Vector> vertices_from_doc(const json& j) {
  const json& arr = (j.is_object() && j.contains("vertices")) ? j.at("vertices") : j;
  if (!arr.is_array()) throw ValidationError("expected an array of vertices");
  std::vector<Vector> out;
  out.reserve(arr.size());
  for (const auto& e : arr) out.push_back(vector_from_json(e));
  return out;
}

std::string csv_vector(const Vector& v) {
  std::string row;
  for (int i = 0; i < v.size(); ++i) {
    if (i) row += ",";
    row += format_real(v[i]);
  }
  return row;
}

std::string join_indices(const std::vector<int>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(ids[i]);
  }
  return s;
}

struct Options {
  std::string input;
  std::string second_input;
  std::string output;
  std::string format = "json";
  double tol_face = kFaceEps;
  double invert_tol = 1e-10;
  int horizon = 0;  // 0 = take the sequence file's horizon
  ClassifierParams params;
};

void add_format_flag(CLI::App* cmd, Options& opt) {
  cmd->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

void cmd_dual(const Options& opt) {
  auto p = build_polytope(vertices_from_doc(read_json_file(opt.input)), opt.tol_face);
  auto dual = polar_dual(p);
  if (opt.format == "csv") {
    std::string out;
    for (const auto& v : dual.vertices()) out += csv_vector(v) + "\n";
    write_text(opt.output, out);
    return;
  }
  write_text(opt.output, dump(polytope_to_json(dual)));
}

void cmd_classify(const Options& opt) {
  auto p = build_polytope(vertices_from_doc(read_json_file(opt.input)), opt.tol_face);
  auto spec = sequence_spec_from_json(read_json_file(opt.second_input));
  if (opt.horizon > 0) spec.horizon = opt.horizon;
  auto verdict = classify(p, spec, opt.params);
  if (opt.format == "csv") {
    std::string out =
        "face_index,dim,unbounded,in_cone,distance_growth,p_converged,"
        "p_residual,final_distance\n";
    for (const auto& r : verdict.reports) {
      out += std::to_string(r.face.index()) + "," + std::to_string(r.face.dim()) + "," +
             std::to_string(r.unbounded) + "," + std::to_string(r.in_cone) + "," +
             std::to_string(r.distance_growth) + "," + std::to_string(r.p_converged) +
             "," + format_real(r.p_residual) + "," + format_real(r.final_distance) +
             "\n";
    }
    write_text(opt.output, out);
    return;
  }
  write_text(opt.output, dump(verdict_to_json(verdict)));
}

void cmd_map(const Options& opt) {
  auto p = build_polytope(vertices_from_doc(read_json_file(opt.input)), opt.tol_face);
  auto q = compactified_point_from_json(p, read_json_file(opt.second_input));
  Vector image = compactification_point(p, q);
  if (opt.format == "csv") {
    write_text(opt.output, csv_vector(image) + "\n");
    return;
  }
  json j;
  j["point"] = vector_to_json(image);
  write_text(opt.output, dump(j));
}

void cmd_moment(const Options& opt) {
  auto p = build_polytope(vertices_from_doc(read_json_file(opt.input)), opt.tol_face);
  Vector x = point_from_doc(read_json_file(opt.second_input));
  if (x.size() != p.dim()) throw ValidationError("point dimension does not match");
  auto result = moment_map(p.dual_vertices(), x);
  if (opt.format == "csv") {
    write_text(opt.output, csv_vector(result.point) + "\n");
    return;
  }
  write_text(opt.output, dump(moment_result_to_json(result)));
}

void cmd_invert(const Options& opt) {
  auto p = build_polytope(vertices_from_doc(read_json_file(opt.input)), opt.tol_face);
  Vector y = point_from_doc(read_json_file(opt.second_input));
  if (y.size() != p.dim()) throw ValidationError("point dimension does not match");
  Vector x = invert_moment_map(p.dual_vertices(), y, opt.invert_tol);
  if (opt.format == "csv") {
    write_text(opt.output, csv_vector(x) + "\n");
    return;
  }
  json j;
  j["x"] = vector_to_json(x);
  j["residual"] = (moment_map(p.dual_vertices(), x).point - y).norm();
  write_text(opt.output, dump(j));
}

void cmd_gauge(const Options& opt) {
  auto p = build_polytope(vertices_from_doc(read_json_file(opt.input)), opt.tol_face);
  Vector x = point_from_doc(read_json_file(opt.second_input));
  if (x.size() != p.dim()) throw ValidationError("point dimension does not match");
  double value = gauge_norm(p, x);
  if (opt.format == "csv") {
    write_text(opt.output, format_real(value) + "\n");
    return;
  }
  json j;
  j["value"] = value;
  write_text(opt.output, dump(j));
}

void cmd_pseudo_norm(const Options& opt) {
  auto verts = vertices_from_doc(read_json_file(opt.input));
  Vector x = point_from_doc(read_json_file(opt.second_input));
  double value = pseudo_norm(verts, x);
  if (opt.format == "csv") {
    write_text(opt.output, format_real(value) + "\n");
    return;
  }
  json j;
  j["value"] = value;
  write_text(opt.output, dump(j));
}

// The running example: the L^1 square, its dual, the face table, the five
// classified sequences, and grid images of the map for plotting.
void cmd_demo(const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto path = [&out_dir](const char* name) { return (fs::path(out_dir) / name).string(); };

  std::vector<Vector> square(4);
  square[0] = Vector(2);
  square[0] << 1, 0;
  square[1] = Vector(2);
  square[1] << 0, 1;
  square[2] = Vector(2);
  square[2] << -1, 0;
  square[3] = Vector(2);
  square[3] << 0, -1;
  auto ball = build_polytope(square);
  auto dual = polar_dual(ball);
  write_text(path("unit_ball.json"), dump(polytope_to_json(ball)));
  write_text(path("dual_ball.json"), dump(polytope_to_json(dual)));

  std::string table = "side,index,dim,vertex_indices,dual_vertex_indices\n";
  for (const auto& f : ball.faces())
    table += "primal," + std::to_string(f.index()) + "," + std::to_string(f.dim()) + "," +
             join_indices(f.vertex_indices()) + "," + join_indices(f.dual().vertex_indices()) +
             "\n";
  for (const auto& f : ball.dual_faces())
    table += "dual," + std::to_string(f.index()) + "," + std::to_string(f.dim()) + "," +
             join_indices(f.vertex_indices()) + "," + join_indices(f.dual().vertex_indices()) +
             "\n";
  write_text(path("face_table.csv"), table);

  struct NamedSpec {
    const char* name;
    SequenceSpec spec;
  };
  std::vector<NamedSpec> specs;
  {
    SequenceSpec s;
    s.horizon = 1000;
    s.kind = SequenceSpec::Kind::affine;
    s.a = 0;
    s.c = 2;
    specs.push_back({"affine_constant_height", s});
    s.kind = SequenceSpec::Kind::affine;
    s.a = 1;
    s.c = 0;
    specs.push_back({"diagonal", s});
    s.kind = SequenceSpec::Kind::power;
    s.c = 1;
    s.q = -1;
    specs.push_back({"reciprocal", s});
    s.kind = SequenceSpec::Kind::sinusoid;
    s.a = 0.5;
    s.b = 5;
    s.c = 1;
    specs.push_back({"sinusoid", s});
    s.kind = SequenceSpec::Kind::logarithm;
    s.a = 2;
    s.c = 1;
    specs.push_back({"log", s});
  }
  json verdicts = json::array();
  for (const auto& ns : specs) {
    json entry;
    entry["name"] = ns.name;
    entry["sequence"] = sequence_spec_to_json(ns.spec);
    entry["verdict"] = verdict_to_json(classify(ball, ns.spec, ClassifierParams{}));
    verdicts.push_back(entry);
  }
  write_text(path("verdicts.json"), dump(verdicts));

  // 50x50 grid image of the interior map over [-5,5]^2; 2500 data rows.
  std::string grid;
  for (int i = 0; i < 50; ++i)
    for (int k = 0; k < 50; ++k) {
      Vector x(2);
      x << -5.0 + 10.0 * i / 49.0, -5.0 + 10.0 * k / 49.0;
      Vector image = moment_map(ball.dual_vertices(), x).point;
      grid += csv_vector(x) + "," + csv_vector(image) + "\n";
    }
  write_text(path("moment_grid.csv"), grid);

  // Boundary images m^E(p) on an 11-point p-grid per proper dual face.
  std::string boundary = "face_index,dim,s,p1,p2,m1,m2\n";
  for (const auto& e : ball.dual_faces()) {
    Matrix q = span_basis(e.dual());
    Vector w = Vector::Zero(2);
    if (q.cols() < 2) {
      // Orthonormal complement in the plane, sign-fixed for determinism.
      w << -q(1, 0), q(0, 0);
      if (w[0] < 0 || (w[0] == 0 && w[1] < 0)) w = -w;
    }
    for (int i = 0; i < 11; ++i) {
      double s = -5.0 + 10.0 * i / 10.0;
      Vector p = s * w;
      Vector image = boundary_moment_map(ball, e, p);
      boundary += std::to_string(e.index()) + "," + std::to_string(e.dim()) + "," +
                  format_real(s) + "," + csv_vector(p) + "," + csv_vector(image) + "\n";
    }
  }
  write_text(path("boundary_images.csv"), boundary);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polyhedral-norm toolkit: duals, horofunctions, and the moment map"};
  app.require_subcommand(1);

  Options opt;
  std::string demo_dir = "demo_out";

  auto* dual = app.add_subcommand("dual", "Polar dual of a polytope");
  dual->add_option("polytope", opt.input, "Polytope JSON file")->required();
  dual->add_option("-o,--output", opt.output, "Output file (stdout if absent)");
  dual->add_option("--tol-face", opt.tol_face, "Face incidence tolerance")
      ->capture_default_str();
  add_format_flag(dual, opt);

  auto* classify_cmd = app.add_subcommand("classify", "Classify a sequence's boundary limit");
  classify_cmd->add_option("polytope", opt.input, "Polytope JSON file")->required();
  classify_cmd->add_option("sequence", opt.second_input, "Sequence spec JSON file")->required();
  classify_cmd->add_option("-o,--output", opt.output, "Output file (stdout if absent)");
  classify_cmd->add_option("--tol-face", opt.tol_face, "Face incidence tolerance")
      ->capture_default_str();
  classify_cmd->add_option("--horizon", opt.horizon, "Override the sequence horizon N");
  classify_cmd->add_option("--window", opt.params.window, "Tail window length")
      ->capture_default_str();
  classify_cmd->add_option("--tol-p", opt.params.p_tolerance, "Tail diameter allowed for p")
      ->capture_default_str();
  classify_cmd
      ->add_option("--unbounded-threshold", opt.params.unbounded_threshold,
                   "Gauge norm regarded as escaping")
      ->capture_default_str();
  classify_cmd
      ->add_option("--min-final-distance", opt.params.min_final_distance,
                   "Boundary clearance required at the horizon")
      ->capture_default_str();
  classify_cmd
      ->add_option("--min-growth", opt.params.min_growth,
                   "Net growth required over the window")
      ->capture_default_str();
  add_format_flag(classify_cmd, opt);

  auto* map_cmd = app.add_subcommand("map", "Image of an interior point or horofunction");
  map_cmd->add_option("polytope", opt.input, "Polytope JSON file")->required();
  map_cmd->add_option("point", opt.second_input, "Point or horofunction JSON file")->required();
  map_cmd->add_option("-o,--output", opt.output, "Output file (stdout if absent)");
  map_cmd->add_option("--tol-face", opt.tol_face, "Face incidence tolerance")
      ->capture_default_str();
  add_format_flag(map_cmd, opt);

  auto* moment = app.add_subcommand("moment", "Interior map value with softmax weights");
  moment->add_option("polytope", opt.input, "Polytope JSON file")->required();
  moment->add_option("point", opt.second_input, "Point JSON file")->required();
  moment->add_option("-o,--output", opt.output, "Output file (stdout if absent)");
  moment->add_option("--tol-face", opt.tol_face, "Face incidence tolerance")
      ->capture_default_str();
  add_format_flag(moment, opt);

  auto* invert = app.add_subcommand("invert", "Preimage of an interior dual-ball point");
  invert->add_option("polytope", opt.input, "Polytope JSON file")->required();
  invert->add_option("point", opt.second_input, "Target point JSON file")->required();
  invert->add_option("-o,--output", opt.output, "Output file (stdout if absent)");
  invert->add_option("--tol", opt.invert_tol, "Residual tolerance")->capture_default_str();
  invert->add_option("--tol-face", opt.tol_face, "Face incidence tolerance")
      ->capture_default_str();
  add_format_flag(invert, opt);

  auto* gauge = app.add_subcommand("gauge", "Gauge norm of a point");
  gauge->add_option("polytope", opt.input, "Polytope JSON file")->required();
  gauge->add_option("point", opt.second_input, "Point JSON file")->required();
  gauge->add_option("-o,--output", opt.output, "Output file (stdout if absent)");
  gauge->add_option("--tol-face", opt.tol_face, "Face incidence tolerance")
      ->capture_default_str();
  add_format_flag(gauge, opt);

  auto* pseudo = app.add_subcommand("pseudo-norm", "Pseudo-norm over an explicit vertex set");
  pseudo->add_option("vertices", opt.input, "Vertex list JSON file")->required();
  pseudo->add_option("point", opt.second_input, "Point JSON file")->required();
  pseudo->add_option("-o,--output", opt.output, "Output file (stdout if absent)");
  add_format_flag(pseudo, opt);

  auto* demo = app.add_subcommand("demo", "Emit the demo artifact corpus");
  demo->add_option("-o,--out-dir", demo_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
    if (dual->parsed()) cmd_dual(opt);
    if (classify_cmd->parsed()) cmd_classify(opt);
    if (map_cmd->parsed()) cmd_map(opt);
    if (moment->parsed()) cmd_moment(opt);
    if (invert->parsed()) cmd_invert(opt);
    if (gauge->parsed()) cmd_gauge(opt);
    if (pseudo->parsed()) cmd_pseudo_norm(opt);
    if (demo->parsed()) cmd_demo(demo_dir);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "ValidationError: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
