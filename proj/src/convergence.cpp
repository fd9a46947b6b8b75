#include "horoball/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "horoball/errors.hpp"
#include "horoball/gauge.hpp"

namespace horoball {

double ScalarGenerator::operator()(int n) const {
  switch (kind) {
    case Kind::constant:
      return c;
    case Kind::affine:
      return a * n + c;
    case Kind::power:
      return c * std::pow(static_cast<double>(n), q);
    case Kind::logarithm: {
      double arg = a * n;
      if (arg <= 0.0) {
        std::ostringstream msg;
        msg << "logarithm of nonpositive argument at n=" << n;
        throw EvalError(msg.str());
      }
      return c * std::log(arg);
    }
    case Kind::sinusoid:
      return a * std::sin(b * n) + c;
  }
  throw EvalError("unknown scalar generator kind");
}

std::vector<Vector> generate(const SequenceSpec& spec) {
  if (spec.kind == SequenceSpec::Kind::explicit_samples) {
    if (spec.samples.empty()) throw EvalError("explicit sequence has no samples");
    return spec.samples;
  }
  if (spec.horizon < 1) throw EvalError("horizon must be at least 1");

  std::vector<ScalarGenerator> coords;
  if (spec.kind == SequenceSpec::Kind::expr) {
    if (spec.coords.empty()) throw EvalError("expr sequence has no coordinate generators");
    coords = spec.coords;
  } else {
    ScalarGenerator first;  // the running coordinate n itself
    first.kind = ScalarGenerator::Kind::affine;
    first.a = 1.0;
    first.c = 0.0;
    ScalarGenerator second;
    second.a = spec.a;
    second.b = spec.b;
    second.c = spec.c;
    second.q = spec.q;
    switch (spec.kind) {
      case SequenceSpec::Kind::affine:
        second.kind = ScalarGenerator::Kind::affine;
        break;
      case SequenceSpec::Kind::power:
        second.kind = ScalarGenerator::Kind::power;
        break;
      case SequenceSpec::Kind::logarithm:
        second.kind = ScalarGenerator::Kind::logarithm;
        break;
      case SequenceSpec::Kind::sinusoid:
        second.kind = ScalarGenerator::Kind::sinusoid;
        break;
      default:
        throw EvalError("unknown sequence kind");
    }
    coords = {first, second};
  }

  std::vector<Vector> out;
  out.reserve(spec.horizon);
  for (int n = 1; n <= spec.horizon; ++n) {
    Vector z(coords.size());
    for (std::size_t k = 0; k < coords.size(); ++k) z[k] = coords[k](n);
    out.push_back(std::move(z));
  }
  return out;
}

ConditionReport check_conditions(const Polytope& unit_ball, const Face& face,
                                 std::span<const Vector> samples,
                                 const ClassifierParams& params) {
  if (samples.empty()) throw EvalError("no samples to check");
  const int n = static_cast<int>(samples.size());
  const int w = std::min(params.window, n - 1);
  const int begin = n - 1 - w;

  ConditionReport rep;
  rep.face = face;
  rep.window_begin = begin + 1;
  rep.window_end = n;

  // (0) escaping to infinity
  double max_norm = -std::numeric_limits<double>::infinity();
  for (int i = begin; i < n; ++i)
    max_norm = std::max(max_norm, gauge_norm(unit_ball, samples[i]));
  rep.max_tail_norm = max_norm;
  rep.norm_growth =
      gauge_norm(unit_ball, samples[n - 1]) - gauge_norm(unit_ball, samples[begin]);
  rep.unbounded =
      max_norm >= params.unbounded_threshold && rep.norm_growth >= params.min_growth;

  // Split each tail sample against V(F).
  Matrix q = span_basis(face);
  const bool full_span = q.cols() == unit_ball.dim();
  std::vector<Vector> part_f, part_perp;
  part_f.reserve(w + 1);
  part_perp.reserve(w + 1);
  for (int i = begin; i < n; ++i) {
    if (full_span) {
      part_f.push_back(samples[i]);
      part_perp.push_back(Vector::Zero(samples[i].size()));
    } else {
      Vector xf = q * (q.transpose() * samples[i]);
      part_f.push_back(xf);
      part_perp.push_back(samples[i] - xf);
    }
  }

  // (i) + distances for (ii)
  rep.in_cone = true;
  std::vector<double> dist(part_f.size());
  for (std::size_t i = 0; i < part_f.size(); ++i) {
    auto res = cone_query(face, part_f[i]);
    if (!res.inside) rep.in_cone = false;
    dist[i] = res.rel_boundary_distance;
  }

  // (ii) clearance from the cone's relative boundary keeps growing
  rep.first_distance = dist.front();
  rep.final_distance = dist.back();
  rep.distance_growth_amount = dist.back() - dist.front();
  double min_step = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < dist.size(); ++i)
    min_step = std::min(min_step, dist[i] - dist[i - 1]);
  rep.min_distance_step = dist.size() > 1 ? min_step : 0.0;
  rep.distance_growth = rep.min_distance_step >= -params.p_tolerance &&
                        rep.distance_growth_amount >= params.min_growth &&
                        rep.final_distance >= params.min_final_distance;

  // (iii) the perpendicular part settles
  double diameter = 0.0;
  for (std::size_t i = 0; i < part_perp.size(); ++i)
    for (std::size_t j = i + 1; j < part_perp.size(); ++j)
      diameter = std::max(diameter, (part_perp[i] - part_perp[j]).norm());
  rep.p_residual = diameter;
  rep.p_converged = diameter <= params.p_tolerance;
  if (rep.p_converged) {
    Vector mean = Vector::Zero(unit_ball.dim());
    for (const auto& v : part_perp) mean += v;
    mean /= static_cast<double>(part_perp.size());
    rep.p_limit = reduce_p(face.dual(), mean);
  }
  return rep;
}

ClassificationVerdict classify_samples(const Polytope& unit_ball,
                                       std::span<const Vector> samples,
                                       const ClassifierParams& params) {
  if (samples.empty()) throw EvalError("no samples to classify");
  for (const auto& z : samples)
    if (z.size() != unit_ball.dim())
      throw ValidationError("sample dimension does not match the unit ball");

  ClassificationVerdict verdict;
  const int n = static_cast<int>(samples.size());
  const int w = std::min(params.window, n - 1);
  double max_tail = -std::numeric_limits<double>::infinity();
  for (int i = n - 1 - w; i < n; ++i)
    max_tail = std::max(max_tail, gauge_norm(unit_ball, samples[i]));
  if (max_tail < params.unbounded_threshold) {
    verdict.kind = ClassificationVerdict::Kind::bounded;
    std::ostringstream msg;
    msg << "tail gauge norms stay below " << params.unbounded_threshold << " (max "
        << max_tail << "); sequence treated as bounded";
    verdict.diagnostics.push_back(msg.str());
    return verdict;
  }

  std::vector<const ConditionReport*> passers;
  for (const auto& face : unit_ball.faces()) {
    verdict.reports.push_back(check_conditions(unit_ball, face, samples, params));
  }
  for (const auto& rep : verdict.reports) {
    std::ostringstream line;
    line << "face " << rep.face.index() << " (dim " << rep.face.dim() << ", vertices {";
    for (std::size_t k = 0; k < rep.face.vertex_indices().size(); ++k) {
      if (k) line << ",";
      line << rep.face.vertex_indices()[k];
    }
    line << "}): unbounded=" << (rep.unbounded ? "yes" : "no")
         << " in_cone=" << (rep.in_cone ? "yes" : "no")
         << " clearance=" << (rep.distance_growth ? "yes" : "no") << " (final "
         << rep.final_distance << ", growth " << rep.distance_growth_amount << ")"
         << " p_settled=" << (rep.p_converged ? "yes" : "no") << " (residual "
         << rep.p_residual << ")";
    verdict.diagnostics.push_back(line.str());
    if (rep.all_passed()) passers.push_back(&rep);
  }

  if (passers.empty()) {
    verdict.kind = ClassificationVerdict::Kind::inconclusive;
    verdict.diagnostics.push_back("no face passes all conditions; inconclusive");
    return verdict;
  }
  // Prefer the smallest face, then the sharpest p-estimate.
  std::sort(passers.begin(), passers.end(),
            [](const ConditionReport* x, const ConditionReport* y) {
              if (x->face.dim() != y->face.dim()) return x->face.dim() < y->face.dim();
              if (x->p_residual != y->p_residual) return x->p_residual < y->p_residual;
              return x->face.index() < y->face.index();
            });
  if (passers.size() > 1) {
    std::ostringstream msg;
    msg << passers.size() << " faces pass; preferring the smallest dimension and residual";
    verdict.diagnostics.push_back(msg.str());
  }
  const ConditionReport& best = *passers.front();
  verdict.kind = ClassificationVerdict::Kind::horofunction;
  verdict.limit = make_horofunction(unit_ball, best.face.dual(), *best.p_limit);
  std::ostringstream msg;
  msg << "limit horofunction over dual face " << best.face.dual().index() << " (dim "
      << best.face.dual().dim() << ")";
  verdict.diagnostics.push_back(msg.str());
  return verdict;
}

ClassificationVerdict classify(const Polytope& unit_ball, const SequenceSpec& spec,
                               const ClassifierParams& params) {
  auto samples = generate(spec);
  return classify_samples(unit_ball, samples, params);
}

std::vector<double> verify_pointwise(const Polytope& unit_ball,
                                     std::span<const Vector> samples,
                                     const Horofunction& h, std::span<const Vector> grid) {
  std::vector<double> out;
  out.reserve(samples.size());
  auto verts = h.face.vertices();
  for (const auto& z : samples) {
    double worst = 0.0;
    for (const auto& y : grid) {
      double r = std::abs(psi_value(unit_ball, z, y) - horofunction_value(verts, h.p, y));
      worst = std::max(worst, r);
    }
    out.push_back(worst);
  }
  return out;
}

std::vector<Vector> default_grid(int dim) {
  std::vector<Vector> grid;
  if (dim == 2) {
    for (int i = -2; i <= 2; ++i)
      for (int j = -2; j <= 2; ++j) {
        Vector y(2);
        y << i, j;
        grid.push_back(y);
      }
    return grid;
  }
  // Deterministic low-discrepancy-ish cloud for other dimensions.
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state % 40001) / 10000.0 - 2.0;  // [-2, 2]
  };
  for (int k = 0; k < 25; ++k) {
    Vector y(dim);
    for (int d = 0; d < dim; ++d) y[d] = next();
    grid.push_back(y);
  }
  return grid;
}

}  // namespace horoball
