// Acceptance gate: seven end-to-end checks, one PASS/FAIL line each on
// stdout, detail for failures on stderr, exit 1 if anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "horoball/convergence.hpp"
#include "horoball/errors.hpp"
#include "horoball/gauge.hpp"
#include "horoball/geometry.hpp"
#include "horoball/horofunction.hpp"
#include "horoball/moment_map.hpp"
#include "test_support.hpp"

using namespace horoball;
using test_support::face_with_vertices;
using test_support::fresh_rng;
using test_support::interior_point_of;
using test_support::l1_square;
using test_support::random_bounded_polytope;
using test_support::random_vector;
using test_support::vec;
using test_support::vertex_set_distance;

namespace {

struct Criterion {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (notes.size() < 8) notes.push_back(what);
    }
  }
};

int g_failures = 0;

void run(int number, const std::string& description, double budget_seconds,
         const std::function<void(Criterion&)>& body) {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(elapsed < budget_seconds, "runtime budget exceeded");
  std::printf("%s criterion %d: %s [%.2f s]\n", c.ok ? "PASS" : "FAIL", number,
              description.c_str(), elapsed);
  std::fflush(stdout);
  if (!c.ok) {
    ++g_failures;
    for (const auto& note : c.notes)
      std::fprintf(stderr, "  criterion %d: %s\n", number, note.c_str());
  }
}

// ----- criterion bodies ------------------------------------------------

void dual_golden(Criterion& c) {
  auto b = l1_square();
  std::vector<Vector> expected = {vec({-1, -1}), vec({-1, 1}), vec({1, -1}), vec({1, 1})};
  c.expect(vertex_set_distance(b.dual_vertices(), expected) <= 1e-12,
           "dual vertex set deviates from {(+-1,+-1)}");
  c.expect(vertex_set_distance(polar_dual(b).vertices(), expected) <= 1e-12,
           "polar_dual vertex set deviates from {(+-1,+-1)}");
}

void face_correspondence(Criterion& c) {
  auto rng = fresh_rng(0xacc2);
  std::vector<Polytope> corpus;
  corpus.push_back(l1_square());
  for (int i = 0; i < 80; ++i) corpus.push_back(random_bounded_polytope(rng, 2, 16, 100.0));
  for (int i = 0; i < 70; ++i) corpus.push_back(random_bounded_polytope(rng, 3, 16, 100.0));
  for (int i = 0; i < 50; ++i) corpus.push_back(random_bounded_polytope(rng, 4, 10, 100.0));

  for (const auto& p : corpus) {
    const int m = p.dim();
    for (FaceSide side : {FaceSide::primal, FaceSide::dual}) {
      auto faces = side == FaceSide::primal ? p.faces() : p.dual_faces();
      for (const auto& f : faces) {
        const Face e = f.dual();
        c.expect(f.dim() + e.dim() == m - 1, "dimension formula dim F + dim F* = m-1");
        for (const auto& u : e.vertices())
          for (const auto& v : f.vertices())
            c.expect(std::abs(u.dot(v) + 1.0) <= 1e-9, "dual pairing <u|v> = -1");
      }
    }
  }
}

void classification_suite(Criterion& c) {
  auto b = l1_square();
  const auto e2 = face_with_vertices(b, FaceSide::dual, {vec({-1, -1}), vec({-1, 1})});
  const auto e1 = face_with_vertices(b, FaceSide::dual, {vec({-1, -1})});
  auto grid = default_grid(2);

  auto spec = [](SequenceSpec::Kind kind, double a, double b_, double c_, double q) {
    SequenceSpec s;
    s.kind = kind;
    s.a = a;
    s.b = b_;
    s.c = c_;
    s.q = q;
    s.horizon = 1000;
    return s;
  };
  struct Golden {
    SequenceSpec spec;
    Face face;
    Vector p;
    double p_tol;
  };
  std::vector<Golden> golden = {
      {spec(SequenceSpec::Kind::affine, 0, 1, 2, 1), e2, vec({0, 2}), 1e-12},
      {spec(SequenceSpec::Kind::affine, 1, 1, 0, 1), e1, vec({0, 0}), 1e-12},
      {spec(SequenceSpec::Kind::power, 1, 1, 1, -1), e2, vec({0, 0}), 2e-3},
      {spec(SequenceSpec::Kind::logarithm, 2, 1, 1, 1), e1, vec({0, 0}), 1e-12},
  };
  for (const auto& g : golden) {
    auto samples = generate(g.spec);
    auto v = classify_samples(b, samples);
    c.expect(v.kind == ClassificationVerdict::Kind::horofunction,
             "expected a horofunction verdict");
    if (v.kind != ClassificationVerdict::Kind::horofunction) continue;
    c.expect(v.limit->face == g.face, "classified face differs from the golden one");
    c.expect((v.limit->p - g.p).lpNorm<Eigen::Infinity>() <= g.p_tol,
             "classified p differs from the golden value");
    auto residuals = verify_pointwise(b, samples, *v.limit, grid);
    c.expect(residuals.back() <= 1e-2, "pointwise residual at the horizon above 1e-2");
  }

  auto wobble = generate(spec(SequenceSpec::Kind::sinusoid, 0.5, 5, 1, 1));
  auto v = classify_samples(b, wobble);
  c.expect(v.kind == ClassificationVerdict::Kind::inconclusive,
           "oscillating example should be inconclusive");
  // and it stays a positive distance from every nearby candidate limit
  for (const auto& h : {make_horofunction(b, e1, vec({0, 0})),
                        make_horofunction(b, e2, vec({0, 0})),
                        make_horofunction(b, e2, vec({0, 1}))}) {
    auto r = verify_pointwise(b, wobble, h, grid);
    double tail_max = 0;
    for (std::size_t n = r.size() - 200; n < r.size(); ++n)
      tail_max = std::max(tail_max, r[n]);
    c.expect(tail_max >= 0.1, "oscillating example sits too close to a candidate limit");
  }
}

void lf_oracle(Criterion& c) {
  auto rng = fresh_rng(0xacc4);
  int trials = 0;
  for (int i = 0; i < 20; ++i) {
    const int m = 2 + i % 3;
    auto p = random_bounded_polytope(rng, m, 12);
    for (int t = 0; t < 25; ++t) {
      auto e = test_support::random_face(rng, p, FaceSide::dual);
      Vector param = random_vector(rng, m, 2.0);
      Vector y = random_vector(rng, m, 3.0);
      const double via_lf = lf_transform_value(e, param, y);
      const double via_h = horofunction_value(make_horofunction(p, e, param), y);
      c.expect(std::abs(via_lf - via_h) <= 1e-10,
               "conjugate route disagrees with the direct formula");
      ++trials;
    }
  }
  c.expect(trials == 500, "expected 500 trials");
}

void moment_suite(Criterion& c) {
  auto rng = fresh_rng(0xacc5);
  auto b = l1_square();
  std::vector<Vector> corners(b.dual_vertices().begin(), b.dual_vertices().end());

  Matrix j0 = moment_jacobian(corners, vec({0, 0}));
  c.expect((j0 + Matrix::Identity(2, 2)).lpNorm<Eigen::Infinity>() <= 1e-12,
           "Jacobian at the origin is not -I");

  for (int t = 0; t < 100; ++t) {
    const int m = 2 + t % 3;
    auto p = random_bounded_polytope(rng, m, 10);
    std::vector<Vector> dual(p.dual_vertices().begin(), p.dual_vertices().end());
    Vector x = random_vector(rng, m, 1.5);
    Matrix analytic = moment_jacobian(dual, x);
    Matrix fd(m, m);
    const double h = 1e-5;
    for (int k = 0; k < m; ++k) {
      Vector hi = x, lo = x;
      hi[k] += h;
      lo[k] -= h;
      fd.col(k) = (moment_map(dual, hi).point - moment_map(dual, lo).point) / (2 * h);
    }
    c.expect((analytic - fd).lpNorm<Eigen::Infinity>() <= 1e-6,
             "Jacobian disagrees with central differences");
  }

  for (int t = 0; t < 500; ++t) {
    Vector x = random_vector(rng, 2, 4.0);
    Vector y = random_vector(rng, 2, 4.0);
    if ((x - y).lpNorm<Eigen::Infinity>() < 1e-9) continue;
    Vector diff = moment_map(corners, x).point - moment_map(corners, y).point;
    c.expect(diff.dot(y - x) > 0.0, "monotonicity inner product not positive");
  }

  for (int t = 0; t < 50; ++t) {
    Vector x = random_vector(rng, 2, 3.0);
    Vector s = random_vector(rng, 2, 2.0);
    std::vector<Vector> moved;
    for (const auto& v : corners) moved.push_back(v + s);
    c.expect((moment_map(moved, x).point - moment_map(corners, x).point - s)
                     .lpNorm<Eigen::Infinity>() <= 1e-12,
             "shift equivariance beyond 1e-12");
  }

  std::uniform_real_distribution<double> box(-8.0, 8.0);
  int accepted = 0;
  int redraws = 0;
  while (accepted < 100 && redraws < 10000) {
    Vector draw = vec({box(rng), box(rng)});
    Vector y = moment_map(corners, draw).point;
    Vector back;
    try {
      back = invert_moment_map(corners, y, 1e-14);
    } catch (const NotInInterior&) {
      ++redraws;
      continue;
    }
    ++accepted;
    c.expect((back - draw).lpNorm<Eigen::Infinity>() <= 1e-8,
             "inversion round trip above 1e-8");
  }
  c.expect(accepted == 100, "round-trip draw acceptance stalled");
}

void homeomorphism_evidence(Criterion& c) {
  auto b = l1_square();
  auto spec = [](SequenceSpec::Kind kind, double a, double b_, double c_, double q) {
    SequenceSpec s;
    s.kind = kind;
    s.a = a;
    s.b = b_;
    s.c = c_;
    s.q = q;
    s.horizon = 1000;
    return s;
  };
  for (const auto& s : {spec(SequenceSpec::Kind::affine, 0, 1, 2, 1),
                        spec(SequenceSpec::Kind::affine, 1, 1, 0, 1),
                        spec(SequenceSpec::Kind::power, 1, 1, 1, -1),
                        spec(SequenceSpec::Kind::logarithm, 2, 1, 1, 1)}) {
    auto samples = generate(s);
    auto v = classify_samples(b, samples);
    c.expect(v.kind == ClassificationVerdict::Kind::horofunction,
             "expected a horofunction verdict");
    if (v.kind != ClassificationVerdict::Kind::horofunction) continue;
    Vector interior_image = compactification_point(b, CompactifiedPoint{samples.back()});
    Vector limit_image = compactification_point(b, CompactifiedPoint{*v.limit});
    c.expect((interior_image - limit_image).norm() <= 1e-3,
             "image at the horizon does not approach the limit image");
  }

  // strata: interior images, plus boundary images on an 11-point p-grid per
  // face (faces with a trivial parameter space contribute a single image)
  auto rng = fresh_rng(0xacc6);
  std::vector<Vector> images;
  for (int t = 0; t < 100; ++t) {
    Vector img = compactification_point(b, CompactifiedPoint{random_vector(rng, 2, 3.0)});
    c.expect(img.lpNorm<Eigen::Infinity>() < 1.0, "interior image escaped the open dual ball");
    images.push_back(img);
  }
  for (const auto& e : b.dual_faces()) {
    Matrix q = span_basis(e.dual());
    std::vector<Vector> params;
    if (q.cols() < 2) {
      Vector w = vec({-q(1, 0), q(0, 0)});
      for (int i = 0; i < 11; ++i) params.push_back((-5.0 + i) * w);
    } else {
      params.push_back(vec({0, 0}));
    }
    for (const auto& p : params) {
      Vector img = boundary_moment_map(b, e, p);
      c.expect(relative_interior_margin(e.vertices(), img) > 0.0,
               "boundary image misses its face's relative interior");
      c.expect(std::abs(img.lpNorm<Eigen::Infinity>() - 1.0) <= 1e-12,
               "boundary image left the dual sphere");
      images.push_back(img);
    }
  }
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t k = i + 1; k < images.size(); ++k)
      min_gap = std::min(min_gap, (images[i] - images[k]).norm());
  c.expect(min_gap > 0.0, "two stratum images coincide");
}

void lemma_suites(Criterion& c) {
  auto rng = fresh_rng(0xacc7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // facet-cone identity: on the closed cone over a facet containing F, the
  // face pseudo-norm agrees with the gauge
  for (int t = 0; t < 200; ++t) {
    const int m = 2 + t % 3;
    auto p = random_bounded_polytope(rng, m, 12);
    auto f = test_support::random_face(rng, p, FaceSide::primal);
    std::optional<Face> facet;
    for (const auto& g : p.faces()) {
      if (g.dim() != m - 1) continue;
      const auto& sup = g.vertex_indices();
      bool contains = true;
      for (int idx : f.vertex_indices())
        if (std::find(sup.begin(), sup.end(), idx) == sup.end()) contains = false;
      if (contains) {
        facet = g;
        break;
      }
    }
    if (!facet) {
      c.expect(false, "face without an enclosing facet");
      continue;
    }
    std::vector<Vector> e_verts = f.dual().vertices();
    const double scale = 1.0 + 9.0 * unit(rng);
    Vector w = (1.0 - 0.3 * unit(rng)) * (scale * interior_point_of(rng, f)) +
               0.3 * unit(rng) * (scale * interior_point_of(rng, *facet));
    c.expect(std::abs(pseudo_norm(e_verts, w) - gauge_norm(p, w)) <= 1e-9 * (1 + scale),
             "pseudo-norm vs gauge on the facet cone");
  }

  // split identity: |x + q|_E = |x| + |q|_E for x in the cone over F
  for (int t = 0; t < 200; ++t) {
    const int m = 2 + t % 3;
    auto p = random_bounded_polytope(rng, m, 12);
    auto f = test_support::random_face(rng, p, FaceSide::primal);
    std::vector<Vector> e_verts = f.dual().vertices();
    const double scale = 1.0 + 9.0 * unit(rng);
    Vector x = scale * interior_point_of(rng, f);
    Vector q = random_vector(rng, m, 2.0);
    c.expect(std::abs(pseudo_norm(e_verts, x + q) -
                      (gauge_norm(p, x) + pseudo_norm(e_verts, q))) <=
                 1e-9 * (1 + scale),
             "split identity for the face pseudo-norm");
  }

  // p-reduction invariance of the horofunction values
  for (int t = 0; t < 200; ++t) {
    const int m = 2 + t % 3;
    auto p = random_bounded_polytope(rng, m, 12);
    auto e = test_support::random_face(rng, p, FaceSide::dual);
    auto everts = e.vertices();
    Vector raw = random_vector(rng, m, 3.0);
    Vector red = reduce_p(e, raw);
    Vector y = random_vector(rng, m, 3.0);
    c.expect(std::abs(horofunction_value(everts, raw, y) -
                      horofunction_value(everts, red, y)) <= 1e-10,
             "value changed under p reduction");
  }

  // shift identity: moving the face by t tilts the horofunction by <t|y>
  for (int t = 0; t < 200; ++t) {
    const int m = 2 + t % 3;
    auto p = random_bounded_polytope(rng, m, 12);
    auto e = test_support::random_face(rng, p, FaceSide::dual);
    auto everts = e.vertices();
    Vector shift = random_vector(rng, m, 2.0);
    std::vector<Vector> moved;
    for (const auto& v : everts) moved.push_back(v + shift);
    Vector param = random_vector(rng, m, 2.0);
    Vector y = random_vector(rng, m, 3.0);
    c.expect(std::abs(horofunction_value(moved, param, y) -
                      (horofunction_value(everts, param, y) + shift.dot(y))) <= 1e-10,
             "shifted-face identity");
  }

  // distinct boundary points are separated by a witness
  for (int t = 0; t < 200; ++t) {
    const int m = 2 + t % 3;
    auto p = random_bounded_polytope(rng, m, 12);
    auto h1 = make_horofunction(p, test_support::random_face(rng, p, FaceSide::dual),
                                random_vector(rng, m, 2.0));
    auto h2 = make_horofunction(p, test_support::random_face(rng, p, FaceSide::dual),
                                random_vector(rng, m, 2.0));
    const bool same =
        h1.face == h2.face && (h1.p - h2.p).lpNorm<Eigen::Infinity>() <= 1e-9;
    auto w = distinguishing_witness(h1, h2);
    if (same) {
      c.expect(!w.has_value(), "witness reported for identical boundary points");
    } else {
      c.expect(w.has_value(), "no witness between distinct boundary points");
      if (w)
        c.expect(std::abs(horofunction_value(h1, *w) - horofunction_value(h2, *w)) > 1e-6,
                 "witness gap too small");
    }
  }

  // pairing at infinity: along rays into the cone over F, vertices of the
  // dual face stay level while all others fall behind linearly
  for (int t = 0; t < 200; ++t) {
    const int m = 2 + t % 3;
    auto p = random_bounded_polytope(rng, m, 12);
    auto f = test_support::random_face(rng, p, FaceSide::primal);
    auto e = f.dual();
    const auto& in_e = e.vertex_indices();
    Vector f0 = interior_point_of(rng, f);
    const Vector c_e = e.vertices().front();
    for (std::size_t j = 0; j < p.dual_vertices().size(); ++j) {
      const bool member =
          std::find(in_e.begin(), in_e.end(), static_cast<int>(j)) != in_e.end();
      double prev = 0.0;
      for (double n : {1.0, 10.0, 100.0, 1000.0}) {
        const double val = (c_e - p.dual_vertices()[j]).dot(n * f0);
        if (member) {
          c.expect(std::abs(val) <= 1e-9 * (1 + n), "dual-face vertex drifted off level");
        } else {
          c.expect(val < 0.0, "outside vertex not strictly behind");
          c.expect(val < prev, "outside vertex not falling behind monotonically");
          prev = val;
        }
      }
    }
  }
}

}  // namespace

int main() {
  run(1, "polar dual of the L1 square hits the golden vertex set", 1.0, dual_golden);
  run(2, "face duality: dimension formula and -1 pairing on 200 random polytopes", 30.0,
      face_correspondence);
  run(3, "classifier reproduces the five reference verdicts with sound residuals", 10.0,
      classification_suite);
  run(4, "conjugate-form oracle matches horofunction values on 500 draws", 10.0,
      lf_oracle);
  run(5, "moment map: Jacobian, monotonicity, equivariance, inversion round trip", 30.0,
      moment_suite);
  run(6, "compactified images converge to limit images and strata stay disjoint", 10.0,
      homeomorphism_evidence);
  run(7, "six boundary-calculus identities pass 200 randomized trials each", 60.0,
      lemma_suites);

  if (g_failures == 0) {
    std::printf("all 7 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
