#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace recip;
using namespace fixtures;

namespace {

std::int64_t ip(const IntVector& a, const IntVector& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Affine rank of a point set: rank of the differences to the first point.
std::size_t affine_rank(const std::vector<IntVector>& pts) {
  std::vector<IntVector> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    IntVector d(pts[i].size());
    for (std::size_t c = 0; c < d.size(); ++c) d[c] = pts[i][c] - pts[0][c];
    diffs.push_back(d);
  }
  return diffs.empty() ? 0 : rank(diffs);
}

}  // namespace

// Random point clouds: facets are valid and supported, vertices are extreme,
// and every generic linear functional is maximized at a reported vertex.
TEST(Hull, RandomRoundTrip) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::int64_t> coord(-3, 3), fn(-1000, 1000);
  for (int t = 0; t < 60; ++t) {
    const std::size_t d = 2 + t % 3;
    std::vector<IntVector> pts;
    for (std::size_t i = 0; i < d + 4; ++i) {
      IntVector v(d);
      for (auto& c : v) c = coord(rng);
      pts.push_back(v);
    }
    auto P = hull_facets(pts);
    if (!P.full_dimensional()) continue;
    for (std::size_t i = 0; i < P.facets().size(); ++i) {
      const auto& h = P.facets()[i];
      std::vector<IntVector> on;
      for (const auto& p : pts) {
        EXPECT_LE(ip(h.normal, p), h.offset);
        if (ip(h.normal, p) == h.offset) on.push_back(p);
      }
      EXPECT_EQ(affine_rank(on), d - 1) << "facet " << i << " is not supported";
    }
    for (const auto& v : P.vertices()) {
      EXPECT_NE(std::find(pts.begin(), pts.end(), v), pts.end());
      EXPECT_EQ(static_cast<std::size_t>(P.face_from_vertices(P.vertices_on(P.tight_facets(to_rational(v)))).dim), 0u);
    }
    for (int k = 0; k < 20; ++k) {
      IntVector c(d);
      for (auto& x : c) x = fn(rng);
      std::int64_t best = ip(c, pts[0]);
      for (const auto& p : pts) best = std::max(best, ip(c, p));
      std::int64_t vbest = ip(c, P.vertices()[0]);
      for (const auto& v : P.vertices()) vbest = std::max(vbest, ip(c, v));
      EXPECT_EQ(best, vbest);
    }
    // Re-hulling the vertices reproduces the same canonical polytope.
    auto Q = hull_facets(P.vertices());
    EXPECT_EQ(Q.vertices(), P.vertices());
    ASSERT_EQ(Q.facets().size(), P.facets().size());
    for (std::size_t i = 0; i < Q.facets().size(); ++i) {
      EXPECT_EQ(Q.facets()[i].normal, P.facets()[i].normal);
      EXPECT_EQ(Q.facets()[i].offset, P.facets()[i].offset);
    }
    // Euler relation on the f-vector.
    auto f = face_lattice(P).f_vector();
    long chi = 0;
    for (std::size_t i = 0; i < d; ++i) chi += (i % 2 ? -1 : 1) * f[i];
    EXPECT_EQ(chi, d % 2 ? 2 : 0);
  }
}

// Membership in a simplex against barycentric coordinates.
TEST(Hull, SimplexMembershipMatchesBarycentric) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> coord(-4, 4);
  std::uniform_int_distribution<long> num(-12, 12), den(1, 4);
  int checked = 0;
  while (checked < 30) {
    std::vector<IntVector> vs;
    for (int i = 0; i < 4; ++i) vs.push_back({coord(rng), coord(rng), coord(rng)});
    if (affine_rank(vs) != 3) continue;
    auto P = hull_facets(vs);
    ++checked;
    for (int k = 0; k < 50; ++k) {
      RatVector p = {make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng))};
      // p = sum l_i v_i with sum l_i = 1
      RatMatrix a(4, RatVector(4));
      for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < 4; ++i) a[c][i] = vs[i][c];
      for (std::size_t i = 0; i < 4; ++i) a[3][i] = 1;
      auto l = solve_linear(a, {p[0], p[1], p[2], 1});
      ASSERT_TRUE(l);
      bool inside = std::all_of(l->begin(), l->end(), [](const Rational& x) { return x >= 0; });
      bool strict = std::all_of(l->begin(), l->end(), [](const Rational& x) { return x > 0; });
      EXPECT_EQ(P.contains(p), inside);
      EXPECT_EQ(P.contains_relint(p), strict);
    }
  }
}

TEST(Hull, CubeFaceLattice) {
  EXPECT_EQ(face_lattice(unit_cube(4)).f_vector(), (std::vector<int>{16, 32, 24, 8, 1}));
  EXPECT_EQ(face_lattice(unit_cube(3)).f_vector(), (std::vector<int>{8, 12, 6, 1}));
}

TEST(Hull, LowerDimensionalPolytope) {
  auto P = hull_facets({{0, 0, 0}, {1, 1, 0}, {2, 2, 0}, {0, 0, 0}});
  EXPECT_EQ(P.dim(), 1);
  EXPECT_EQ(P.vertices().size(), 2u);
  EXPECT_TRUE(P.contains({1, 1, 0}));
  EXPECT_FALSE(P.contains({1, 0, 0}));
}

// A facet is visible from q when points just off its centroid towards q leave P.
TEST(BrightSide, MatchesSegmentVisibility) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> q(-9, 15);
  for (int t = 0; t < 20; ++t) {
    auto P = random_polytope(rng, 2 + t % 2);
    RatVector light(P.ambient_dim());
    for (auto& x : light) x = make_rational(q(rng), 2);
    IndexSet bright = bright_side(P, light);
    for (std::size_t i = 0; i < P.facets().size(); ++i) {
      auto vs = indices_of(P.facet_vertices(i));
      RatVector c(P.ambient_dim());
      for (auto v : vs)
        for (std::size_t k = 0; k < c.size(); ++k) c[k] += make_rational(to_integer(P.vertices()[v][k]), static_cast<long>(vs.size()));
      RatVector near(c.size());
      for (std::size_t k = 0; k < c.size(); ++k) near[k] = c[k] + (light[k] - c[k]) / 1000000;
      bool visible = !P.contains(near);
      if (P.facets()[i].slack(light) == 0) visible = false;  // q on the facet hyperplane
      EXPECT_EQ(static_cast<bool>(bright & bit(i)), visible) << "facet " << i;
    }
  }
}

TEST(BrightSide, SpecInstances) {
  EXPECT_EQ(bright_side(square(), {make_rational(1, 2), make_rational(1, 2)}), 0u);
  EXPECT_EQ(count(bright_side(square(), {2, 2})), 2);
  EXPECT_EQ(count(bright_side(unit_cube(3), {2, 2, 2})), 3);
  EXPECT_THROW(bright_side(square(), {1}), InputError);
}

TEST(TangentCone, ContainsPolytopeAndInvertsToNegation) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    auto P = random_polytope(rng, 3);
    auto L = face_lattice(P);
    for (const auto& F : L.faces) {
      if (F.dim < 0 || F.dim == P.dim()) continue;
      auto T = tangent_cone(P, F);
      auto Ti = tangent_cone(P, F, true);
      for (const auto& v : P.vertices()) {
        EXPECT_TRUE(T.contains(to_rational(v)));
        // reflect v through the apex of the face cone
        IntVector r(v.size());
        for (std::size_t k = 0; k < v.size(); ++k) r[k] = 2 * T.apex()[k] - v[k];
        EXPECT_TRUE(Ti.contains(to_rational(r)));
      }
      EXPECT_EQ(T.pointed(), F.dim == 0);
    }
  }
}

TEST(Cone, HomogenizationRaysAreVertices) {
  auto P = triangle();
  auto C = homogenize(P);
  ASSERT_EQ(C.generators().size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    IntVector g = P.vertices()[i];
    g.push_back(1);
    EXPECT_EQ(C.generators()[i], primitive(g));
  }
  EXPECT_TRUE(C.pointed());
  EXPECT_EQ(C.dim(), 3);
}

TEST(Cone, FaceOfPoint) {
  auto C = square_cone();
  auto f = face_of_point(C, {0, 0, 5});
  ASSERT_TRUE(f);
  EXPECT_EQ(f->dim, 1);
  auto apex = face_of_point(C, {0, 0, 0});
  ASSERT_TRUE(apex);
  EXPECT_EQ(apex->rays, 0u);
  EXPECT_FALSE(face_of_point(C, {-1, 0, 1}));
  auto g = face_of_point(square(), {make_rational(1, 2), 0});
  ASSERT_TRUE(g);
  EXPECT_EQ(g->dim, 1);
}
