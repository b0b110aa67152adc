#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace recip;
using namespace fixtures;

namespace {

// chi~ straight from the cells: every cell is a ball, the empty face counts -1.
long euler_from_faces(const PolyhedralComplex& K) {
  if (K.is_void()) return 0;
  long chi = -1;
  for (const auto& f : K.faces()) chi += (f.dim % 2) ? -1 : 1;
  return chi;
}

std::vector<PolyhedralComplex> sample_complexes() {
  std::vector<PolyhedralComplex> out;
  std::mt19937_64 rng(17);
  for (int t = 0; t < 12; ++t) {
    auto P = random_polytope(rng, 3, 3, 6);
    std::uniform_int_distribution<IndexSet> pick(0, all_bits(P.facets().size()));
    out.push_back(facet_subcomplex(P, pick(rng)));
    out.push_back(boundary_complex(P));
  }
  auto c4 = unit_cube(4);
  out.push_back(facet_subcomplex(c4, solid_torus(c4)));
  out.push_back(boundary_complex(c4));
  auto py = pyramid();
  out.push_back(facet_subcomplex(py, pyramid_triangles(py)));
  return out;
}

}  // namespace

TEST(OrderComplex, SmallCases) {
  auto seg = order_complex(full_complex(segment()));
  std::size_t v = 0, e = 0;
  for (const auto& s : seg.simplices) (s.size() == 1 ? v : e) += 1;
  EXPECT_EQ(v, 3u);
  EXPECT_EQ(e, 2u);
  auto tri = order_complex(boundary_complex(triangle()));
  v = e = 0;
  for (const auto& s : tri.simplices) (s.size() == 1 ? v : e) += 1;
  EXPECT_EQ(v, 6u);
  EXPECT_EQ(e, 6u);
  auto none = order_complex(PolyhedralComplex::void_complex(face_universe(square())));
  EXPECT_TRUE(none.simplices.empty());
}

TEST(ReducedHomology, Circle) {
  auto h = reduced_homology(SimplicialComplex::generated_by({{0, 1}, {1, 2}, {0, 2}}));
  EXPECT_TRUE(h.degree(0).trivial());
  EXPECT_TRUE(h.degree(1).is_z());
}

TEST(ReducedHomology, TwoPoints) {
  auto h = reduced_homology(SimplicialComplex::generated_by({{0}, {1}}));
  EXPECT_TRUE(h.degree(0).is_z());
}

TEST(ReducedHomology, ProjectivePlaneTorsion) {
  auto rp2 = SimplicialComplex::generated_by({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                                              {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}});
  auto h = reduced_homology(rp2);
  EXPECT_TRUE(h.degree(0).trivial());
  EXPECT_EQ(h.degree(1).free_rank, 0u);
  EXPECT_EQ(h.degree(1).torsion, (std::vector<Integer>{2}));
  EXPECT_TRUE(h.degree(2).trivial());
  EXPECT_EQ(h.degree(1).to_string(), "Z/2");
}

TEST(ReducedHomology, SolidTorusBoundaryTorus) {
  auto P = unit_cube(4);
  auto K = boundary_complex(P);
  auto S1 = facet_subcomplex(P, solid_torus(P), K.universe());
  auto S2 = facet_subcomplex(P, all_bits(P.facets().size()) & ~solid_torus(P), K.universe());
  std::vector<CellFace> both;
  for (const auto& f : S1.faces())
    if (S2.contains(f.vertices)) both.push_back(f);
  auto h = reduced_homology(PolyhedralComplex(K.universe(), both, true));
  EXPECT_TRUE(h.degree(0).trivial());
  EXPECT_EQ(h.degree(1).free_rank, 2u);
  EXPECT_TRUE(h.degree(1).torsion.empty());
  EXPECT_TRUE(h.degree(2).is_z());
}

TEST(ReducedEuler, Cases) {
  EXPECT_EQ(reduced_euler_char(PolyhedralComplex::void_complex(face_universe(square()))), 0);
  EXPECT_EQ(reduced_euler_char(boundary_complex(square())), -1);
  auto seg = segment();
  auto u = face_universe(seg);
  EXPECT_EQ(reduced_euler_char(PolyhedralComplex::closure(u, {bit(0)})), 0);
  EXPECT_EQ(reduced_euler_char(boundary_complex(seg)), 1);
}

TEST(ReducedEuler, EulerPoincare) {
  for (const auto& K : sample_complexes()) {
    EXPECT_EQ(reduced_euler_char(K), euler_from_faces(K));
    if (!K.is_void()) { EXPECT_EQ(reduced_homology(K).euler_characteristic(), euler_from_faces(K)); }
  }
}

TEST(CMStatus, PyramidTriangles) {
  auto P = pyramid();
  auto s = cm_status(facet_subcomplex(P, pyramid_triangles(P)));
  EXPECT_EQ(s.value, CMStatus::Value::NotWeaklyCM);
  ASSERT_TRUE(s.witness && s.witness->face);
  EXPECT_EQ(s.witness->face->vertices, mask_of(P, {{1, 1, 1}}));
  EXPECT_EQ(s.witness->degree, 0);
  EXPECT_TRUE(s.witness->group.is_z());
}

TEST(CMStatus, SolidTorusIsWeaklyCMOnly) {
  auto P = unit_cube(4);
  for (IndexSet S : {solid_torus(P), all_bits(8) & ~solid_torus(P)}) {
    auto s = cm_status(facet_subcomplex(P, S));
    EXPECT_EQ(s.value, CMStatus::Value::WeaklyCM);
    ASSERT_TRUE(s.witness);
    EXPECT_FALSE(s.witness->face);
    EXPECT_EQ(s.witness->degree, 1);
    EXPECT_TRUE(s.witness->group.is_z());
  }
}

TEST(CMStatus, BrightSidesAreCM) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> q(-20, 28);
  int tested = 0;
  while (tested < 25) {
    auto P = random_polytope(rng, 2 + tested % 2);
    RatVector light(P.ambient_dim());
    for (auto& x : light) x = make_rational(q(rng), 3);
    if (P.contains(light)) continue;
    bool generic = std::none_of(P.facets().begin(), P.facets().end(), [&](const Halfspace& h) { return h.slack(light) == 0; });
    if (!generic) continue;
    ++tested;
    EXPECT_TRUE(cm_status(facet_subcomplex(P, bright_side(P, light))).cm());
  }
}

// Re-derive the status from homology and check CM implies weakly CM.
TEST(CMStatus, AgreesWithHomologyRederivation) {
  for (const auto& K : sample_complexes()) {
    if (K.empty()) continue;
    auto s = cm_status(K);
    bool wcm = K.pure();
    for (const auto& f : K.faces()) {
      auto L = link_order_complex(K, f.vertices);
      auto h = reduced_homology(L);
      for (int i = 0; i < L.dim(); ++i) wcm = wcm && h.degree(i).trivial();
    }
    bool cm = wcm;
    auto h = reduced_homology(K);
    for (int i = 0; i < K.dim(); ++i) cm = cm && h.degree(i).trivial();
    EXPECT_EQ(s.weakly_cm(), wcm);
    EXPECT_EQ(s.cm(), cm);
    if (s.cm()) { EXPECT_TRUE(s.weakly_cm()); }
  }
}

TEST(Manifold, Cases) {
  EXPECT_EQ(homology_manifold_status(boundary_complex(unit_cube(4))).status, ManifoldStatus::WithoutBoundary);
  auto c4 = unit_cube(4);
  EXPECT_EQ(homology_manifold_status(facet_subcomplex(c4, solid_torus(c4))).status, ManifoldStatus::WithBoundary);
  auto py = pyramid();
  auto r = homology_manifold_status(facet_subcomplex(py, pyramid_triangles(py)));
  EXPECT_EQ(r.status, ManifoldStatus::No);
  EXPECT_TRUE(r.witness);
}

TEST(Manifold, PolytopeBoundariesAreSpheres) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 15; ++t) {
    auto P = random_polytope(rng, 2 + t % 3, 3, 7);
    EXPECT_EQ(homology_manifold_status(boundary_complex(P)).status, ManifoldStatus::WithoutBoundary);
    EXPECT_TRUE(reduced_homology(boundary_complex(P)).is_sphere(P.dim() - 1));
  }
}

namespace {

// For a full-dimensional weakly CM Δ in B(P): H~_k(lk_Δ F) = Z exactly when
// F is interior and dim F = d - k - 2.
void expect_link_spheres(const Polytope& P, IndexSet facets) {
  auto K = boundary_complex(P);
  auto D = facet_subcomplex(P, facets, K.universe());
  ASSERT_TRUE(cm_status(D).weakly_cm());
  auto cls = classify_faces(K, D);
  const int d = P.dim();
  for (const auto& F : D.faces()) {
    bool interior = std::find(cls.interior.begin(), cls.interior.end(), F) != cls.interior.end();
    auto h = reduced_homology(link_order_complex(D, F.vertices));
    for (int k = -1; k <= d; ++k) {
      bool z = interior && F.dim == d - k - 2;
      if (z) EXPECT_TRUE(h.degree(k).is_z()) << "face dim " << F.dim << " degree " << k;
      else EXPECT_TRUE(h.degree(k).trivial()) << "face dim " << F.dim << " degree " << k;
    }
  }
}

}  // namespace

TEST(LinkSpheres, SolidTorus) {
  auto P = unit_cube(4);
  expect_link_spheres(P, solid_torus(P));
  expect_link_spheres(P, all_bits(8) & ~solid_torus(P));
}

TEST(LinkSpheres, BrightSides) {
  expect_link_spheres(square(), bright_side(square(), {2, 2}));
  expect_link_spheres(unit_cube(3), bright_side(unit_cube(3), {2, 2, 2}));
  expect_link_spheres(triangle(), bright_side(triangle(), {3, 3}));
  auto hex = hull_facets({{1, 0}, {2, 0}, {3, 1}, {2, 2}, {1, 2}, {0, 1}});
  expect_link_spheres(hex, bright_side(hex, {5, 1}));
}
