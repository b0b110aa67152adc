#pragma once

// Lattice polytopes and pointed cones: V-to-H conversion, face lattices,
// tangent cones, homogenization and light-source visibility.

#include <recip/exact_math.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace recip {

/// Bitmask over vertex, ray or facet indices. Desk-scale objects have at most
/// 64 of each.
using IndexSet = std::uint64_t;
inline constexpr std::size_t kMaxIndex = 64;

inline int count(IndexSet s) { return std::popcount(s); }
inline bool is_subset(IndexSet inner, IndexSet outer) { return (inner & ~outer) == 0; }
inline IndexSet bit(std::size_t i) { return IndexSet{1} << i; }
inline IndexSet all_bits(std::size_t n) { return n >= 64 ? ~IndexSet{0} : bit(n) - 1; }
/// True when s names an index >= n.
inline bool exceeds(IndexSet s, std::size_t n) { return (s & ~all_bits(n)) != 0; }

inline std::vector<std::size_t> indices_of(IndexSet s) {
  std::vector<std::size_t> out;
  while (s) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

inline IndexSet to_index_set(const std::vector<std::size_t>& idx, std::size_t limit) {
  IndexSet s = 0;
  for (auto i : idx) {
    if (i >= limit) throw InputError("index " + std::to_string(i) + " out of range (" + std::to_string(limit) + ")");
    s |= bit(i);
  }
  return s;
}

/// The closed halfspace <normal, x> <= offset (or the hyperplane, when used
/// as an equation).
struct Halfspace {
  IntVector normal;
  std::int64_t offset = 0;

  Rational slack(const RatVector& p) const { return to_rational(offset) - dot(normal, p); }
  std::int64_t value(const IntVector& p) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += normal[i] * p[i];
    return s;
  }
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
  friend auto operator<=>(const Halfspace&, const Halfspace&) = default;
};

struct Face {
  IndexSet vertices = 0;
  IndexSet active_facets = 0;  // I(F)
  int dim = -1;

  friend bool operator==(const Face& a, const Face& b) { return a.vertices == b.vertices; }
};

/// Lattice polytope in canonical form: extreme points only (lexicographic
/// order), primitive facet inequalities sorted lexicographically, and
/// equations of the affine hull when the polytope is not full-dimensional.
class Polytope {
 public:
  std::size_t ambient_dim() const { return ambient_dim_; }
  int dim() const { return dim_; }
  const std::vector<IntVector>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  const std::vector<Halfspace>& equalities() const { return equalities_; }
  bool full_dimensional() const { return dim_ == static_cast<int>(ambient_dim_); }

  /// Vertices lying on every facet in `facet_set`.
  IndexSet vertices_on(IndexSet facet_set) const {
    IndexSet all = all_bits(vertices_.size());
    for (auto i : indices_of(facet_set)) all &= facet_vertices_[i];
    return all;
  }
  /// Facets containing every vertex in `vertex_set`.
  IndexSet facets_containing(IndexSet vertex_set) const {
    IndexSet out = 0;
    for (std::size_t i = 0; i < facets_.size(); ++i)
      if (is_subset(vertex_set, facet_vertices_[i])) out |= bit(i);
    return out;
  }
  IndexSet facet_vertices(std::size_t i) const { return facet_vertices_[i]; }

  bool contains(const RatVector& p) const {
    for (const auto& e : equalities_)
      if (e.slack(p) != 0) return false;
    for (const auto& f : facets_)
      if (f.slack(p) < 0) return false;
    return true;
  }
  bool contains_relint(const RatVector& p) const {
    if (!contains(p)) return false;
    for (const auto& f : facets_)
      if (f.slack(p) == 0) return false;
    return true;
  }
  /// Facets whose hyperplane contains p (p assumed inside).
  IndexSet tight_facets(const RatVector& p) const {
    IndexSet out = 0;
    for (std::size_t i = 0; i < facets_.size(); ++i)
      if (facets_[i].slack(p) == 0) out |= bit(i);
    return out;
  }

  /// Dimension of the face cut out by `active` (rank drop of the normals).
  int face_dim(IndexSet active) const {
    std::vector<IntVector> rows;
    for (auto i : indices_of(active)) rows.push_back(facets_[i].normal);
    return dim_ - static_cast<int>(rank(rows));
  }

  Face face_from_vertices(IndexSet vertex_set) const {
    Face f;
    f.vertices = vertex_set;
    f.active_facets = facets_containing(vertex_set);
    f.dim = face_dim(f.active_facets);
    return f;
  }

  /// The face as a polytope of its own (re-canonicalized).
  Polytope face_polytope(IndexSet vertex_set) const;

  /// -P with facet i of -P being the image of facet i of P.
  Polytope negated() const {
    Polytope q = *this;
    for (auto& v : q.vertices_)
      for (auto& x : v) x = -x;
    for (auto& f : q.facets_)
      for (auto& x : f.normal) x = -x;
    for (auto& e : q.equalities_)
      for (auto& x : e.normal) x = -x;
    return q;
  }

  /// Integer bounding box of the n-th dilate.
  std::pair<IntVector, IntVector> bounding_box(std::int64_t n) const {
    IntVector lo(ambient_dim_), hi(ambient_dim_);
    for (std::size_t c = 0; c < ambient_dim_; ++c) {
      std::int64_t a = vertices_[0][c], b = vertices_[0][c];
      for (const auto& v : vertices_) {
        a = std::min(a, v[c]);
        b = std::max(b, v[c]);
      }
      lo[c] = std::min(a * n, b * n);
      hi[c] = std::max(a * n, b * n);
    }
    return {lo, hi};
  }

  friend Polytope hull_facets(const std::vector<IntVector>& points);

 private:
  std::size_t ambient_dim_ = 0;
  int dim_ = -1;
  std::vector<IntVector> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<Halfspace> equalities_;
  std::vector<IndexSet> facet_vertices_;
};

namespace detail {

inline IntVector subtract(const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

template <typename F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// V-to-H conversion. Candidate hyperplanes run through affinely independent
/// subsets of the points inside the affine hull; the ones supporting the
/// point set are kept. Lower-dimensional input is handled by projecting onto
/// pivot coordinates of the affine hull, where it is full-dimensional.
inline Polytope hull_facets(const std::vector<IntVector>& points) {
  if (points.empty()) throw InputError("hull_facets: empty point set");
  const std::size_t d = points.front().size();
  for (const auto& p : points)
    if (p.size() != d) throw InputError("hull_facets: points of mixed dimension");

  std::vector<IntVector> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Polytope P;
  P.ambient_dim_ = d;

  RatMatrix directions;
  for (std::size_t i = 1; i < pts.size(); ++i) directions.push_back(to_rational(detail::subtract(pts[i], pts[0])));
  RatMatrix reduced = directions;
  std::vector<std::size_t> pivot_cols = reduced.empty() ? std::vector<std::size_t>{} : row_reduce(reduced);
  const std::size_t k = pivot_cols.size();
  P.dim_ = static_cast<int>(k);

  // Equations of the affine hull.
  RatMatrix normals = directions.empty() ? RatMatrix{} : nullspace(directions, d);
  if (directions.empty())
    for (std::size_t c = 0; c < d; ++c) {
      RatVector e(d, Rational(0));
      e[c] = 1;
      normals.push_back(e);
    }
  for (const auto& nrm : normals) {
    Halfspace h;
    h.normal = primitive(nrm);
    h.offset = h.value(pts[0]);
    P.equalities_.push_back(h);
  }
  std::sort(P.equalities_.begin(), P.equalities_.end());

  auto project = [&](const IntVector& p) {
    IntVector out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = p[pivot_cols[i]];
    return out;
  };
  std::vector<IntVector> proj;
  for (const auto& p : pts) proj.push_back(project(p));

  std::set<Halfspace> found;  // in projected coordinates
  if (k == 1) {
    std::int64_t lo = proj[0][0], hi = proj[0][0];
    for (const auto& p : proj) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    found.insert({{-1}, -lo});
    found.insert({{1}, hi});
  } else if (k >= 2) {
    detail::for_each_combination(proj.size(), k, [&](const std::vector<std::size_t>& idx) {
      RatMatrix rows;
      for (std::size_t j = 1; j < k; ++j) rows.push_back(to_rational(detail::subtract(proj[idx[j]], proj[idx[0]])));
      RatMatrix ns = nullspace(rows, k);
      if (ns.size() != 1) return;  // affinely dependent
      Halfspace h;
      h.normal = primitive(ns[0]);
      h.offset = h.value(proj[idx[0]]);
      bool below = true, above = true;
      for (const auto& p : proj) {
        auto v = h.value(p);
        if (v > h.offset) below = false;
        if (v < h.offset) above = false;
      }
      if (!below && !above) return;
      if (!below) {
        for (auto& x : h.normal) x = -x;
        h.offset = -h.offset;
      }
      found.insert(h);
    });
  }

  // Lift to ambient coordinates.
  std::vector<Halfspace> facets;
  for (const auto& h : found) {
    Halfspace a;
    a.normal.assign(d, 0);
    for (std::size_t i = 0; i < k; ++i) a.normal[pivot_cols[i]] = h.normal[i];
    a.offset = h.offset;
    facets.push_back(a);
  }
  std::sort(facets.begin(), facets.end());
  if (facets.size() > kMaxIndex) throw InputError("hull_facets: more than 64 facets");

  // Keep extreme points: tight normals must have full rank k.
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<IntVector> tight;
    for (const auto& f : facets)
      if (f.value(pts[i]) == f.offset) tight.push_back(f.normal);
    if (k == 0 || rank(tight) == k) P.vertices_.push_back(pts[i]);
  }
  if (P.vertices_.size() > kMaxIndex) throw InputError("hull_facets: more than 64 vertices");
  P.facets_ = std::move(facets);
  for (const auto& f : P.facets_) {
    IndexSet s = 0;
    for (std::size_t i = 0; i < P.vertices_.size(); ++i)
      if (f.value(P.vertices_[i]) == f.offset) s |= bit(i);
    P.facet_vertices_.push_back(s);
  }
  return P;
}

inline Polytope Polytope::face_polytope(IndexSet vertex_set) const {
  std::vector<IntVector> pts;
  for (auto i : indices_of(vertex_set)) pts.push_back(vertices_[i]);
  return hull_facets(pts);
}

/// All nonempty faces (optionally the empty face too), sorted by dimension and
/// then by vertex mask. Containment of faces is containment of vertex masks.
struct FaceLattice {
  std::vector<Face> faces;

  std::optional<std::size_t> find(IndexSet vertex_set) const {
    for (std::size_t i = 0; i < faces.size(); ++i)
      if (faces[i].vertices == vertex_set) return i;
    return std::nullopt;
  }
  std::vector<int> f_vector() const {
    std::vector<int> f;
    for (const auto& face : faces) {
      if (face.dim < 0) continue;
      if (static_cast<std::size_t>(face.dim) >= f.size()) f.resize(static_cast<std::size_t>(face.dim) + 1, 0);
      ++f[static_cast<std::size_t>(face.dim)];
    }
    return f;
  }
};

inline FaceLattice face_lattice(const Polytope& P, bool include_empty = false) {
  std::map<IndexSet, Face> seen;
  std::vector<IndexSet> queue{all_bits(P.vertices().size())};
  seen[queue.front()] = P.face_from_vertices(queue.front());
  while (!queue.empty()) {
    IndexSet cur = queue.back();
    queue.pop_back();
    IndexSet active = seen[cur].active_facets;
    for (std::size_t i = 0; i < P.facets().size(); ++i) {
      if (active & bit(i)) continue;
      IndexSet next = cur & P.facet_vertices(i);
      if (next == 0 || seen.count(next)) continue;
      seen[next] = P.face_from_vertices(next);
      queue.push_back(next);
    }
  }
  FaceLattice L;
  if (include_empty) L.faces.push_back(Face{0, all_bits(P.facets().size()), -1});
  for (auto& [mask, face] : seen) L.faces.push_back(face);
  std::stable_sort(L.faces.begin(), L.faces.end(), [](const Face& a, const Face& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
  });
  return L;
}

/// Edge neighbours of vertex v.
inline std::vector<std::size_t> adjacent_vertices(const FaceLattice& L, std::size_t v) {
  std::vector<std::size_t> out;
  for (const auto& f : L.faces)
    if (f.dim == 1 && (f.vertices & bit(v)))
      for (auto w : indices_of(f.vertices & ~bit(v))) out.push_back(w);
  return out;
}

// ---------------------------------------------------------------------------
// Cones

/// Face of a pointed cone, identified by the extreme rays it contains; the
/// apex is the face with no rays.
struct ConeFace {
  IndexSet rays = 0;
  IndexSet active_facets = 0;
  int dim = 0;
};

/// Polyhedral cone apex + {x : <a_i, x - apex> <= 0}. Pointed cones built from
/// generators also carry extreme rays and their face lattice.
class Cone {
 public:
  const IntVector& apex() const { return apex_; }
  const std::vector<IntVector>& generators() const { return generators_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  const std::vector<Halfspace>& equalities() const { return equalities_; }
  bool pointed() const { return pointed_; }
  int dim() const { return dim_; }
  std::size_t ambient_dim() const { return apex_.size(); }
  const std::vector<ConeFace>& faces() const { return faces_; }

  bool contains(const RatVector& p) const {
    for (const auto& e : equalities_)
      if (e.slack(p) != 0) return false;
    for (const auto& f : facets_)
      if (f.slack(p) < 0) return false;
    return true;
  }
  bool contains_interior(const RatVector& p) const {
    if (!contains(p)) return false;
    for (const auto& f : facets_)
      if (f.slack(p) == 0) return false;
    return true;
  }

  std::optional<std::size_t> find_face(IndexSet rays) const {
    for (std::size_t i = 0; i < faces_.size(); ++i)
      if (faces_[i].rays == rays) return i;
    return std::nullopt;
  }

  /// Face whose relative interior contains p (p inside the cone).
  std::optional<ConeFace> face_of_point(const RatVector& p) const {
    if (!contains(p) || !pointed_) return std::nullopt;
    IndexSet tight = 0;
    for (std::size_t i = 0; i < facets_.size(); ++i)
      if (facets_[i].slack(p) == 0) tight |= bit(i);
    IndexSet rays = all_bits(generators_.size());
    for (auto i : indices_of(tight)) rays &= facet_rays_[i];
    auto idx = find_face(rays);
    if (!idx) return std::nullopt;
    return faces_[*idx];
  }

  /// Rays lying on facet i.
  IndexSet facet_rays(std::size_t i) const { return facet_rays_[i]; }

  /// Subcone spanned by the rays of a face (apex kept).
  Cone face_cone(IndexSet rays) const;

  /// Pointed cone apex + cone(generators). Generators are made primitive,
  /// deduplicated and reduced to the extreme rays, keeping input order.
  static Cone from_generators(const std::vector<IntVector>& generators, IntVector apex = {});

  /// Cone given by inequalities only (tangent cones, possibly with lineality).
  static Cone from_inequalities(IntVector apex, std::vector<Halfspace> facets, std::vector<Halfspace> equalities,
                                std::vector<IntVector> rays_if_pointed) {
    Cone c;
    c.apex_ = std::move(apex);
    c.facets_ = std::move(facets);
    c.equalities_ = std::move(equalities);
    std::vector<IntVector> rows;
    for (const auto& f : c.facets_) rows.push_back(f.normal);
    for (const auto& e : c.equalities_) rows.push_back(e.normal);
    c.pointed_ = rank(rows) == c.apex_.size();
    std::vector<IntVector> eq_rows;
    for (const auto& e : c.equalities_) eq_rows.push_back(e.normal);
    c.dim_ = static_cast<int>(c.apex_.size() - rank(eq_rows));
    if (c.pointed_) c.generators_ = std::move(rays_if_pointed);
    return c;
  }

 private:
  IntVector apex_;
  std::vector<IntVector> generators_;
  std::vector<Halfspace> facets_;
  std::vector<Halfspace> equalities_;
  std::vector<IndexSet> facet_rays_;
  std::vector<ConeFace> faces_;
  bool pointed_ = false;
  int dim_ = 0;
};

inline Cone Cone::from_generators(const std::vector<IntVector>& generators, IntVector apex) {
  if (generators.empty()) {
    if (apex.empty()) throw InputError("cone needs an apex or at least one generator");
  }
  const std::size_t d = generators.empty() ? apex.size() : generators.front().size();
  if (apex.empty()) apex.assign(d, 0);
  if (apex.size() != d) throw InputError("cone apex dimension mismatch");

  std::vector<IntVector> gens;
  for (const auto& g : generators) {
    if (g.size() != d) throw InputError("cone generators of mixed dimension");
    if (std::all_of(g.begin(), g.end(), [](auto x) { return x == 0; })) continue;
    auto p = primitive(g);
    if (std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(p);
  }

  IntVector origin(d, 0);
  auto build_hull = [&](const std::vector<IntVector>& rays) {
    std::vector<IntVector> pts{origin};
    pts.insert(pts.end(), rays.begin(), rays.end());
    return hull_facets(pts);
  };
  auto index_of = [](const Polytope& Q, const IntVector& p) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < Q.vertices().size(); ++i)
      if (Q.vertices()[i] == p) return i;
    return std::nullopt;
  };

  Cone c;
  c.apex_ = apex;
  c.pointed_ = true;
  if (!gens.empty()) {
    Polytope Q = build_hull(gens);
    auto zero = index_of(Q, origin);
    if (!zero) throw InputError("cone is not pointed");
    FaceLattice L = face_lattice(Q);
    std::vector<IntVector> rays;
    for (const auto& g : gens) {
      auto gi = index_of(Q, g);
      if (gi && L.find(bit(*zero) | bit(*gi))) rays.push_back(g);
    }
    gens = std::move(rays);
  }
  c.generators_ = gens;
  if (gens.size() > kMaxIndex) throw InputError("cone has more than 64 extreme rays");

  if (gens.empty()) {
    // The apex alone.
    for (std::size_t i = 0; i < d; ++i) {
      IntVector e(d, 0);
      e[i] = 1;
      c.equalities_.push_back({e, apex[i]});
    }
    c.dim_ = 0;
    c.faces_.push_back({0, 0, 0});
    return c;
  }

  Polytope Q = build_hull(gens);
  std::size_t zero = *index_of(Q, origin);
  std::vector<std::size_t> ray_of_vertex(Q.vertices().size(), kMaxIndex);
  for (std::size_t r = 0; r < gens.size(); ++r) ray_of_vertex[*index_of(Q, gens[r])] = r;
  auto to_rays = [&](IndexSet vmask) {
    IndexSet out = 0;
    for (auto v : indices_of(vmask & ~bit(zero))) out |= bit(ray_of_vertex[v]);
    return out;
  };

  std::vector<std::size_t> facet_map(Q.facets().size(), kMaxIndex);
  for (std::size_t i = 0; i < Q.facets().size(); ++i) {
    const auto& f = Q.facets()[i];
    if (f.offset != 0) continue;
    facet_map[i] = c.facets_.size();
    c.facets_.push_back({f.normal, f.value(apex)});
    c.facet_rays_.push_back(to_rays(Q.facet_vertices(i)));
  }
  for (const auto& e : Q.equalities()) c.equalities_.push_back({e.normal, e.value(apex)});
  c.dim_ = Q.dim();

  for (const auto& f : face_lattice(Q).faces) {
    if (!(f.vertices & bit(zero))) continue;
    ConeFace cf;
    cf.rays = to_rays(f.vertices);
    cf.dim = f.dim;
    for (auto i : indices_of(f.active_facets))
      if (facet_map[i] != kMaxIndex) cf.active_facets |= bit(facet_map[i]);
    c.faces_.push_back(cf);
  }
  std::stable_sort(c.faces_.begin(), c.faces_.end(), [](const ConeFace& a, const ConeFace& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.rays < b.rays;
  });
  return c;
}

inline Cone Cone::face_cone(IndexSet rays) const {
  std::vector<IntVector> gens;
  for (auto i : indices_of(rays)) gens.push_back(generators_[i]);
  return from_generators(gens, apex_);
}

/// Tangent cone of P at F: {x : <a_i, x> <= b_i, i in I(F)}; the inverted
/// cone flips every inequality. Vertex cones also carry their extreme rays.
inline Cone tangent_cone(const Polytope& P, const Face& F, bool inverted = false) {
  if (F.vertices == 0 || P.vertices_on(P.facets_containing(F.vertices)) != F.vertices)
    throw InputError("tangent_cone: not a face of the polytope");
  IndexSet active = P.facets_containing(F.vertices);
  std::vector<Halfspace> ineq;
  for (auto i : indices_of(active)) {
    Halfspace h = P.facets()[i];
    if (inverted) {
      for (auto& x : h.normal) x = -x;
      h.offset = -h.offset;
    }
    ineq.push_back(h);
  }
  std::size_t first = indices_of(F.vertices).front();
  std::vector<IntVector> rays;
  if (count(F.vertices) == 1) {
    FaceLattice L = face_lattice(P);
    for (auto w : adjacent_vertices(L, first)) {
      IntVector dir = detail::subtract(P.vertices()[w], P.vertices()[first]);
      if (inverted)
        for (auto& x : dir) x = -x;
      rays.push_back(primitive(dir));
    }
  }
  return Cone::from_inequalities(P.vertices()[first], std::move(ineq), P.equalities(), std::move(rays));
}

inline Cone tangent_cone(const Polytope& P, IndexSet face_vertices, bool inverted = false) {
  return tangent_cone(P, P.face_from_vertices(face_vertices), inverted);
}

/// C(P) = cone(P x {1}); ray i is (v_i, 1).
inline Cone homogenize(const Polytope& P) {
  std::vector<IntVector> gens;
  for (auto v : P.vertices()) {
    v.push_back(1);
    gens.push_back(std::move(v));
  }
  return Cone::from_generators(gens);
}

/// Facets visible from the light source q: { i : <a_i, q> > b_i }.
inline IndexSet bright_side(const Polytope& P, const RatVector& q) {
  if (!P.full_dimensional()) throw InputError("bright_side: polytope must be full-dimensional");
  if (q.size() != P.ambient_dim()) throw InputError("bright_side: light source dimension mismatch");
  IndexSet out = 0;
  for (std::size_t i = 0; i < P.facets().size(); ++i)
    if (P.facets()[i].slack(q) < 0) out |= bit(i);
  return out;
}

/// The face of P whose relative interior contains p, if p is in P.
inline std::optional<Face> face_of_point(const Polytope& P, const RatVector& p) {
  if (p.size() != P.ambient_dim() || !P.contains(p)) return std::nullopt;
  return P.face_from_vertices(P.vertices_on(P.tight_facets(p)));
}

inline std::optional<ConeFace> face_of_point(const Cone& C, const RatVector& p) { return C.face_of_point(p); }

}  // namespace recip
