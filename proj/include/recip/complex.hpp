#pragma once

// Polyhedral complexes living inside the face lattice of one polytope (or of
// the cross-section of one pointed cone): boundary complexes, generated
// subcomplexes, links, closed stars and interior/boundary face splitting.

#include <recip/geometry.hpp>

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

namespace recip {

/// Cell of a complex, identified by its vertex set.
struct CellFace {
  IndexSet vertices = 0;
  int dim = -1;
  friend bool operator==(const CellFace& a, const CellFace& b) { return a.vertices == b.vertices; }
};

/// Every face any complex of one family may use: the faces of a polytope, or
/// the cross-sections of the faces of a cone (rays act as vertices).
struct FaceUniverse {
  std::vector<IntVector> vertex_coords;
  std::vector<CellFace> faces;  // sorted by (dim, vertices)

  const CellFace* find(IndexSet vertices) const {
    for (const auto& f : faces)
      if (f.vertices == vertices) return &f;
    return nullptr;
  }
};

/// Finite polyhedral complex. Two empty complexes are distinguished: the void
/// complex (no faces at all, reduced Euler characteristic 0) and {empty face}
/// (reduced Euler characteristic -1), which is the link of a maximal face.
class PolyhedralComplex {
 public:
  PolyhedralComplex() = default;

  /// Faces must be closed under subfaces and pairwise intersect in a common
  /// face; both are checked here.
  PolyhedralComplex(std::shared_ptr<const FaceUniverse> universe, std::vector<CellFace> faces, bool has_empty_face)
      : universe_(std::move(universe)), faces_(std::move(faces)), has_empty_face_(has_empty_face || !faces_.empty()) {
    std::sort(faces_.begin(), faces_.end(), [](const CellFace& a, const CellFace& b) {
      return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
    });
    faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
    validate();
  }

  static PolyhedralComplex void_complex(std::shared_ptr<const FaceUniverse> universe) {
    return PolyhedralComplex(std::move(universe), {}, false);
  }

  const std::vector<CellFace>& faces() const { return faces_; }
  const std::shared_ptr<const FaceUniverse>& universe() const { return universe_; }
  bool is_void() const { return !has_empty_face_; }
  bool has_empty_face() const { return has_empty_face_; }
  bool empty() const { return faces_.empty(); }
  std::size_t size() const { return faces_.size(); }

  int dim() const { return faces_.empty() ? -1 : faces_.back().dim; }

  bool contains(IndexSet vertices) const {
    return std::any_of(faces_.begin(), faces_.end(), [&](const CellFace& f) { return f.vertices == vertices; });
  }

  /// Inclusion-maximal faces, in face order.
  std::vector<CellFace> maximal_faces() const {
    std::vector<CellFace> out;
    for (const auto& f : faces_) {
      bool maximal = std::none_of(faces_.begin(), faces_.end(), [&](const CellFace& g) {
        return g.vertices != f.vertices && is_subset(f.vertices, g.vertices);
      });
      if (maximal) out.push_back(f);
    }
    return out;
  }

  bool pure() const {
    auto maxes = maximal_faces();
    return std::all_of(maxes.begin(), maxes.end(), [&](const CellFace& f) { return f.dim == maxes.front().dim; });
  }

  bool is_subcomplex_of(const PolyhedralComplex& other) const {
    if (!is_void() && other.is_void()) return false;
    return std::all_of(faces_.begin(), faces_.end(), [&](const CellFace& f) { return other.contains(f.vertices); });
  }

  /// Faces of the universe contained in any of the given vertex sets.
  static PolyhedralComplex closure(std::shared_ptr<const FaceUniverse> universe, const std::vector<IndexSet>& generators) {
    std::vector<CellFace> faces;
    for (const auto& f : universe->faces)
      if (std::any_of(generators.begin(), generators.end(), [&](IndexSet g) { return is_subset(f.vertices, g); }))
        faces.push_back(f);
    return PolyhedralComplex(std::move(universe), std::move(faces), !generators.empty());
  }

  friend bool operator==(const PolyhedralComplex& a, const PolyhedralComplex& b) {
    return a.has_empty_face_ == b.has_empty_face_ && a.faces_ == b.faces_;
  }

 private:
  void validate() const {
    if (!universe_) {
      if (!faces_.empty()) throw InputError("complex faces need a face universe");
      return;
    }
    for (const auto& f : faces_)
      if (!universe_->find(f.vertices)) throw InputError("complex face is not a face of its universe");
    for (const auto& f : faces_)
      for (const auto& g : universe_->faces)
        if (is_subset(g.vertices, f.vertices) && !contains(g.vertices))
          throw InputError("complex is not closed under taking faces");
    for (std::size_t i = 0; i < faces_.size(); ++i)
      for (std::size_t j = i + 1; j < faces_.size(); ++j) {
        IndexSet meet = faces_[i].vertices & faces_[j].vertices;
        if (meet != 0 && !contains(meet)) throw InputError("complex faces do not meet in a common face");
      }
  }

  std::shared_ptr<const FaceUniverse> universe_;
  std::vector<CellFace> faces_;
  bool has_empty_face_ = false;
};

inline std::shared_ptr<const FaceUniverse> face_universe(const Polytope& P) {
  auto u = std::make_shared<FaceUniverse>();
  u->vertex_coords = P.vertices();
  for (const auto& f : face_lattice(P).faces) u->faces.push_back({f.vertices, f.dim});
  return u;
}

/// B(P): all proper nonempty faces.
inline PolyhedralComplex boundary_complex(const Polytope& P) {
  if (P.dim() < 1) throw InputError("boundary_complex: polytope must have dimension >= 1");
  auto u = face_universe(P);
  std::vector<CellFace> faces;
  for (const auto& f : u->faces)
    if (f.dim < P.dim()) faces.push_back(f);
  return PolyhedralComplex(u, std::move(faces), true);
}

/// B(P) together with the top cell P.
inline PolyhedralComplex full_complex(const Polytope& P) {
  auto u = face_universe(P);
  return PolyhedralComplex(u, u->faces, true);
}

/// Complex generated by the facets of P selected in `facet_set` (indices into
/// P.facets()), as a subcomplex of B(P).
inline PolyhedralComplex facet_subcomplex(const Polytope& P, IndexSet facet_set,
                                          std::shared_ptr<const FaceUniverse> universe = nullptr) {
  if (exceeds(facet_set, P.facets().size())) throw InputError("facet index out of range");
  if (!universe) universe = face_universe(P);
  std::vector<IndexSet> gens;
  for (auto i : indices_of(facet_set)) gens.push_back(P.facet_vertices(i));
  if (gens.empty()) return PolyhedralComplex::void_complex(universe);
  return PolyhedralComplex::closure(universe, gens);
}

/// The boundary fan B(C) of a pointed cone, represented by the cross-section:
/// the face spanned by ray set R becomes a cell with vertex set R and
/// dimension dim - 1. The apex corresponds to the empty face.
inline std::shared_ptr<const FaceUniverse> cone_face_universe(const Cone& C) {
  if (!C.pointed()) throw InputError("cone must be pointed");
  auto u = std::make_shared<FaceUniverse>();
  u->vertex_coords = C.generators();
  for (const auto& f : C.faces())
    if (f.rays != 0) u->faces.push_back({f.rays, f.dim - 1});
  return u;
}

inline PolyhedralComplex cone_boundary_complex(const Cone& C) {
  auto u = cone_face_universe(C);
  std::vector<CellFace> faces;
  for (const auto& f : u->faces)
    if (f.dim < C.dim() - 1) faces.push_back(f);
  return PolyhedralComplex(u, std::move(faces), true);
}

/// Subcomplex of B(C) generated by the cone facets in `facet_set`.
inline PolyhedralComplex cone_facet_subcomplex(const Cone& C, IndexSet facet_set) {
  if (exceeds(facet_set, C.facets().size())) throw InputError("cone facet index out of range");
  auto u = cone_face_universe(C);
  std::vector<IndexSet> gens;
  for (auto i : indices_of(facet_set)) gens.push_back(C.facet_rays(i));
  if (gens.empty()) return PolyhedralComplex::void_complex(u);
  return PolyhedralComplex::closure(u, gens);
}

/// Subcomplex generated by the selected maximal faces of K (indices into
/// K.maximal_faces()), or by the unselected ones when `complement` is set.
inline PolyhedralComplex subcomplex_generated(const PolyhedralComplex& K, const std::vector<std::size_t>& selected,
                                              bool complement = false) {
  auto maxes = K.maximal_faces();
  std::vector<bool> chosen(maxes.size(), false);
  for (auto i : selected) {
    if (i >= maxes.size())
      throw InputError("subcomplex_generated: index " + std::to_string(i) + " out of range");
    chosen[i] = true;
  }
  std::vector<IndexSet> gens;
  for (std::size_t i = 0; i < maxes.size(); ++i)
    if (chosen[i] != complement) gens.push_back(maxes[i].vertices);
  if (gens.empty()) return PolyhedralComplex::void_complex(K.universe());
  return PolyhedralComplex::closure(K.universe(), gens);
}

/// lk_K(F) = { G in K : G and F disjoint, G u F inside some face of K }.
/// Void when F is not a face of K.
inline PolyhedralComplex link(const PolyhedralComplex& K, IndexSet F) {
  if (!K.contains(F)) return PolyhedralComplex::void_complex(K.universe());
  std::vector<CellFace> faces;
  for (const auto& g : K.faces()) {
    if (g.vertices & F) continue;
    bool cofacial = std::any_of(K.faces().begin(), K.faces().end(),
                                [&](const CellFace& h) { return is_subset(g.vertices | F, h.vertices); });
    if (cofacial) faces.push_back(g);
  }
  return PolyhedralComplex(K.universe(), std::move(faces), true);
}

/// Closed star: faces G of K such that F u G lies in a face of K.
inline PolyhedralComplex closed_star(const PolyhedralComplex& K, IndexSet F) {
  if (!K.contains(F)) throw InputError("closed_star: face is not in the complex");
  std::vector<CellFace> faces;
  for (const auto& g : K.faces()) {
    bool cofacial = std::any_of(K.faces().begin(), K.faces().end(),
                                [&](const CellFace& h) { return is_subset(g.vertices | F, h.vertices); });
    if (cofacial) faces.push_back(g);
  }
  return PolyhedralComplex(K.universe(), std::move(faces), true);
}

struct FaceClassification {
  std::vector<CellFace> interior;
  std::vector<CellFace> boundary;
  PolyhedralComplex boundary_complex;  // the boundary of Delta
};

/// Interior faces of Delta: every face of K containing F already lies in
/// Delta. For simplicial K this is the condition lk_K(F) inside Delta; for
/// general cells the disjoint-face link is too coarse (a square on the torus
/// in the boundary of the 4-cube would count as interior).
inline FaceClassification classify_faces(const PolyhedralComplex& K, const PolyhedralComplex& delta) {
  if (!delta.is_subcomplex_of(K)) throw InputError("classify_faces: Delta is not a subcomplex of K");
  FaceClassification out;
  for (const auto& f : delta.faces()) {
    bool interior = std::all_of(K.faces().begin(), K.faces().end(), [&](const CellFace& g) {
      return !is_subset(f.vertices, g.vertices) || delta.contains(g.vertices);
    });
    (interior ? out.interior : out.boundary).push_back(f);
  }
  out.boundary_complex = out.boundary.empty() ? PolyhedralComplex::void_complex(K.universe())
                                              : PolyhedralComplex(K.universe(), out.boundary, true);
  return out;
}

}  // namespace recip
