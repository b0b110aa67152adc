#pragma once

// Integral reduced homology of polyhedral complexes (through the order
// complex) and the link conditions built on it: weakly Cohen-Macaulay,
// Cohen-Macaulay and homology manifold.

#include <recip/complex.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace recip {

/// Abstract simplicial complex on integer labels. Like PolyhedralComplex it
/// separates the void complex from {empty simplex}.
struct SimplicialComplex {
  std::vector<std::vector<int>> simplices;  // nonempty, each sorted; sorted by (size, lex)
  bool has_empty_simplex = false;

  int dim() const { return simplices.empty() ? -1 : static_cast<int>(simplices.back().size()) - 1; }

  /// Adds all nonempty subsets of the given simplices.
  static SimplicialComplex generated_by(const std::vector<std::vector<int>>& maximal) {
    std::set<std::vector<int>> all;
    for (auto s : maximal) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      const std::size_t n = s.size();
      if (n > 30) throw InputError("simplex too large");
      for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
        std::vector<int> sub;
        for (std::size_t i = 0; i < n; ++i)
          if (m & (std::uint64_t{1} << i)) sub.push_back(s[i]);
        all.insert(std::move(sub));
      }
    }
    SimplicialComplex out;
    out.simplices.assign(all.begin(), all.end());
    out.sort();
    out.has_empty_simplex = !maximal.empty();
    return out;
  }

  void sort() {
    std::sort(simplices.begin(), simplices.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
  }
};

/// Reduced homology group: Z^free_rank plus torsion Z/t_1 + Z/t_2 + ...
struct HomologyGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // each > 1, divisibility chain

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_z() const { return free_rank == 1 && torsion.empty(); }
  std::string to_string() const {
    if (trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
      os << "Z";
      if (free_rank > 1) os << "^" << free_rank;
      first = false;
    }
    for (const auto& t : torsion) {
      os << (first ? "" : " + ") << "Z/" << t.get_str();
      first = false;
    }
    return os.str();
  }
};

/// Reduced homology in degrees -1 .. dim.
struct HomologyProfile {
  std::vector<HomologyGroup> groups;  // groups[i + 1] is degree i

  const HomologyGroup& degree(int i) const {
    static const HomologyGroup zero;
    auto idx = static_cast<std::size_t>(i + 1);
    return (i < -1 || idx >= groups.size()) ? zero : groups[idx];
  }
  int top_degree() const { return static_cast<int>(groups.size()) - 2; }
  bool trivial() const {
    return std::all_of(groups.begin(), groups.end(), [](const HomologyGroup& g) { return g.trivial(); });
  }
  /// Reduced homology of the k-sphere (k = -1 is the empty sphere {empty}).
  bool is_sphere(int k) const {
    for (int i = -1; i <= std::max(k, top_degree()); ++i) {
      const auto& g = degree(i);
      if (i == k ? !g.is_z() : !g.trivial()) return false;
    }
    return true;
  }
  long euler_characteristic() const {
    long chi = 0;
    for (int i = -1; i <= top_degree(); ++i)
      chi += (i % 2 == 0 ? 1L : -1L) * static_cast<long>(degree(i).free_rank);
    return chi;
  }
};

/// Chains F_0 < F_1 < ... < F_k of nonempty faces; vertex labels are indices
/// into K.faces().
inline SimplicialComplex order_complex(const PolyhedralComplex& K) {
  SimplicialComplex S;
  S.has_empty_simplex = K.has_empty_face();
  const auto& faces = K.faces();
  std::vector<std::vector<int>> above(faces.size());
  for (std::size_t i = 0; i < faces.size(); ++i)
    for (std::size_t j = 0; j < faces.size(); ++j)
      if (i != j && is_subset(faces[i].vertices, faces[j].vertices)) above[i].push_back(static_cast<int>(j));
  std::vector<int> chain;
  auto extend = [&](auto&& self, int last) -> void {
    S.simplices.push_back(chain);
    for (int next : above[static_cast<std::size_t>(last)]) {
      chain.push_back(next);
      self(self, next);
      chain.pop_back();
    }
  };
  for (std::size_t i = 0; i < faces.size(); ++i) {
    chain = {static_cast<int>(i)};
    extend(extend, static_cast<int>(i));
  }
  for (auto& s : S.simplices) std::sort(s.begin(), s.end());
  S.sort();
  return S;
}

/// Order complex of the open upper interval { G in K : G strictly contains F }.
/// This is the barycentric model of the link of F; its dimension is
/// dim K - dim F - 1 for pure K. Void when F is not a face of K.
inline SimplicialComplex link_order_complex(const PolyhedralComplex& K, IndexSet F) {
  SimplicialComplex S;
  if (!K.contains(F)) return S;
  std::vector<CellFace> above;
  for (const auto& g : K.faces())
    if (g.vertices != F && is_subset(F, g.vertices)) above.push_back(g);
  S = [&] {
    SimplicialComplex out;
    out.has_empty_simplex = true;
    std::vector<std::vector<int>> up(above.size());
    for (std::size_t i = 0; i < above.size(); ++i)
      for (std::size_t j = 0; j < above.size(); ++j)
        if (i != j && is_subset(above[i].vertices, above[j].vertices)) up[i].push_back(static_cast<int>(j));
    std::vector<int> chain;
    auto extend = [&](auto&& self, int last) -> void {
      out.simplices.push_back(chain);
      for (int next : up[static_cast<std::size_t>(last)]) {
        chain.push_back(next);
        self(self, next);
        chain.pop_back();
      }
    };
    for (std::size_t i = 0; i < above.size(); ++i) {
      chain = {static_cast<int>(i)};
      extend(extend, static_cast<int>(i));
    }
    for (auto& s : out.simplices) std::sort(s.begin(), s.end());
    out.sort();
    return out;
  }();
  return S;
}

/// Reduced Euler characteristic of the link of F in K, read off the cells
/// above F; 0 when F is not in K, -1 when F is maximal.
inline long link_euler_char(const PolyhedralComplex& K, IndexSet F) {
  if (!K.contains(F)) return 0;
  int fdim = -1;
  for (const auto& g : K.faces())
    if (g.vertices == F) fdim = g.dim;
  long chi = -1;
  for (const auto& g : K.faces())
    if (g.vertices != F && is_subset(F, g.vertices)) chi += ((g.dim - fdim - 1) % 2 == 0) ? 1 : -1;
  return chi;
}

/// Reduced integral homology via Smith normal forms of the augmented
/// boundary maps.
inline HomologyProfile reduced_homology(const SimplicialComplex& S) {
  HomologyProfile out;
  if (!S.has_empty_simplex && S.simplices.empty()) return out;
  const int top = S.dim();
  // by_dim[k + 1] lists the k-simplices; the empty simplex sits at k = -1.
  std::vector<std::vector<const std::vector<int>*>> by_dim(static_cast<std::size_t>(top + 2));
  static const std::vector<int> empty_simplex;
  by_dim[0].push_back(&empty_simplex);
  for (const auto& s : S.simplices) by_dim[s.size()].push_back(&s);

  std::vector<std::map<std::vector<int>, std::size_t>> index(by_dim.size());
  for (std::size_t k = 0; k < by_dim.size(); ++k)
    for (std::size_t i = 0; i < by_dim[k].size(); ++i) index[k][*by_dim[k][i]] = i;

  // snf[k + 1] is the SNF of the boundary from k-simplices to (k-1)-simplices.
  std::vector<SNFResult> snf(by_dim.size() + 1);
  for (std::size_t k = 1; k < by_dim.size(); ++k) {
    SparseIntMatrix m(by_dim[k - 1].size(), by_dim[k].size());
    for (std::size_t j = 0; j < by_dim[k].size(); ++j) {
      const auto& s = *by_dim[k][j];
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<int> face;
        face.reserve(s.size() - 1);
        for (std::size_t t = 0; t < s.size(); ++t)
          if (t != drop) face.push_back(s[t]);
        m.add(index[k - 1].at(face), j, drop % 2 == 0 ? 1 : -1);
      }
    }
    snf[k] = m.smith();
  }

  out.groups.resize(by_dim.size());
  for (std::size_t k = 0; k < by_dim.size(); ++k) {
    std::size_t n = by_dim[k].size();
    std::size_t rank_out = k >= 1 ? snf[k].rank : 0;
    std::size_t rank_in = snf[k + 1].rank;
    out.groups[k].free_rank = n - rank_out - rank_in;
    for (std::size_t i = 0; i < rank_in; ++i)
      if (snf[k + 1].diagonal[i] > 1) out.groups[k].torsion.push_back(snf[k + 1].diagonal[i]);
  }
  return out;
}

inline HomologyProfile reduced_homology(const PolyhedralComplex& K) { return reduced_homology(order_complex(K)); }

/// Sum over nonempty faces of (-1)^dim, minus one; zero for the void complex.
inline long reduced_euler_char(const PolyhedralComplex& K) {
  if (K.is_void()) return 0;
  long chi = -1;
  for (const auto& f : K.faces()) chi += (f.dim % 2 == 0) ? 1 : -1;
  return chi;
}

// ---------------------------------------------------------------------------
// Cohen-Macaulay tests

struct TopologyWitness {
  std::optional<CellFace> face;  // absent: the complex itself
  int degree = 0;
  HomologyGroup group;
  std::string reason;
};

struct CMStatus {
  enum class Value { NotWeaklyCM, WeaklyCM, CM };
  Value value = Value::CM;
  /// Why the next level up fails (why not weakly CM, or why not CM).
  std::optional<TopologyWitness> witness;

  bool weakly_cm() const { return value != Value::NotWeaklyCM; }
  bool cm() const { return value == Value::CM; }
};

inline std::string to_string(CMStatus::Value v) {
  switch (v) {
    case CMStatus::Value::NotWeaklyCM: return "NotWeaklyCM";
    case CMStatus::Value::WeaklyCM: return "WeaklyCM";
    case CMStatus::Value::CM: return "CM";
  }
  return "?";
}

namespace detail {

/// First degree 0 <= i < dim with nontrivial homology.
inline std::optional<int> first_low_homology(const HomologyProfile& h, int dim) {
  for (int i = 0; i < dim; ++i)
    if (!h.degree(i).trivial()) return i;
  return std::nullopt;
}

}  // namespace detail

inline CMStatus cm_status(const PolyhedralComplex& K) {
  CMStatus status;
  if (K.empty()) return status;
  if (!K.pure()) {
    status.value = CMStatus::Value::NotWeaklyCM;
    status.witness = TopologyWitness{std::nullopt, 0, {}, "not pure"};
    return status;
  }
  for (const auto& f : K.faces()) {
    auto L = link_order_complex(K, f.vertices);
    auto h = reduced_homology(L);
    if (auto bad = detail::first_low_homology(h, L.dim())) {
      status.value = CMStatus::Value::NotWeaklyCM;
      status.witness = TopologyWitness{f, *bad, h.degree(*bad), "link homology below top degree"};
      return status;
    }
  }
  auto h = reduced_homology(K);
  if (auto bad = detail::first_low_homology(h, K.dim())) {
    status.value = CMStatus::Value::WeaklyCM;
    status.witness = TopologyWitness{std::nullopt, *bad, h.degree(*bad), "complex homology below top degree"};
  }
  return status;
}

enum class ManifoldStatus { No, WithBoundary, WithoutBoundary };

inline std::string to_string(ManifoldStatus s) {
  switch (s) {
    case ManifoldStatus::No: return "No";
    case ManifoldStatus::WithBoundary: return "WithBoundary";
    case ManifoldStatus::WithoutBoundary: return "WithoutBoundary";
  }
  return "?";
}

struct ManifoldReport {
  ManifoldStatus status = ManifoldStatus::WithoutBoundary;
  std::optional<TopologyWitness> witness;
};

/// Every face link must be homologically trivial or a homology sphere of
/// dimension dim K - dim F - 1.
inline ManifoldReport homology_manifold_status(const PolyhedralComplex& K) {
  ManifoldReport out;
  if (!K.pure()) {
    out.status = ManifoldStatus::No;
    out.witness = TopologyWitness{std::nullopt, 0, {}, "not pure"};
    return out;
  }
  bool boundary = false;
  for (const auto& f : K.faces()) {
    auto h = reduced_homology(link_order_complex(K, f.vertices));
    const int sphere = K.dim() - f.dim - 1;
    if (h.is_sphere(sphere)) continue;
    if (h.trivial()) {
      boundary = true;
      continue;
    }
    int deg = -1;
    for (int i = -1; i <= h.top_degree(); ++i)
      if (i == sphere ? !h.degree(i).is_z() : !h.degree(i).trivial()) {
        deg = i;
        break;
      }
    out.status = ManifoldStatus::No;
    out.witness = TopologyWitness{f, deg, h.degree(deg), "link is neither acyclic nor a homology sphere"};
    return out;
  }
  out.status = boundary ? ManifoldStatus::WithBoundary : ManifoldStatus::WithoutBoundary;
  return out;
}

}  // namespace recip
