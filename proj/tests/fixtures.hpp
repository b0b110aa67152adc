#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "recip/cli.hpp"
#include "recip/recip.hpp"

namespace fixtures {

using namespace recip;

inline Polytope unit_cube(std::size_t k) {
  std::vector<IntVector> pts;
  for (std::size_t m = 0; m < (std::size_t{1} << k); ++m) {
    IntVector v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = (m >> i) & 1;
    pts.push_back(v);
  }
  return hull_facets(pts);
}

inline Polytope square() { return unit_cube(2); }
inline Polytope segment() { return hull_facets({{0}, {1}}); }
inline Polytope triangle() { return hull_facets({{0, 0}, {2, 0}, {0, 2}}); }

/// Square pyramid over [0,2]^2 with apex (1,1,1).
inline Polytope pyramid() { return hull_facets({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {2, 2, 0}, {1, 1, 1}}); }

/// Index of the facet with the given inequality <a, x> <= b.
inline std::size_t facet_index(const Polytope& P, const IntVector& a, std::int64_t b) {
  for (std::size_t i = 0; i < P.facets().size(); ++i)
    if (P.facets()[i].normal == a && P.facets()[i].offset == b) return i;
  throw std::logic_error("no such facet");
}

/// S1 = [0,1]^2 x boundary([0,1]^2) as a facet set of the 4-cube.
inline IndexSet solid_torus(const Polytope& cube4) {
  return bit(facet_index(cube4, {0, 0, -1, 0}, 0)) | bit(facet_index(cube4, {0, 0, 0, -1}, 0)) |
         bit(facet_index(cube4, {0, 0, 1, 0}, 1)) | bit(facet_index(cube4, {0, 0, 0, 1}, 1));
}

/// The two triangles of the pyramid over the edges x = 0 and x = 2.
inline IndexSet pyramid_triangles(const Polytope& P) {
  return bit(facet_index(P, {-1, 0, 1}, 0)) | bit(facet_index(P, {1, 0, 1}, 2));
}

/// Vertex mask of the listed vertices of P.
inline IndexSet mask_of(const Polytope& P, const std::vector<IntVector>& vs) {
  IndexSet m = 0;
  for (const auto& v : vs) {
    auto it = std::find(P.vertices().begin(), P.vertices().end(), v);
    if (it == P.vertices().end()) throw std::logic_error("not a vertex");
    m |= bit(static_cast<std::size_t>(it - P.vertices().begin()));
  }
  return m;
}

/// Cone over the unit square at height 1.
inline Cone square_cone() { return Cone::from_generators({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}); }

inline std::size_t cone_facet(const Cone& C, const IntVector& normal) {
  for (std::size_t i = 0; i < C.facets().size(); ++i)
    if (C.facets()[i].normal == normal) return i;
  throw std::logic_error("no such cone facet");
}

/// Random lattice polytope of full dimension d with coordinates in [0, hi].
inline Polytope random_polytope(std::mt19937_64& rng, std::size_t d, std::int64_t hi = 4, int npts = 0) {
  std::uniform_int_distribution<std::int64_t> coord(0, hi);
  if (npts == 0) npts = static_cast<int>(d) + 3;
  for (;;) {
    std::vector<IntVector> pts;
    for (int i = 0; i < npts; ++i) {
      IntVector v(d);
      for (auto& c : v) c = coord(rng);
      pts.push_back(v);
    }
    auto P = hull_facets(pts);
    if (P.full_dimensional()) return P;
  }
}

/// Random pointed full-dimensional cone in R^3 with small generators.
inline Cone random_cone3(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> c(-2, 2);
  for (;;) {
    std::vector<IntVector> gens;
    for (int i = 0; i < 4; ++i) gens.push_back({c(rng), c(rng), 3});
    auto C = Cone::from_generators(gens);
    if (C.pointed() && C.dim() == 3) return C;
  }
}

// Is x in the half-open piece? Coordinates in the generator basis by solve_linear.
inline bool in_piece(const HalfOpenSimplicialCone& K, const IntVector& x) {
  const std::size_t D = x.size();
  RatMatrix a(D, RatVector(K.generators.size()));
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < K.generators.size(); ++j) a[i][j] = K.generators[j][i];
  RatVector b(D);
  for (std::size_t i = 0; i < D; ++i) b[i] = x[i] - K.shift[i];
  auto l = solve_linear(a, b);
  if (!l) return false;
  for (std::size_t j = 0; j < l->size(); ++j) {
    if ((*l)[j] < 0) return false;
    if ((*l)[j] == 0 && (K.open & bit(j))) return false;
  }
  return true;
}

inline std::vector<IntVector> box(std::size_t D, std::int64_t r) {
  std::vector<IntVector> out;
  IntVector x(D, -r);
  for (;;) {
    out.push_back(x);
    std::size_t c = 0;
    while (c < D && x[c] == r) {
      x[c] = -r;
      ++c;
    }
    if (c == D) return out;
    ++x[c];
  }
}

inline bool in_box(const IntVector& x, std::int64_t r) {
  return std::all_of(x.begin(), x.end(), [&](std::int64_t c) { return -r <= c && c <= r; });
}

// Box points of a piece generated from its parallelepiped: p + sum k_j g_j.
inline std::size_t series_box_count(const HalfOpenSimplicialCone& K, std::int64_t r, std::int64_t kmax) {
  std::size_t n = 0;
  const std::size_t k = K.generators.size();
  for (const auto& p : parallelepiped_points(K)) {
    IntVector mult(k, 0);
    for (;;) {
      IntVector x(p.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = K.shift[i] + p[i];
        for (std::size_t j = 0; j < k; ++j) x[i] += mult[j] * K.generators[j][i];
      }
      if (in_box(x, r)) ++n;
      std::size_t c = 0;
      while (c < k && mult[c] == kmax) {
        mult[c] = 0;
        ++c;
      }
      if (c == k) break;
      ++mult[c];
    }
  }
  return n;
}

inline std::filesystem::path corpus_dir() { return RECIP_CORPUS_DIR; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Every corpus instance that parses.
inline std::vector<cli::Instance> corpus_instances() {
  std::vector<cli::Instance> out;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir()))
    if (e.path().extension() == ".json" && e.path().filename() != "manifest.json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    try {
      out.push_back(cli::parse_instance_text(slurp(f)));
    } catch (const InputError&) {
    }
  }
  return out;
}

}  // namespace fixtures
