#pragma once

// Lattice-point generating functions: half-open decompositions of pointed
// cones into simplicial pieces, exact evaluation, randomized identity testing,
// and the reciprocity / Brianchon-Gram / Brion checks built on them.

#include <recip/ehrhart.hpp>

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace recip {

/// Finite sum of monomials c * x^e with integer coefficients.
class LaurentPolynomial {
 public:
  using Terms = std::map<IntVector, Integer>;

  LaurentPolynomial() = default;
  explicit LaurentPolynomial(std::size_t dim) : dim_(dim) {}

  static LaurentPolynomial monomial(const IntVector& e, const Integer& c = 1) {
    LaurentPolynomial p(e.size());
    p.add(e, c);
    return p;
  }

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const IntVector& e, const Integer& c) {
    if (e.size() != dim_) throw InputError("monomial exponent has the wrong length");
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
    if (this == &o) return *this = scaled(2);
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
    if (this == &o) {
      terms_.clear();
      return *this;
    }
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial out(a.dim_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        IntVector e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add(e, ca * cb);
      }
    return out;
  }
  LaurentPolynomial scaled(const Integer& k) const {
    LaurentPolynomial out(dim_);
    for (const auto& [e, c] : terms_) out.add(e, c * k);
    return out;
  }
  /// x^shift * p
  LaurentPolynomial shifted(const IntVector& shift) const { return *this * monomial(shift); }
  /// p(1/x)
  LaurentPolynomial reciprocal() const {
    LaurentPolynomial out(dim_);
    for (const auto& [e, c] : terms_) {
      IntVector n = e;
      for (auto& x : n) x = -x;
      out.add(n, c);
    }
    return out;
  }

  Rational evaluate(const RatVector& x) const {
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) t *= pow(x[i], e[i]);
      s += t;
    }
    return s;
  }

  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

 private:
  std::size_t dim_ = 0;
  Terms terms_;
};

/// num / prod over rays g of (1 - x^g)
struct GenFunTerm {
  LaurentPolynomial numerator;
  std::vector<IntVector> rays;
};

/// Finite sum of GenFunTerms: a rational function representing a lattice
/// point series.
class RationalGenFun {
 public:
  RationalGenFun() = default;
  explicit RationalGenFun(std::size_t dim) : dim_(dim) {}

  static RationalGenFun from_polynomial(const LaurentPolynomial& p) {
    RationalGenFun f(p.dim());
    f.add_term({p, {}});
    return f;
  }

  std::size_t dim() const { return dim_; }
  const std::vector<GenFunTerm>& terms() const { return terms_; }

  void add_term(GenFunTerm t) {
    if (t.numerator.dim() != dim_) throw InputError("generating function term has the wrong dimension");
    if (!t.numerator.is_zero()) terms_.push_back(std::move(t));
  }
  // Indexed loops: o may be *this.
  RationalGenFun& operator+=(const RationalGenFun& o) {
    const std::size_t n = o.terms_.size();
    for (std::size_t i = 0; i < n; ++i) add_term(GenFunTerm(o.terms_[i]));
    return *this;
  }
  RationalGenFun& operator-=(const RationalGenFun& o) {
    const std::size_t n = o.terms_.size();
    for (std::size_t i = 0; i < n; ++i) add_term({o.terms_[i].numerator.scaled(-1), o.terms_[i].rays});
    return *this;
  }
  RationalGenFun scaled(const Integer& k) const {
    RationalGenFun out(dim_);
    for (const auto& t : terms_) out.add_term({t.numerator.scaled(k), t.rays});
    return out;
  }
  RationalGenFun shifted(const IntVector& e) const {
    RationalGenFun out(dim_);
    for (const auto& t : terms_) out.add_term({t.numerator.shifted(e), t.rays});
    return out;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<GenFunTerm> terms_;
};

/// A pointed simplicial cone shift + cone(generators) with the facets opposite
/// the generators in `open` removed.
struct HalfOpenSimplicialCone {
  std::vector<IntVector> generators;
  IndexSet open = 0;  // bit j: the facet not containing generators[j] is excluded
  IntVector shift;
};

struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Rational monomial_value(const RatVector& x, const IntVector& e) {
  Rational t = 1;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) t *= pow(x[i], e[i]);
  return t;
}

inline IntVector negate(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

/// Columns are the given vectors.
inline RatMatrix column_matrix(const std::vector<IntVector>& cols, std::size_t rows) {
  RatMatrix a(rows, RatVector(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) a[i][j] = cols[j][i];
  return a;
}

inline RatMatrix inverse(const RatMatrix& m) {
  const std::size_t k = m.size();
  RatMatrix aug(k, RatVector(2 * k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = m[i][j];
    aug[i][k + i] = 1;
  }
  auto piv = row_reduce(aug);
  if (piv.size() < k || piv[k - 1] >= k) throw std::logic_error("singular matrix");
  RatMatrix out(k, RatVector(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out[i][j] = aug[i][k + j];
  return out;
}

}  // namespace detail

inline Rational eval_rational(const RationalGenFun& f, const RatVector& x) {
  if (x.size() != f.dim()) throw InputError("evaluation point has the wrong dimension");
  for (const auto& c : x)
    if (c == 0) throw PoleError("coordinate is zero");
  Rational s = 0;
  for (const auto& t : f.terms()) {
    Rational den = 1;
    for (const auto& g : t.rays) den *= 1 - detail::monomial_value(x, g);
    if (den == 0) throw PoleError("evaluation point lies on a pole");
    s += t.numerator.evaluate(x) / den;
  }
  return s;
}

/// f(1/x). Each factor 1/(1 - x^-g) is rewritten as -x^g / (1 - x^g), so the
/// rays stay as they are and the map is an exact involution.
inline RationalGenFun substitute_reciprocal(const RationalGenFun& f) {
  RationalGenFun out(f.dim());
  for (const auto& t : f.terms()) {
    LaurentPolynomial num = t.numerator.reciprocal();
    for (const auto& g : t.rays) num = num.shifted(g).scaled(-1);
    out.add_term({std::move(num), t.rays});
  }
  return out;
}

inline LaurentPolynomial substitute_reciprocal(const LaurentPolynomial& p) { return p.reciprocal(); }

struct EqualityVerdict {
  bool equal = true;
  int trials = 0;
  std::optional<RatVector> witness;  // first point where the two sides differ
  Rational lhs, rhs;
};

/// Randomized exact comparison: evaluates both sides at `trials` points with
/// coordinates ±p/q, p and q uniform in [1, 10^6]; pole hits are resampled.
inline EqualityVerdict rational_equal(const RationalGenFun& f, const RationalGenFun& g, int trials,
                                      std::uint64_t seed) {
  if (f.dim() != g.dim()) throw InputError("rational_equal: dimension mismatch");
  if (trials < 1) throw InputError("trials must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> mag(1, 1'000'000);
  std::bernoulli_distribution sign(0.5);
  EqualityVerdict v;
  int resamples = 0;
  while (v.trials < trials) {
    RatVector x(f.dim());
    for (auto& c : x) {
      c = make_rational(mag(rng), mag(rng));
      if (sign(rng)) c = -c;
    }
    Rational a, b;
    try {
      a = eval_rational(f, x);
      b = eval_rational(g, x);
    } catch (const PoleError&) {
      if (++resamples > 1000) throw std::runtime_error("rational_equal: too many pole hits");
      continue;
    }
    ++v.trials;
    if (a != b) {
      v.equal = false;
      v.witness = x;
      v.lhs = a;
      v.rhs = b;
      return v;
    }
  }
  return v;
}

/// Pulling triangulation of a pointed cone: the lowest ray of each face is
/// joined to the triangulations of the facets of that face not containing it.
/// Returns ray sets of full-dimensional simplicial cones.
inline std::vector<IndexSet> triangulate_cone(const Cone& C) {
  if (!C.pointed()) throw InputError("cone is not pointed");
  if (C.faces().empty()) throw InputError("cone has no face lattice; build it from generators");
  std::map<IndexSet, std::vector<IndexSet>> memo;
  std::function<const std::vector<IndexSet>&(const ConeFace&)> rec = [&](const ConeFace& F) -> const std::vector<IndexSet>& {
    if (auto it = memo.find(F.rays); it != memo.end()) return it->second;
    std::vector<IndexSet> out;
    if (count(F.rays) == F.dim) {
      out.push_back(F.rays);
    } else {
      IndexSet r = F.rays & (~F.rays + 1);
      for (const auto& G : C.faces())
        if (G.dim == F.dim - 1 && is_subset(G.rays, F.rays) && !(G.rays & r))
          for (IndexSet s : rec(G)) out.push_back(s | r);
    }
    return memo.emplace(F.rays, std::move(out)).first->second;
  };
  return rec(C.faces().back());
}

namespace detail {

/// Coordinates of w in the basis of each piece, or nullopt when w lies on a
/// facet hyperplane of some piece.
inline std::optional<std::vector<RatVector>> piece_coordinates(const Cone& C, const std::vector<IndexSet>& pieces,
                                                               const RatVector& w) {
  std::vector<RatVector> out;
  for (IndexSet s : pieces) {
    std::vector<IntVector> gens;
    for (auto i : indices_of(s)) gens.push_back(C.generators()[i]);
    auto lambda = solve_linear(column_matrix(gens, C.ambient_dim()), w);
    if (!lambda) throw std::logic_error("reference vector outside the span of the cone");
    for (const auto& l : *lambda)
      if (l == 0) return std::nullopt;
    out.push_back(*lambda);
  }
  return out;
}

}  // namespace detail

/// Splits C into half-open simplicial cones partitioning it. A reference w in
/// the interior, w = sum of c_i g_i with c = (1, 1/2, 1/4, ...), is perturbed
/// until generic; facet j of a piece is open when w lies strictly beyond it.
/// With `relint` the complementary facets are opened, which partitions the
/// relative interior instead (equivalently, uses -w as reference).
inline std::vector<HalfOpenSimplicialCone> triangulate_and_halfopen(const Cone& C, bool relint = false) {
  auto pieces = triangulate_cone(C);
  std::vector<HalfOpenSimplicialCone> out;
  const std::size_t D = C.ambient_dim();
  const auto& gens = C.generators();
  std::optional<std::vector<RatVector>> coords;
  for (int attempt = 0; attempt < 64 && !coords; ++attempt) {
    RatVector w(D, 0);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Rational c = make_rational(1, Integer(1) << static_cast<unsigned>(std::min<std::size_t>(i, 60)));
      if (attempt > 0) c += make_rational(1, Integer(attempt + 2) * Integer(static_cast<long>(i * i + 3)));
      for (std::size_t k = 0; k < D; ++k) w[k] += c * gens[i][k];
    }
    coords = detail::piece_coordinates(C, pieces, w);
  }
  if (!coords) throw std::logic_error("no generic reference vector found");
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    HalfOpenSimplicialCone h;
    h.shift = C.apex();
    auto idx = indices_of(pieces[p]);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      h.generators.push_back(gens[idx[j]]);
      bool beyond = (*coords)[p][j] < 0;
      if (beyond != relint) h.open |= bit(j);
    }
    out.push_back(std::move(h));
  }
  return out;
}

/// Lattice points of the half-open fundamental parallelepiped
/// { sum lambda_j g_j : lambda_j in [0,1), or (0,1] for open facets j },
/// relative to the shift. Enumerates only k pivot coordinates.
inline std::vector<IntVector> parallelepiped_points(const HalfOpenSimplicialCone& K) {
  const std::size_t k = K.generators.size();
  const std::size_t D = K.shift.size();
  if (k == 0) return {IntVector(D, 0)};
  RatMatrix gt(k, RatVector(D));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < D; ++i) gt[j][i] = K.generators[j][i];
  auto piv = row_reduce(gt);
  if (piv.size() != k) throw InputError("simplicial cone generators are linearly dependent");
  RatMatrix m(k, RatVector(k));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = 0; j < k; ++j) m[r][j] = K.generators[j][piv[r]];
  RatMatrix minv = detail::inverse(m);

  IntVector lo(k, 0), hi(k, 0);
  for (std::size_t r = 0; r < k; ++r)
    for (const auto& g : K.generators) {
      lo[r] += std::min<std::int64_t>(0, g[piv[r]]);
      hi[r] += std::max<std::int64_t>(0, g[piv[r]]);
    }
  std::vector<IntVector> out;
  detail::for_each_box_point(lo, hi, [&](const IntVector& y) {
    RatVector lambda(k, 0);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t r = 0; r < k; ++r)
        if (y[r] != 0) lambda[j] += minv[j][r] * y[r];
    for (std::size_t j = 0; j < k; ++j) {
      bool open = K.open & bit(j);
      if (open ? (lambda[j] <= 0 || lambda[j] > 1) : (lambda[j] < 0 || lambda[j] >= 1)) return;
    }
    IntVector x(D);
    for (std::size_t i = 0; i < D; ++i) {
      Rational xi = 0;
      for (std::size_t j = 0; j < k; ++j) xi += lambda[j] * K.generators[j][i];
      if (xi.get_den() != 1) return;
      x[i] = to_int64(xi.get_num());
    }
    out.push_back(std::move(x));
    if (out.size() > 100'000) throw InputError("parallelepiped index exceeds 10^5");
  });
  return out;
}

inline RationalGenFun genfun_simplicial(const HalfOpenSimplicialCone& K) {
  LaurentPolynomial num(K.shift.size());
  for (const auto& p : parallelepiped_points(K)) {
    IntVector e = p;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += K.shift[i];
    num.add(e, 1);
  }
  RationalGenFun f(K.shift.size());
  f.add_term({std::move(num), K.generators});
  return f;
}

enum class ConeMode { Closed, Relint };

/// F_C or F_relint C as a sum over the pieces of a half-open decomposition.
inline RationalGenFun genfun_cone(const Cone& C, ConeMode mode = ConeMode::Closed) {
  RationalGenFun f(C.ambient_dim());
  for (const auto& piece : triangulate_and_halfopen(C, mode == ConeMode::Relint)) f += genfun_simplicial(piece);
  return f;
}

/// F_relint C by Moebius inversion over the face lattice:
/// sum over faces G of (-1)^(dim C - dim G) F_G.
inline RationalGenFun genfun_relint_by_faces(const Cone& C) {
  RationalGenFun f(C.ambient_dim());
  for (const auto& G : C.faces()) {
    auto FG = genfun_cone(C.face_cone(G.rays));
    f += ((C.dim() - G.dim) % 2) ? FG.scaled(-1) : FG;
  }
  return f;
}

namespace detail {

/// Δ must be a complex of proper faces of C in the cross-section encoding.
inline void check_cone_subcomplex(const Cone& C, const PolyhedralComplex& delta) {
  for (const auto& f : delta.faces()) {
    auto idx = C.find_face(f.vertices);
    if (!idx || C.faces()[*idx].dim != f.dim + 1) throw InputError("subcomplex cell is not a face of the cone");
    if (f.dim + 1 >= C.dim()) throw InputError("subcomplex must consist of proper faces of the cone");
  }
}

}  // namespace detail

/// Facet set generating a cross-section subcomplex of B(C); throws when Δ is
/// not generated by cone facets.
inline IndexSet facet_set_of_cone(const Cone& C, const PolyhedralComplex& delta) {
  if (delta.is_void() || delta.empty()) {
    if (!delta.is_void()) throw InputError("subcomplex {apex} is not generated by facets");
    return 0;
  }
  IndexSet out = 0;
  for (const auto& f : delta.maximal_faces()) {
    bool found = false;
    for (std::size_t i = 0; i < C.facets().size(); ++i)
      if (C.facet_rays(i) == f.vertices) {
        out |= bit(i);
        found = true;
      }
    if (!found) throw InputError("subcomplex is not generated by facets of the cone");
  }
  return out;
}

/// F_{C \ |Δ|} = F_C - sum over G in Δ of F_relint G, the apex included
/// whenever Δ is not void.
inline RationalGenFun genfun_region(const Cone& C, const PolyhedralComplex& delta) {
  detail::check_cone_subcomplex(C, delta);
  RationalGenFun f = genfun_cone(C);
  for (const auto& g : delta.faces()) f -= genfun_cone(C.face_cone(g.vertices), ConeMode::Relint);
  if (!delta.is_void()) f -= RationalGenFun::from_polynomial(LaurentPolynomial::monomial(C.apex()));
  return f;
}

/// The lattice points of P \ |Δ| as a Laurent polynomial, by enumeration.
/// A point lies in |Δ| exactly when its carrier face does.
inline LaurentPolynomial polytope_series(const Polytope& P, const PolyhedralComplex& delta) {
  LaurentPolynomial out(P.ambient_dim());
  auto [lo, hi] = P.bounding_box(1);
  detail::for_each_box_point(lo, hi, [&](const IntVector& x) {
    if (!detail::in_dilate(P, 0, 1, x)) return;
    IndexSet tight = 0;
    for (std::size_t i = 0; i < P.facets().size(); ++i)
      if (P.facets()[i].value(x) == P.facets()[i].offset) tight |= bit(i);
    if (!delta.is_void() && delta.contains(P.vertices_on(tight))) return;
    out.add(x, 1);
  });
  return out;
}

/// Lattice points of P with the facets in `removed` taken away.
inline LaurentPolynomial polytope_series(const Polytope& P, IndexSet removed) {
  LaurentPolynomial out(P.ambient_dim());
  auto [lo, hi] = P.bounding_box(1);
  detail::for_each_box_point(lo, hi, [&](const IntVector& x) {
    if (detail::in_dilate(P, removed, 1, x)) out.add(x, 1);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Reciprocity checks

struct StanleyReport {
  EqualityVerdict reciprocity;  // (-1)^dim G F_G(1/x) = F_relint G(x)
  EqualityVerdict relint_paths;  // opened facets vs. face-lattice inversion
  bool verified() const { return reciprocity.equal && relint_paths.equal; }
};

inline StanleyReport verify_stanley_reciprocity(const Cone& G, int trials, std::uint64_t seed) {
  StanleyReport r;
  auto lhs = substitute_reciprocal(genfun_cone(G));
  if (G.dim() % 2) lhs = lhs.scaled(-1);
  auto relint = genfun_cone(G, ConeMode::Relint);
  r.reciprocity = rational_equal(lhs, relint, trials, seed);
  r.relint_paths = rational_equal(relint, genfun_relint_by_faces(G), trials, seed);
  return r;
}

struct MR1Report {
  IndexSet delta = 0;   // cone facets generating Δ
  IndexSet dual = 0;    // facets generating Δ'
  CMStatus cm;
  EqualityVerdict identity;
  bool verified() const { return identity.equal; }
};

/// (-1)^dim C F_{C \ |Δ|}(1/x) = F_{C \ |Δ'|}(x), Δ' generated by the facets
/// not in Δ (void when every facet is in Δ).
inline MR1Report verify_mr1(const Cone& C, IndexSet delta_facets, int trials, std::uint64_t seed) {
  if (!C.pointed() || C.dim() != static_cast<int>(C.ambient_dim()))
    throw InputError("verify_mr1: cone must be pointed and full-dimensional");
  MR1Report r;
  r.delta = delta_facets;
  r.dual = all_bits(C.facets().size()) & ~delta_facets;
  auto delta = cone_facet_subcomplex(C, r.delta);
  auto dual = cone_facet_subcomplex(C, r.dual);
  r.cm = cm_status(delta);
  auto lhs = substitute_reciprocal(genfun_region(C, delta));
  if (C.dim() % 2) lhs = lhs.scaled(-1);
  r.identity = rational_equal(lhs, genfun_region(C, dual), trials, seed);
  return r;
}

struct GenFReport {
  EqualityVerdict closed_faces;  // RHS as F_relint C + sum (-1)^(d - dim G) F_G
  EqualityVerdict links;         // RHS through reduced Euler characteristics of links
  bool verified() const { return closed_faces.equal && links.equal; }
};

/// (-1)^(d+1) F_{C \ |Δ|}(1/x) for an arbitrary subcomplex Δ of B(C), dim C = d+1,
/// against two assemblies of the right-hand side. In the link form the
/// coefficient of relint G is (-1)^(d - k) chi~(lk_Δ G) with k the dimension
/// of the cell of G in the cross-section (the apex has k = -1).
inline GenFReport verify_genF(const Cone& C, const PolyhedralComplex& delta, int trials, std::uint64_t seed) {
  if (!C.pointed() || C.dim() != static_cast<int>(C.ambient_dim()))
    throw InputError("verify_genF: cone must be pointed and full-dimensional");
  detail::check_cone_subcomplex(C, delta);
  const int d = C.dim() - 1;
  auto lhs = substitute_reciprocal(genfun_region(C, delta));
  if ((d + 1) % 2) lhs = lhs.scaled(-1);

  const auto apex = RationalGenFun::from_polynomial(LaurentPolynomial::monomial(C.apex()));
  RationalGenFun closed = genfun_cone(C, ConeMode::Relint);
  RationalGenFun linked = closed;
  if (!delta.is_void()) {
    // apex: cone dimension 0, cross-section dimension -1, link = Δ itself
    closed += (d % 2) ? apex.scaled(-1) : apex;
    long chi = reduced_euler_char(delta);
    linked += apex.scaled(((d + 1) % 2 ? -1 : 1) * chi);
  }
  for (const auto& g : delta.faces()) {
    Cone G = C.face_cone(g.vertices);
    const int cone_dim = g.dim + 1;
    auto FG = genfun_cone(G);
    closed += ((d - cone_dim) % 2) ? FG.scaled(-1) : FG;
    long chi = reduced_homology(link_order_complex(delta, g.vertices)).euler_characteristic();
    long coeff = ((d - g.dim) % 2 ? -1 : 1) * chi;
    if (coeff != 0) linked += genfun_cone(G, ConeMode::Relint).scaled(coeff);
  }
  GenFReport r;
  r.closed_faces = rational_equal(lhs, closed, trials, seed);
  r.links = rational_equal(lhs, linked, trials, seed);
  return r;
}

// ---------------------------------------------------------------------------
// Indicator-function identities

enum class IndicatorKind { ConeBG, BG, InvBG, RelBG, RelBGInv };

inline std::string to_string(IndicatorKind k) {
  switch (k) {
    case IndicatorKind::ConeBG: return "ConeBG";
    case IndicatorKind::BG: return "BG";
    case IndicatorKind::InvBG: return "InvBG";
    case IndicatorKind::RelBG: return "RelBG";
    case IndicatorKind::RelBGInv: return "RelBGInv";
  }
  return "?";
}

inline std::optional<IndicatorKind> parse_indicator_kind(std::string_view s) {
  for (auto k : {IndicatorKind::ConeBG, IndicatorKind::BG, IndicatorKind::InvBG, IndicatorKind::RelBG,
                 IndicatorKind::RelBGInv})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

struct IndicatorSample {
  RatVector point;
  Integer lhs, rhs;
};

struct IndicatorReport {
  IndicatorKind kind = IndicatorKind::BG;
  std::size_t points = 0;
  std::optional<IndicatorSample> failure;
  bool pass() const { return !failure; }
};

namespace detail {

/// Sign of <a, p> - b for the facet halfspace <a, x> <= b.
inline int side(const Halfspace& h, const RatVector& p) { return -sgn(h.slack(p)); }

inline bool on_equalities(const std::vector<Halfspace>& eqs, const RatVector& p) {
  return std::all_of(eqs.begin(), eqs.end(), [&](const Halfspace& e) { return e.slack(p) == 0; });
}

}  // namespace detail

/// Subcomplex reciprocity for a pointed full-dimensional cone C:
/// sum over faces F of (-1)^dim F [T_C(F)](p) = (-1)^dim C [Int(-C)](p),
/// with -C the reflection of C through its apex.
inline IndicatorReport check_cone_bg(const Cone& C, const std::vector<RatVector>& points) {
  if (!C.pointed() || C.faces().empty()) throw InputError("ConeBG needs a pointed cone given by generators");
  IndicatorReport r;
  r.kind = IndicatorKind::ConeBG;
  for (const auto& p : points) {
    if (p.size() != C.ambient_dim()) throw InputError("sample point has the wrong dimension");
    Integer rhs = 0, lhs = 0;
    RatVector mirrored(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) mirrored[i] = 2 * to_rational(C.apex()[i]) - p[i];
    if (C.contains_interior(mirrored)) rhs = (C.dim() % 2) ? -1 : 1;
    if (detail::on_equalities(C.equalities(), p))
      for (const auto& F : C.faces()) {
        bool in = true;
        for (auto i : indices_of(F.active_facets))
          if (detail::side(C.facets()[i], p) > 0) in = false;
        if (in) lhs += (F.dim % 2) ? -1 : 1;
      }
    ++r.points;
    if (lhs != rhs) {
      r.failure = IndicatorSample{p, lhs, rhs};
      return r;
    }
  }
  return r;
}

/// BG:       [P](p)                    = sum_F (-1)^dim F [T_P(F)](p)
/// InvBG:    (-1)^dim P [relint P](p)  = sum_F (-1)^dim F [T^-1_P(F)](p)
/// RelBG:    [P \ |Δ|](p)              = sum_F (-1)^dim F [T_{P,Δ}(F)](p)
/// RelBGInv: (-1)^dim P [P \ |Δ'|](p)  = sum_F (-1)^dim F [T^-1_{P,Δ}(F)](p)
/// T_{P,Δ}(F) makes the inequalities of the Δ-facets active at F strict; its
/// inverted version reverses every active inequality, keeping Δ-facets strict.
inline IndicatorReport check_indicator_identity(IndicatorKind kind, const Polytope& P, IndexSet delta,
                                                const std::vector<RatVector>& points) {
  if (kind == IndicatorKind::ConeBG) return check_cone_bg(homogenize(P), points);
  if (exceeds(delta, P.facets().size())) throw InputError("facet index out of range");
  if (kind != IndicatorKind::RelBG && kind != IndicatorKind::RelBGInv) delta = 0;
  const IndexSet dual = all_bits(P.facets().size()) & ~delta;
  const bool inverted = kind == IndicatorKind::InvBG || kind == IndicatorKind::RelBGInv;
  const auto faces = face_lattice(P).faces;
  IndicatorReport r;
  r.kind = kind;
  for (const auto& p : points) {
    if (p.size() != P.ambient_dim()) throw InputError("sample point has the wrong dimension");
    const bool on_hull = detail::on_equalities(P.equalities(), p);
    auto in_region = [&](IndexSet strict) {
      if (!P.contains(p)) return false;
      for (auto i : indices_of(strict))
        if (P.facets()[i].slack(p) == 0) return false;
      return true;
    };
    Integer lhs;
    const Integer sign = (P.dim() % 2) ? -1 : 1;
    switch (kind) {
      case IndicatorKind::BG: lhs = in_region(0); break;
      case IndicatorKind::InvBG: lhs = sign * in_region(all_bits(P.facets().size())); break;
      case IndicatorKind::RelBG: lhs = in_region(delta); break;
      default: lhs = sign * in_region(dual); break;
    }
    Integer rhs = 0;
    if (on_hull)
      for (const auto& F : faces) {
        bool in = true;
        for (auto i : indices_of(F.active_facets)) {
          int s = detail::side(P.facets()[i], p);
          if (inverted) s = -s;
          if (s > 0 || (s == 0 && (delta & bit(i)))) in = false;
        }
        if (in) rhs += (F.dim % 2) ? -1 : 1;
      }
    ++r.points;
    if (lhs != rhs) {
      r.failure = IndicatorSample{p, lhs, rhs};
      return r;
    }
  }
  return r;
}

/// Lattice points of [-radius, radius]^dim followed by `random_count` seeded
/// rational points q/m with m in [1, 7] inside the same box.
inline std::vector<RatVector> indicator_points(std::size_t dim, std::int64_t radius, int random_count,
                                               std::uint64_t seed) {
  std::vector<RatVector> out;
  detail::for_each_box_point(IntVector(dim, -radius), IntVector(dim, radius),
                             [&](const IntVector& x) { out.push_back(to_rational(x)); });
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> den(1, 7);
  for (int t = 0; t < random_count; ++t) {
    RatVector p(dim);
    for (auto& c : p) {
      long m = den(rng);
      std::uniform_int_distribution<long> num(-radius * m, radius * m);
      c = make_rational(num(rng), m);
    }
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relative Brion

struct VertexCone {
  std::size_t vertex = 0;
  Cone cone;                          // v + cone(edge directions), ray j toward adjacent[j]
  std::vector<std::size_t> adjacent;  // vertex indices
};

/// Vertex cones of P; with `mirror_apex` the apex is -v instead of v (the
/// directions are unchanged).
inline std::vector<VertexCone> vertex_cones(const Polytope& P, bool mirror_apex = false) {
  FaceLattice L = face_lattice(P);
  std::vector<VertexCone> out;
  for (std::size_t v = 0; v < P.vertices().size(); ++v) {
    VertexCone vc;
    vc.vertex = v;
    vc.adjacent = adjacent_vertices(L, v);
    std::vector<IntVector> gens;
    for (auto w : vc.adjacent) gens.push_back(primitive(detail::subtract(P.vertices()[w], P.vertices()[v])));
    IntVector apex = P.vertices()[v];
    if (mirror_apex) apex = detail::negate(apex);
    vc.cone = Cone::from_generators(gens, apex);
    if (vc.cone.generators().size() != gens.size()) throw std::logic_error("vertex cone lost an edge direction");
    out.push_back(std::move(vc));
  }
  return out;
}

/// The complex of C_v induced by Δ: faces of P in Δ through v, as ray sets.
inline PolyhedralComplex localize(const PolyhedralComplex& delta, const VertexCone& vc) {
  auto u = cone_face_universe(vc.cone);
  if (delta.is_void() || !delta.contains(bit(vc.vertex))) return PolyhedralComplex::void_complex(u);
  std::vector<CellFace> cells;
  for (const auto& f : delta.faces()) {
    if (!(f.vertices & bit(vc.vertex))) continue;
    IndexSet rays = 0;
    for (std::size_t j = 0; j < vc.adjacent.size(); ++j)
      if (f.vertices & bit(vc.adjacent[j])) rays |= bit(j);
    if (rays == 0) continue;
    cells.push_back({rays, f.dim - 1});
  }
  return PolyhedralComplex(u, std::move(cells), true);
}

struct BrionReport {
  IndexSet delta = 0;
  IndexSet dual = 0;
  CMStatus cm;
  EqualityVerdict statement1;              // F_{P\Δ} = sum of F_{T_{P,Δ}(v)}
  bool statement2 = false;                 // (-1)^d F_{P\Δ}(1/x) = F_{-(P\Δ')}(x), coefficient-exact
  LaurentPolynomial statement2_lhs, statement2_rhs;
  EqualityVerdict statement2_vertex_form;  // (-1)^d F_{P\Δ}(1/x) = sum_v x^-v F_{K_v \ Δ'_v}(x)
  std::vector<EqualityVerdict> per_vertex;  // (-1)^d F_{T(v)}(1/x) = x^-v F_{K_v \ Δ'_v}(x)
  bool verified() const { return statement1.equal && statement2; }
};

inline BrionReport verify_relative_brion(const Polytope& P, IndexSet delta_facets, int trials, std::uint64_t seed) {
  if (!P.full_dimensional()) throw InputError("verify_relative_brion: polytope must be full-dimensional");
  if (exceeds(delta_facets, P.facets().size())) throw InputError("facet index out of range");
  BrionReport r;
  r.delta = delta_facets;
  r.dual = all_bits(P.facets().size()) & ~delta_facets;
  auto u = face_universe(P);
  auto delta = facet_subcomplex(P, r.delta, u);
  auto dual = facet_subcomplex(P, r.dual, u);
  r.cm = cm_status(delta);
  const int d = P.dim();
  const std::size_t D = P.ambient_dim();

  LaurentPolynomial lhs = polytope_series(P, r.delta);
  RationalGenFun cones(D), vertex_form(D);
  auto forward = vertex_cones(P);
  auto backward = vertex_cones(P, true);
  for (std::size_t v = 0; v < forward.size(); ++v) {
    auto T = genfun_region(forward[v].cone, localize(delta, forward[v]));
    cones += T;
    auto mirrored = genfun_region(backward[v].cone, localize(dual, backward[v]));
    vertex_form += mirrored;
    auto sub = substitute_reciprocal(T);
    if (d % 2) sub = sub.scaled(-1);
    r.per_vertex.push_back(rational_equal(sub, mirrored, trials, seed));
  }
  r.statement1 = rational_equal(RationalGenFun::from_polynomial(lhs), cones, trials, seed);

  r.statement2_lhs = lhs.reciprocal().scaled((d % 2) ? -1 : 1);
  r.statement2_rhs = polytope_series(P, r.dual).reciprocal();
  r.statement2 = r.statement2_lhs == r.statement2_rhs;
  r.statement2_vertex_form =
      rational_equal(RationalGenFun::from_polynomial(r.statement2_lhs), vertex_form, trials, seed);
  return r;
}

}  // namespace recip
