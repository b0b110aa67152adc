#pragma once

// Lattice-point valuations of half-open polytopes P \ |B|, their Ehrhart
// polynomials, and the reciprocity checks relating P \ |B| to -(P \ |D|).

#include <recip/topology.hpp>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace recip {

inline constexpr std::int64_t kMaxBoxPoints = 10'000'000;

namespace detail {

inline void guard_box(const IntVector& lo, const IntVector& hi) {
  long double total = 1;
  for (std::size_t c = 0; c < lo.size(); ++c) total *= static_cast<long double>(hi[c] - lo[c] + 1);
  if (total > static_cast<long double>(kMaxBoxPoints))
    throw InputError("counting box exceeds " + std::to_string(kMaxBoxPoints) + " candidate points");
}

/// Calls f on every integer point of the box [lo, hi].
template <class F>
void for_each_box_point(const IntVector& lo, const IntVector& hi, F&& f) {
  guard_box(lo, hi);
  IntVector x = lo;
  const std::size_t d = lo.size();
  if (d == 0) {
    f(x);
    return;
  }
  while (true) {
    f(x);
    std::size_t c = 0;
    while (c < d && x[c] == hi[c]) {
      x[c] = lo[c];
      ++c;
    }
    if (c == d) return;
    ++x[c];
  }
}

/// Is x in n * (P minus the facets in `strict`)?
inline bool in_dilate(const Polytope& P, IndexSet strict, std::int64_t n, const IntVector& x) {
  for (const auto& e : P.equalities())
    if (e.value(x) != n * e.offset) return false;
  const auto& facets = P.facets();
  for (std::size_t i = 0; i < facets.size(); ++i) {
    const std::int64_t v = facets[i].value(x), lim = n * facets[i].offset;
    if (v > lim || (v == lim && (strict & bit(i)))) return false;
  }
  return true;
}

}  // namespace detail

/// |n (P \ |B|) ∩ Z^d| where B is generated by the facets in `removed`:
/// the removed facets' inequalities become strict. Bounding-box enumeration.
inline Integer count_points(const Polytope& P, IndexSet removed, std::int64_t n) {
  if (n < 0) throw InputError("count_points: dilation must be nonnegative");
  if (exceeds(removed, P.facets().size())) throw InputError("removed facet index out of range");
  auto [lo, hi] = P.bounding_box(n);
  std::int64_t hits = 0;
  detail::for_each_box_point(lo, hi, [&](const IntVector& x) { hits += detail::in_dilate(P, removed, n, x); });
  return to_integer(hits);
}

inline Integer count_points(const Polytope& P, std::int64_t n) { return count_points(P, 0, n); }

inline Integer count_relint(const Polytope& P, std::int64_t n) {
  return count_points(P, all_bits(P.facets().size()), n);
}

/// A valuation evaluated on dilates nP of lattice polytopes.
class Valuation {
 public:
  virtual ~Valuation() = default;
  virtual std::string name() const = 0;
  virtual Integer operator()(const Polytope& P, std::int64_t n) const = 0;
};

class LatticeCount final : public Valuation {
 public:
  std::string name() const override { return "lattice_count"; }
  Integer operator()(const Polytope& P, std::int64_t n) const override { return count_points(P, n); }
};

/// 1 on every nonempty polytope.
class EulerCharacteristicValuation final : public Valuation {
 public:
  std::string name() const override { return "euler_characteristic"; }
  Integer operator()(const Polytope& P, std::int64_t) const override { return P.vertices().empty() ? 0 : 1; }
};

namespace detail {

class FacePolytopes {
 public:
  explicit FacePolytopes(const Polytope& P) : P_(P) {}
  const Polytope& get(IndexSet vertices) {
    auto it = cache_.find(vertices);
    if (it == cache_.end()) it = cache_.emplace(vertices, P_.face_polytope(vertices)).first;
    return it->second;
  }

 private:
  const Polytope& P_;
  std::map<IndexSet, Polytope> cache_;
};

}  // namespace detail

/// phi(n(P \ B)) = sum over J ⊆ B of (-1)^|J| phi(n F_J), F_J the intersection
/// of the facets in J (F_∅ = P); empty intersections contribute nothing.
inline Integer half_open_count_ie(const Polytope& P, IndexSet removed, const Valuation& phi, std::int64_t n) {
  if (exceeds(removed, P.facets().size())) throw InputError("removed facet index out of range");
  auto idx = indices_of(removed);
  if (idx.size() > 24) throw InputError("half_open_count_ie: too many removed facets");
  detail::FacePolytopes faces(P);
  Integer total = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << idx.size()); ++m) {
    IndexSet J = 0;
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (m & (std::uint64_t{1} << k)) J |= bit(idx[k]);
    IndexSet verts = P.vertices_on(J);
    if (verts == 0) continue;
    Integer v = phi(faces.get(verts), n);
    if (count(J) % 2) total -= v;
    else total += v;
  }
  return total;
}

/// phi(relint nP) = sum over nonempty faces F of (-1)^(dim P - dim F) phi(nF).
inline Integer relint_count_ie(const Polytope& P, const Valuation& phi, std::int64_t n) {
  detail::FacePolytopes faces(P);
  Integer total = 0;
  for (const auto& f : face_lattice(P).faces) {
    Integer v = phi(faces.get(f.vertices), n);
    if ((P.dim() - f.dim) % 2) total -= v;
    else total += v;
  }
  return total;
}

struct EhrhartPolynomial {
  Coefficients coefficients;  // constant term first

  Rational operator()(const Rational& n) const { return evaluate(coefficients, n); }
  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  bool operator==(const EhrhartPolynomial&) const = default;

  /// "n^4 - 2n^2 + 1"
  std::string to_string() const {
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const Rational& c = coefficients[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      Rational a = abs(c);
      if (out.empty()) out += c < 0 ? "-" : "";
      else out += c < 0 ? " - " : " + ";
      if (a != 1 || k == 0) out += recip::to_string(a);
      if (k > 0) out += "n";
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
  }
};

/// Interpolates n -> |n(P \ B) ∩ Z^d| at n = 1..dim+1, then checks the fit
/// at the next `extra_checks` dilations.
inline EhrhartPolynomial ehrhart_polynomial(const Polytope& P, IndexSet removed = 0, int extra_checks = 1) {
  const int d = std::max(P.dim(), 0);
  std::vector<std::pair<Rational, Rational>> pts;
  for (std::int64_t n = 1; n <= d + 1; ++n) pts.emplace_back(to_rational(n), Rational(count_points(P, removed, n)));
  EhrhartPolynomial E{interpolate_polynomial(pts)};
  for (std::int64_t n = d + 2; n < d + 2 + extra_checks; ++n)
    if (E(to_rational(n)) != Rational(count_points(P, removed, n)))
      throw std::logic_error("region is not polynomial");
  return E;
}

/// Facet set generating B, for B a pure subcomplex of B(P) of dimension
/// dim P - 1 (or void).
inline IndexSet facet_set_of(const Polytope& P, const PolyhedralComplex& B) {
  if (B.is_void() || B.empty()) return 0;
  IndexSet out = 0;
  for (const auto& f : B.maximal_faces()) {
    if (f.dim != P.dim() - 1) throw InputError("subcomplex is not full-dimensional (not generated by facets)");
    bool found = false;
    for (std::size_t i = 0; i < P.facets().size(); ++i)
      if (P.facet_vertices(i) == f.vertices) {
        out |= bit(i);
        found = true;
      }
    if (!found) throw InputError("subcomplex cell is not a facet of P");
  }
  return out;
}

/// W_sigma = (-1)^d sum over faces G of K \ B containing sigma of (-1)^dim G.
inline Integer w_coefficient(const PolyhedralComplex& K, const PolyhedralComplex& B, IndexSet sigma) {
  if (!K.contains(sigma)) throw InputError("w_coefficient: face is not in K");
  long s = 0;
  for (const auto& g : K.faces())
    if (is_subset(sigma, g.vertices) && !B.contains(g.vertices)) s += (g.dim % 2) ? -1 : 1;
  return (K.dim() % 2) ? -s : s;
}

/// The same coefficient through link topology:
/// (-1)^(d - dim sigma + 1) (chi~(lk_K sigma) - chi~(lk_B sigma)).
inline Integer w_coefficient_via_links(const PolyhedralComplex& K, const PolyhedralComplex& B, IndexSet sigma) {
  if (!K.contains(sigma)) throw InputError("w_coefficient: face is not in K");
  int sdim = 0;
  for (const auto& g : K.faces())
    if (g.vertices == sigma) sdim = g.dim;
  long chi_k = reduced_homology(link_order_complex(K, sigma)).euler_characteristic();
  long chi_b = reduced_homology(link_order_complex(B, sigma)).euler_characteristic();
  long v = chi_k - chi_b;
  return ((K.dim() - sdim + 1) % 2) ? -v : v;
}

struct ReciprocityRow {
  std::int64_t n = 0;
  Rational reciprocal;      // (-1)^d E_{P,B}(-n), from the polynomial
  Integer dual_count;       // |n(-(P \ D)) ∩ Z^d|, counted directly
  Integer symmetric_count;  // |n(P \ D) ∩ Z^d|
  Rational w_sum;           // sum over sigma of W_sigma |relint(n sigma) ∩ Z^d|
  bool holds = false;
};

struct ReciprocityReport {
  int dim = 0;
  IndexSet removed = 0;     // facets generating B
  IndexSet complement = 0;  // facets generating D
  EhrhartPolynomial polynomial;       // E_{P,B}
  EhrhartPolynomial dual_polynomial;  // E_{-(P \ D)}
  CMStatus cm;
  std::vector<ReciprocityRow> rows;
  // n = 0
  Rational signed_e0;  // (-1)^d E_{P,B}(0)
  long chi_k = 0;      // chi~ of P with all its faces
  long chi_b = 0;      // chi~(B), 0 for the void complex
  Rational dual_e0;    // E_{-(P \ D)}(0)
  bool n0_literal_holds = false;  // (-1)^d E(0) = chi~(K) - chi~(B)
  bool n0_dual_holds = false;     // (-1)^d E(0) = E_{-(P \ D)}(0)
  bool w_recomposition_holds = false;
  bool w_indicator_holds = false;  // W_sigma = [sigma not in D] for every face
  bool verified = false;
  std::optional<std::int64_t> first_failure;
};

/// Checks (-1)^d E_{P,B}(-n) = |n(-(P \ D)) ∩ Z^d| for n = 1..n_max together
/// with the n = 0 statement. D is the complex generated by the facets not in B.
inline ReciprocityReport verify_reciprocity(const Polytope& P, IndexSet removed, std::int64_t n_max) {
  if (P.dim() < 1) throw InputError("verify_reciprocity: polytope must have dimension >= 1");
  if (exceeds(removed, P.facets().size())) throw InputError("removed facet index out of range");
  if (n_max < 1) throw InputError("n_max must be positive");
  ReciprocityReport r;
  r.dim = P.dim();
  r.removed = removed;
  r.complement = all_bits(P.facets().size()) & ~removed;
  const Polytope negP = P.negated();
  r.polynomial = ehrhart_polynomial(P, removed);
  r.dual_polynomial = ehrhart_polynomial(negP, r.complement);

  auto K = full_complex(P);
  auto B = facet_subcomplex(P, removed, K.universe());
  auto D = facet_subcomplex(P, r.complement, K.universe());
  r.cm = cm_status(B);

  const Rational sign = to_rational(sign_power(r.dim));
  std::vector<std::pair<IndexSet, Integer>> w;
  for (const auto& f : K.faces()) w.emplace_back(f.vertices, w_coefficient(K, B, f.vertices));
  detail::FacePolytopes faces(P);

  r.w_indicator_holds = true;
  for (const auto& [s, ws] : w)
    if (ws != (D.contains(s) ? 0 : 1)) r.w_indicator_holds = false;

  r.verified = true;
  r.w_recomposition_holds = true;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    ReciprocityRow row;
    row.n = n;
    row.reciprocal = sign * r.polynomial(to_rational(-n));
    row.dual_count = count_points(negP, r.complement, n);
    row.symmetric_count = count_points(P, r.complement, n);
    for (const auto& [s, ws] : w)
      if (ws != 0) row.w_sum += Rational(ws * count_relint(faces.get(s), n));
    row.holds = row.reciprocal == Rational(row.dual_count);
    if (row.w_sum != row.reciprocal) r.w_recomposition_holds = false;
    if (!row.holds) {
      r.verified = false;
      if (!r.first_failure) r.first_failure = n;
    }
    r.rows.push_back(std::move(row));
  }

  r.signed_e0 = sign * r.polynomial(0);
  r.chi_k = reduced_euler_char(K);
  r.chi_b = reduced_euler_char(B);
  r.dual_e0 = r.dual_polynomial(0);
  r.n0_dual_holds = r.signed_e0 == r.dual_e0;
  r.n0_literal_holds = r.signed_e0 == Rational(to_integer(r.chi_k - r.chi_b));
  // The n = 0 identity is asserted for full-dimensional B only.
  if (!r.n0_dual_holds || (removed != 0 && !r.n0_literal_holds)) {
    r.verified = false;
    if (!r.first_failure) r.first_failure = 0;
  }
  return r;
}

}  // namespace recip
