#pragma once

// Exact integer and rational linear algebra: Smith normal form, Lagrange
// interpolation, Gaussian elimination over Q.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace recip {

using Integer = mpz_class;
using Rational = mpq_class;

/// Malformed or out-of-contract input (bad file, index out of range, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Lattice vectors, exponent vectors and facet normals. Desk-scale data fits
/// comfortably; conversions from exact values go through to_int64.
using IntVector = std::vector<std::int64_t>;
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

inline std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

inline Integer to_integer(std::int64_t v) {
  Integer z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
  return z;
}

inline Rational to_rational(std::int64_t v) { return Rational(to_integer(v)); }

inline RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (auto x : v) out.push_back(to_rational(x));
  return out;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InputError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p" or "p/q". Decimal points and exponents are rejected so
/// that every number entering the system is exact.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-')
    throw InputError("not an exact rational literal: '" + s + "'");
  return make_rational(Integer(strip_plus(num)), Integer(strip_plus(den)));
}

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const IntVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += to_rational(a[i]) * b[i];
  return s;
}

inline Integer gcd_of(const IntVector& v) {
  Integer g = 0;
  for (auto x : v) g = gcd(g, to_integer(x));
  return g;
}

/// Scales a nonzero vector to the primitive integer vector in the same direction.
inline IntVector primitive(const IntVector& v) {
  Integer g = gcd_of(v);
  if (g == 0) throw std::domain_error("primitive() of the zero vector");
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_int64(to_integer(v[i]) / g);
  return out;
}

/// Clears denominators and returns the primitive integer vector along v.
inline IntVector primitive(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, x.get_den());
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * l;
    out[i] = to_int64(s.get_num());
  }
  return primitive(out);
}

// ---------------------------------------------------------------------------
// Integer matrices and Smith normal form

struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> entries;  // row-major

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, Integer(0)) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<long>>& data) {
    IntMatrix m(data.size(), data.empty() ? 0 : data.front().size());
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (data[i].size() != m.cols) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = data[i][j];
    }
    return m;
  }

  Integer& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Integer& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

struct SNFResult {
  std::vector<Integer> diagonal;  // d_1 | d_2 | ... , zeros last; length min(rows, cols)
  std::size_t rank = 0;
};

namespace detail {

inline void swap_rows(IntMatrix& a, std::size_t i, std::size_t k) {
  if (i == k) return;
  for (std::size_t j = 0; j < a.cols; ++j) std::swap(a.at(i, j), a.at(k, j));
}

inline void swap_cols(IntMatrix& a, std::size_t j, std::size_t k) {
  if (j == k) return;
  for (std::size_t i = 0; i < a.rows; ++i) std::swap(a.at(i, j), a.at(i, k));
}

}  // namespace detail

/// Smith normal form by elementary row/column operations, always pivoting on
/// an entry of minimal absolute value.
inline SNFResult smith_normal_form(IntMatrix a) {
  const std::size_t n = std::min(a.rows, a.cols);
  std::size_t t = 0;
  for (; t < n; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pi = a.rows, pj = a.cols;
    for (std::size_t i = t; i < a.rows; ++i)
      for (std::size_t j = t; j < a.cols; ++j)
        if (a.at(i, j) != 0 && (pi == a.rows || abs(a.at(i, j)) < abs(a.at(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == a.rows) break;
    detail::swap_rows(a, t, pi);
    detail::swap_cols(a, t, pj);

    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < a.rows; ++i) {
        if (a.at(i, t) == 0) continue;
        Integer q = a.at(i, t) / a.at(t, t);
        for (std::size_t j = t; j < a.cols; ++j) a.at(i, j) -= q * a.at(t, j);
        if (a.at(i, t) != 0) {
          detail::swap_rows(a, t, i);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < a.cols; ++j) {
        if (a.at(t, j) == 0) continue;
        Integer q = a.at(t, j) / a.at(t, t);
        for (std::size_t i = t; i < a.rows; ++i) a.at(i, j) -= q * a.at(i, t);
        if (a.at(t, j) != 0) {
          detail::swap_cols(a, t, j);
          changed = true;
        }
      }
      if (changed) continue;
      // Pivot row and column are clear; enforce divisibility of the rest.
      for (std::size_t i = t + 1; i < a.rows && !changed; ++i)
        for (std::size_t j = t + 1; j < a.cols; ++j)
          if (a.at(i, j) % a.at(t, t) != 0) {
            for (std::size_t k = t; k < a.cols; ++k) a.at(t, k) += a.at(i, k);
            changed = true;
            break;
          }
      if (!changed) break;
    }
    a.at(t, t) = abs(a.at(t, t));
  }
  SNFResult out;
  out.diagonal.assign(n, Integer(0));
  for (std::size_t i = 0; i < t; ++i) out.diagonal[i] = a.at(i, i);
  out.rank = t;
  return out;
}

/// Sparse integer matrix used for boundary maps. Unit pivots are eliminated
/// sparsely; whatever is left goes through the dense smith_normal_form.
class SparseIntMatrix {
 public:
  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_data_(rows) {}

  void add(std::size_t i, std::size_t j, long v) {
    auto& row = row_data_[i];
    auto it = std::lower_bound(row.begin(), row.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != row.end() && it->first == j) {
      it->second += v;
      if (it->second == 0) row.erase(it);
    } else if (v != 0) {
      row.insert(it, {j, Integer(v)});
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  SNFResult smith() const;

 private:
  using Row = std::vector<std::pair<std::size_t, Integer>>;
  std::size_t rows_, cols_;
  std::vector<Row> row_data_;
};

inline SNFResult SparseIntMatrix::smith() const {
  std::vector<Row> rows = row_data_;
  std::vector<std::vector<std::size_t>> col_rows(cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, v] : rows[i]) col_rows[j].push_back(i);
  std::vector<bool> row_alive(rows.size(), true), col_alive(cols_, true);
  std::size_t units = 0;

  auto axpy = [](Row& target, const Row& src, const Integer& factor) {
    Row out;
    out.reserve(target.size() + src.size());
    std::size_t a = 0, b = 0;
    while (a < target.size() || b < src.size()) {
      if (b == src.size() || (a < target.size() && target[a].first < src[b].first)) {
        out.push_back(std::move(target[a++]));
      } else if (a == target.size() || src[b].first < target[a].first) {
        out.emplace_back(src[b].first, -factor * src[b].second);
        ++b;
      } else {
        Integer v = target[a].second - factor * src[b].second;
        if (v != 0) out.emplace_back(target[a].first, std::move(v));
        ++a;
        ++b;
      }
    }
    target = std::move(out);
  };

  for (;;) {
    std::size_t best_r = rows.size(), best_c = 0, best_cost = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!row_alive[i]) continue;
      for (const auto& [j, v] : rows[i]) {
        if (abs(v) != 1) continue;
        std::size_t live = 0;
        for (auto r : col_rows[j])
          if (row_alive[r]) ++live;
        std::size_t cost = (rows[i].size() - 1) * (live - 1);
        if (best_r == rows.size() || cost < best_cost) {
          best_r = i;
          best_c = j;
          best_cost = cost;
        }
        if (best_cost == 0) break;
      }
      if (best_r != rows.size() && best_cost == 0) break;
    }
    if (best_r == rows.size()) break;

    Integer pivot;
    for (const auto& [j, v] : rows[best_r])
      if (j == best_c) pivot = v;
    std::vector<std::size_t> targets;
    for (auto r : col_rows[best_c])
      if (r != best_r && row_alive[r]) targets.push_back(r);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (auto r : targets) {
      Integer entry = 0;
      for (const auto& [j, v] : rows[r])
        if (j == best_c) entry = v;
      if (entry == 0) continue;
      axpy(rows[r], rows[best_r], entry * pivot);
      for (const auto& [j, v] : rows[r]) col_rows[j].push_back(r);
    }
    row_alive[best_r] = false;
    col_alive[best_c] = false;
    ++units;
  }

  // Residual block: live rows restricted to live columns (pivot columns are
  // zero in every live row after elimination).
  std::vector<std::size_t> live_rows, live_cols;
  std::vector<std::size_t> col_index(cols_, cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (row_alive[i] && !rows[i].empty()) live_rows.push_back(i);
  for (auto i : live_rows)
    for (const auto& [j, v] : rows[i])
      if (col_index[j] == cols_) {
        col_index[j] = live_cols.size();
        live_cols.push_back(j);
      }
  IntMatrix dense(live_rows.size(), live_cols.size());
  for (std::size_t r = 0; r < live_rows.size(); ++r)
    for (const auto& [j, v] : rows[live_rows[r]]) dense.at(r, col_index[j]) = v;
  SNFResult rest = smith_normal_form(dense);

  SNFResult out;
  out.diagonal.assign(std::min(rows_, cols_), Integer(0));
  for (std::size_t i = 0; i < units; ++i) out.diagonal[i] = 1;
  for (std::size_t i = 0; i < rest.rank; ++i) out.diagonal[units + i] = rest.diagonal[i];
  out.rank = units + rest.rank;
  return out;
}

// ---------------------------------------------------------------------------
// Rational linear algebra

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(RatMatrix a) { return row_reduce(a).size(); }

inline std::size_t rank(const std::vector<IntVector>& rows) {
  RatMatrix a;
  for (const auto& r : rows) a.push_back(to_rational(r));
  return rank(std::move(a));
}

/// Basis of { x : A x = 0 } for a matrix with `cols` columns.
inline RatMatrix nullspace(RatMatrix a, std::size_t cols) {
  auto pivots = row_reduce(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  RatMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One exact solution of A x = b, or nothing when the system is inconsistent.
inline std::optional<RatVector> solve_linear(const RatMatrix& a, const RatVector& b) {
  if (a.size() != b.size()) throw InputError("solve_linear: row count mismatch");
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  RatMatrix aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != cols) throw InputError("solve_linear: ragged matrix");
    RatVector row = a[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  RatVector x(cols, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

// ---------------------------------------------------------------------------
// Univariate polynomials with rational coefficients (index = power)

using Coefficients = std::vector<Rational>;

inline Rational evaluate(const Coefficients& c, const Rational& x) {
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline void trim(Coefficients& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

/// Lagrange interpolation through the given points; the result has degree
/// below the number of points and trailing zero coefficients removed.
inline Coefficients interpolate_polynomial(std::span<const std::pair<Rational, Rational>> points) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw InputError("interpolate_polynomial: duplicate abscissa " + to_string(points[i].first));
  Coefficients result(points.size(), Rational(0));
  for (std::size_t i = 0; i < points.size(); ++i) {
    Coefficients basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      Coefficients next(basis.size() + 1, Rational(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * points[j].first;
      }
      basis = std::move(next);
      denom *= points[i].first - points[j].first;
    }
    Rational scale = points[i].second / denom;
    for (std::size_t k = 0; k < basis.size(); ++k) result[k] += basis[k] * scale;
  }
  trim(result);
  return result;
}

inline Coefficients interpolate_polynomial(const std::vector<std::pair<Rational, Rational>>& points) {
  return interpolate_polynomial(std::span<const std::pair<Rational, Rational>>(points));
}

inline Rational pow(const Rational& base, std::int64_t exponent) {
  if (exponent == 0) return 1;
  if (base == 0) {
    if (exponent < 0) throw std::domain_error("zero to a negative power");
    return 0;
  }
  auto e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  return exponent < 0 ? make_rational(den, num) : make_rational(num, den);
}

inline std::int64_t sign_power(std::int64_t exponent) { return (exponent % 2 == 0) ? 1 : -1; }

}  // namespace recip
