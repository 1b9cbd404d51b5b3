#pragma once

// Exact linear algebra over ℤ and ℚ: rank, rational span membership, Smith
// normal form with unimodular certificates, integer span solving, and the
// order of an element in the cokernel ℤⁿ / ⟨rows⟩.

#include "clk/errors.hpp"
#include "clk/matrix.hpp"
#include "clk/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace clk {

/// Rank by fraction-free elimination.
inline std::size_t rank(IntMatrix m) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t p = r;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, col) == 0) continue;
      const Integer a = m(r, col), b = m(i, col);
      const Integer g = gcd(a, b);
      const Integer fa = a / g, fb = b / g;
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) * fa - m(r, j) * fb;
    }
    ++r;
  }
  return r;
}

namespace detail {

inline IntVec clear_denominators(const QVec& q) {
  Integer l = 1;
  for (const auto& x : q) l = lcm(l, boost::multiprecision::denominator(x));
  IntVec z(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    z[i] = boost::multiprecision::numerator(q[i]) * (l / boost::multiprecision::denominator(q[i]));
  return z;
}

inline IntMatrix append_row(const IntMatrix& m, const IntVec& row) {
  IntMatrix out(m.rows() + 1, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  for (std::size_t j = 0; j < m.cols(); ++j) out(m.rows(), j) = row[j];
  return out;
}

}  // namespace detail

/// True iff q lies in the rational row span of M.
inline bool qspan_contains(const IntMatrix& m, const QVec& q) {
  if (q.size() != m.cols()) throw DimensionError("qspan_contains: dimension mismatch");
  const IntVec z = detail::clear_denominators(q);
  if (std::all_of(z.begin(), z.end(), [](const Integer& x) { return x == 0; })) return true;
  return rank(detail::append_row(m, z)) == rank(m);
}

inline bool qspan_contains(const IntMatrix& m, const IntVec& z) {
  return qspan_contains(m, to_qvec(z));
}

/// Rational coefficients c with cᵀM = q, free variables set to zero, or
/// nullopt when q is outside the span. Plain Gauss-Jordan over ℚ.
inline std::optional<QVec> qspan_solve(const IntMatrix& m, const QVec& q) {
  if (q.size() != m.cols()) throw DimensionError("qspan_solve: dimension mismatch");
  const std::size_t eqs = m.cols(), unknowns = m.rows();
  std::vector<QVec> a(eqs, QVec(unknowns + 1));
  for (std::size_t j = 0; j < eqs; ++j) {
    for (std::size_t i = 0; i < unknowns; ++i) a[j][i] = Rational(m(i, j));
    a[j][unknowns] = q[j];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < unknowns && r < eqs; ++c) {
    std::size_t p = r;
    while (p < eqs && a[p][c] == 0) ++p;
    if (p == eqs) continue;
    std::swap(a[r], a[p]);
    const Rational inv = Rational(1) / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < eqs; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t k = c; k <= unknowns; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < eqs; ++i)
    if (a[i][unknowns] != 0) return std::nullopt;
  QVec c(unknowns);
  for (std::size_t i = 0; i < r; ++i) c[pivot_col[i]] = a[i][unknowns];
  return c;
}

/// U·M·V = D with U, V unimodular and D diagonal, d₁ | d₂ | … | d_rank > 0.
struct SNFResult {
  IntMatrix U;
  IntMatrix V;
  IntMatrix D;
  std::size_t rank = 0;

  /// Nonzero diagonal entries d₁ | d₂ | … (all positive).
  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
    return out;
  }
  /// Invariant factors greater than one: the torsion part of the cokernel.
  std::vector<Integer> torsion_factors() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < rank; ++i)
      if (D(i, i) > 1) out.push_back(D(i, i));
    return out;
  }
  /// Rank of the free part of ℤ^cols / ⟨rows⟩.
  std::size_t free_rank() const { return D.cols() - rank; }
};

inline SNFResult smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SNFResult res{IntMatrix::identity(rows), IntMatrix::identity(cols), m, 0};
  IntMatrix& d = res.D;
  IntMatrix& u = res.U;
  IntMatrix& v = res.V;

  auto move_to_pivot = [&](std::size_t t, std::size_t i, std::size_t j) {
    d.swap_rows(t, i);
    u.swap_rows(t, i);
    d.swap_cols(t, j);
    v.swap_cols(t, j);
  };

  const std::size_t n = std::min(rows, cols);
  std::size_t t = 0;
  for (; t < n; ++t) {
    // least absolute value in the trailing block
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (d(i, j) != 0 && (!best || abs(d(i, j)) < abs(d(best->first, best->second))))
          best = {i, j};
    if (!best) break;
    move_to_pivot(t, best->first, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        const Integer q = d(i, t) / d(t, t);
        d.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        const Integer q = d(t, j) / d(t, t);
        d.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // a remainder is now smaller than the pivot; promote it
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (d(i, t) != 0 && abs(d(i, t)) < abs(d(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(t, j) != 0 && abs(d(t, j)) < abs(d(bi, bj))) bi = t, bj = j;
        move_to_pivot(t, bi, bj);
        continue;
      }
      // divisibility of the trailing block by the pivot
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      d.add_row(t, *bad_row, 1);
      u.add_row(t, *bad_row, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  res.rank = t;
  return res;
}

/// Checks U·M·V = D, unimodularity, diagonal shape and the divisibility chain.
inline bool verify_snf(const IntMatrix& m, const SNFResult& s) {
  if (s.U.rows() != m.rows() || s.V.rows() != m.cols()) return false;
  if (!(s.U * m * s.V == s.D)) return false;
  if (abs(determinant(s.U)) != 1 || abs(determinant(s.V)) != 1) return false;
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j) {
      if (i != j && s.D(i, j) != 0) return false;
      if (i == j && i >= s.rank && s.D(i, j) != 0) return false;
    }
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (s.D(i, i) <= 0) return false;
    if (i + 1 < s.rank && s.D(i + 1, i + 1) % s.D(i, i) != 0) return false;
  }
  return true;
}

/// Integer coefficients c with cᵀM = z, or nullopt.
inline std::optional<IntVec> zspan_solve(const IntMatrix& m, const SNFResult& s,
                                         const IntVec& z) {
  if (z.size() != m.cols()) throw DimensionError("zspan_solve: dimension mismatch");
  // cᵀ·U⁻¹·D = z·V, so solve x·D = y with y = z·V and take cᵀ = x·U.
  const IntVec y = row_times(z, s.V);
  IntVec x(m.rows());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < s.rank) {
      if (y[i] % s.D(i, i) != 0) return std::nullopt;
      x[i] = y[i] / s.D(i, i);
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  IntVec c = row_times(x, s.U);
  if (row_times(c, m) != z) throw std::logic_error("zspan_solve: certificate failed to verify");
  return c;
}

inline std::optional<IntVec> zspan_solve(const IntMatrix& m, const IntVec& z) {
  return zspan_solve(m, smith_normal_form(m), z);
}

/// Order of an element in an abelian group: finite positive k, or infinite.
class ElementOrder {
 public:
  static ElementOrder finite(Integer k) { return ElementOrder(std::move(k)); }
  static ElementOrder infinite() { return ElementOrder(); }

  bool is_finite() const noexcept { return order_.has_value(); }
  const Integer& value() const { return order_.value(); }

  friend bool operator==(const ElementOrder&, const ElementOrder&) = default;

 private:
  ElementOrder() = default;
  explicit ElementOrder(Integer k) : order_(std::move(k)) {}

  std::optional<Integer> order_;
};

/// Order of the image of z in ℤⁿ / ⟨rows of M⟩, read off the Smith form.
inline ElementOrder element_order_in_quotient(const IntMatrix& m, const SNFResult& s,
                                              const IntVec& z) {
  if (z.size() != m.cols()) throw DimensionError("element_order: dimension mismatch");
  const IntVec y = row_times(z, s.V);
  Integer k = 1;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i >= s.rank) {
      if (y[i] != 0) return ElementOrder::infinite();
      continue;
    }
    const Integer& di = s.D(i, i);
    k = lcm(k, di / gcd(di, y[i]));
  }
  return ElementOrder::finite(k);
}

inline ElementOrder element_order_in_quotient(const IntMatrix& m, const IntVec& z) {
  return element_order_in_quotient(m, smith_normal_form(m), z);
}

}  // namespace clk
