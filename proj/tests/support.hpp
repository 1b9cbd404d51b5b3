#pragma once

// Shared fixtures, random generators and independent oracles for the test
// suites. Oracles here deliberately avoid the library's algorithms: plain
// BFS inside a bounding box, exhaustive coefficient search, cofactor
// determinants, brute-force translate enumeration, flood fill.

#include "clk/clk.hpp"
#include "clk/report.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace clk {

// Readable GoogleTest failure messages.
inline void PrintTo(const MultiVec& v, std::ostream* os) { *os << v.str(); }

inline void PrintTo(const IntMatrix& m, std::ostream* os) {
  *os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    *os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) *os << (j ? "," : "") << m(i, j);
    *os << "]";
  }
  *os << "]";
}

}  // namespace clk

namespace clk::testing {

inline SeparatedGraph toeplitz(bool cohn = false) {
  SeparatedGraph g;
  g.vertices = {"v", "w"};
  g.edges = {{"e", "v", "v"}, {"f", "v", "w"}};
  g.blocks = {{cohn ? "X" : "E", {"e", "f"}, !cohn}};
  validate(g);
  return g;
}

/// Two blocks X (m edges) and Y (n edges), all v -> w, Λ = Π.
inline SeparatedGraph two_block(int m, int n) {
  SeparatedGraph g;
  g.vertices = {"v", "w"};
  Block x{"X", {}, true}, y{"Y", {}, true};
  for (int i = 1; i <= m; ++i) {
    g.edges.push_back({"e" + std::to_string(i), "v", "w"});
    x.edges.push_back("e" + std::to_string(i));
  }
  for (int i = 1; i <= n; ++i) {
    g.edges.push_back({"f" + std::to_string(i), "v", "w"});
    y.edges.push_back("f" + std::to_string(i));
  }
  g.blocks = {x, y};
  validate(g);
  return g;
}

/// One vertex with n loops in a single Λ block: v = n·v.
inline SeparatedGraph rose(int n) {
  Digraph d{{"v"}, {}};
  for (int i = 1; i <= n; ++i) d.edges.push_back({"e" + std::to_string(i), "v", "v"});
  return default_separation(d, SeparationMode::leavitt);
}

inline SeparatedGraph edgeless(int n) {
  Digraph d;
  for (int i = 0; i < n; ++i) d.vertices.push_back("u" + std::to_string(i));
  return default_separation(d, SeparationMode::leavitt);
}

enum class LambdaChoice { all, none, random };

/// Random separated graph: vertices in [1, max_v], edges in [0, max_e],
/// each source fiber split into random nonempty blocks.
inline SeparatedGraph random_graph(std::mt19937& rng, int max_v, int max_e, LambdaChoice lambda,
                                   bool acyclic = false) {
  std::uniform_int_distribution<int> nv(1, max_v);
  SeparatedGraph g;
  const int v = nv(rng);
  for (int i = 0; i < v; ++i) g.vertices.push_back("v" + std::to_string(i));
  std::uniform_int_distribution<int> ne(0, max_e);
  const int e = ne(rng);
  for (int i = 0; i < e; ++i) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    int s = pick(rng), t = pick(rng);
    if (acyclic) {
      if (v == 1) break;
      if (s == t) t = (s + 1) % v;
      if (s > t) std::swap(s, t);
    }
    g.edges.push_back({"e" + std::to_string(i), g.vertices[s], g.vertices[t]});
  }
  int block_id = 0;
  std::bernoulli_distribution coin(0.5);
  for (const auto& src : g.vertices) {
    std::vector<std::string> fiber;
    for (const auto& ed : g.edges)
      if (ed.src == src) fiber.push_back(ed.name);
    if (fiber.empty()) continue;
    std::shuffle(fiber.begin(), fiber.end(), rng);
    std::uniform_int_distribution<std::size_t> nb(1, fiber.size());
    const std::size_t blocks = std::min<std::size_t>(nb(rng), 3);
    std::vector<Block> made(blocks);
    for (std::size_t i = 0; i < fiber.size(); ++i) made[i % blocks].edges.push_back(fiber[i]);
    for (auto& b : made) {
      b.name = "B" + std::to_string(block_id++);
      b.in_lambda = lambda == LambdaChoice::all || (lambda == LambdaChoice::random && coin(rng));
      g.blocks.push_back(b);
    }
  }
  validate(g);
  return g;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t max_dim, int max_abs) {
  std::uniform_int_distribution<std::size_t> dim(0, max_dim);
  std::uniform_int_distribution<int> entry(-max_abs, max_abs);
  std::bernoulli_distribution sparse(0.3);
  IntMatrix m(dim(rng), std::max<std::size_t>(1, dim(rng)));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = sparse(rng) ? 0 : entry(rng);
  return m;
}

inline MultiVec random_multivec(std::mt19937& rng, std::size_t dim, int max_count,
                                bool nonzero = true) {
  std::uniform_int_distribution<int> c(0, max_count);
  for (;;) {
    std::vector<Integer> v(dim);
    for (auto& x : v) x = c(rng);
    MultiVec m(std::move(v));
    if (!nonzero || !m.is_zero()) return m;
  }
}

// ---- oracles ---------------------------------------------------------------

/// Cofactor expansion; small matrices only.
inline Integer cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    const Integer term = m(0, c) * cofactor_det(minor);
    det += (c % 2 == 0) ? term : Integer(-term);
  }
  return det;
}

/// Every c ∈ [-bound, bound]^rows with cᵀM = z.
inline std::vector<IntVec> exhaustive_zspan(const IntMatrix& m, const IntVec& z, int bound) {
  std::vector<IntVec> hits;
  IntVec c(m.rows(), -bound);
  if (m.rows() == 0) {
    if (std::all_of(z.begin(), z.end(), [](const Integer& x) { return x == 0; }))
      hits.push_back({});
    return hits;
  }
  for (;;) {
    if (row_times(c, m) == z) hits.push_back(c);
    std::size_t i = 0;
    while (i < c.size() && c[i] == bound) c[i++] = -bound;
    if (i == c.size()) break;
    ++c[i];
  }
  return hits;
}

/// Plain BFS restricted to points with every coordinate <= box. Returns true
/// when y is reached from x inside the box (a genuine equivalence).
inline bool boxed_reachable(const Presentation& p, const MultiVec& x, const MultiVec& y,
                            long box) {
  std::set<MultiVec> seen{x};
  std::deque<MultiVec> q{x};
  while (!q.empty()) {
    MultiVec cur = q.front();
    q.pop_front();
    if (cur == y) return true;
    for (const auto& r : p.relations) {
      for (int dir = 0; dir < 2; ++dir) {
        const MultiVec& rem = dir == 0 ? r.lhs : r.rhs;
        const MultiVec& add = dir == 0 ? r.rhs : r.lhs;
        bool ok = true;
        for (std::size_t i = 0; i < cur.size() && ok; ++i) ok = cur[i] >= rem[i];
        if (!ok) continue;
        std::vector<Integer> next(cur.size());
        bool inside = true;
        for (std::size_t i = 0; i < cur.size(); ++i) {
          next[i] = cur[i] - rem[i] + add[i];
          inside = inside && next[i] <= box;
        }
        if (!inside) continue;
        MultiVec n(std::move(next));
        if (seen.insert(n).second) q.push_back(n);
      }
    }
  }
  return false;
}

/// Unbounded plain BFS of a class, giving up after `limit` states.
inline std::optional<std::set<MultiVec>> brute_class(const Presentation& p, const MultiVec& x,
                                                     std::size_t limit) {
  std::set<MultiVec> seen{x};
  std::deque<MultiVec> q{x};
  while (!q.empty()) {
    MultiVec cur = q.front();
    q.pop_front();
    for (const auto& r : p.relations) {
      for (int dir = 0; dir < 2; ++dir) {
        const MultiVec& rem = dir == 0 ? r.lhs : r.rhs;
        const MultiVec& add = dir == 0 ? r.rhs : r.lhs;
        if (!cur.dominates(rem)) continue;
        MultiVec n = cur.rewrite(rem, add);
        if (seen.insert(n).second) {
          if (seen.size() > limit) return std::nullopt;
          q.push_back(n);
        }
      }
    }
  }
  return seen;
}

/// Translates by scanning every offset in a generous square.
inline std::size_t brute_translate_count(const Relation& r, const Window& w) {
  std::size_t count = 0;
  const std::int64_t span = 40;
  for (std::int64_t tx = -span; tx <= span; ++tx)
    for (std::int64_t ty = -span; ty <= span; ++ty) {
      if (w.domain == Domain::natural_quadrant && (tx < 0 || ty < 0)) continue;
      const Point a{static_cast<std::int64_t>(r.lhs[0]) + tx,
                    static_cast<std::int64_t>(r.lhs[1]) + ty};
      const Point b{static_cast<std::int64_t>(r.rhs[0]) + tx,
                    static_cast<std::int64_t>(r.rhs[1]) + ty};
      if (w.contains(a) && w.contains(b)) ++count;
    }
  return count;
}

/// Connected components of the in-window graph by repeated flood fill.
inline std::size_t flood_fill_components(const Presentation& p, const Window& w) {
  std::set<Point> nodes;
  for (std::int64_t x = w.lo[0]; x <= w.hi[0]; ++x)
    for (std::int64_t y = w.lo[1]; y <= w.hi[1]; ++y)
      if (w.contains({x, y})) nodes.insert({x, y});
  std::size_t comps = 0;
  std::set<Point> done;
  for (const auto& start : nodes) {
    if (done.contains(start)) continue;
    ++comps;
    std::vector<Point> stack{start};
    done.insert(start);
    while (!stack.empty()) {
      Point cur = stack.back();
      stack.pop_back();
      for (const auto& r : p.relations) {
        const Point d{static_cast<std::int64_t>(r.rhs[0]) - static_cast<std::int64_t>(r.lhs[0]),
                      static_cast<std::int64_t>(r.rhs[1]) - static_cast<std::int64_t>(r.lhs[1])};
        for (int sign : {1, -1}) {
          const Point n{cur[0] + sign * d[0], cur[1] + sign * d[1]};
          // the segment from cur to n is a translate t + {lhs, rhs}
          const Point from = sign == 1 ? cur : n;
          const Point t{from[0] - static_cast<std::int64_t>(r.lhs[0]),
                        from[1] - static_cast<std::int64_t>(r.lhs[1])};
          if (w.domain == Domain::natural_quadrant && (t[0] < 0 || t[1] < 0)) continue;
          if (!w.contains(n) || done.contains(n)) continue;
          done.insert(n);
          stack.push_back(n);
        }
      }
    }
  }
  return comps;
}

/// Endpoint of a random rewrite walk of at most `steps` moves.
inline MultiVec random_walk(const Presentation& p, MultiVec x, int steps, std::mt19937& rng) {
  for (int i = 0; i < steps; ++i) {
    const auto options = applicable_steps(p, x);
    if (options.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    x = options[pick(rng)].result;
  }
  return x;
}

/// Every nonzero point of {0..box}^dim.
inline std::vector<MultiVec> box_points(std::size_t dim, int box) {
  std::vector<MultiVec> out;
  std::vector<Integer> c(dim, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < dim && c[i] == box) c[i++] = 0;
    if (i == dim) break;
    ++c[i];
    out.emplace_back(c);
  }
  return out;
}

/// Closure operator on a finite window, from fully enumerated classes:
/// y is in the closure of A when some member of the class of some a ∈ A
/// dominates y.
class WindowClosure {
 public:
  WindowClosure(const Presentation& p, int box, std::size_t limit)
      : points_(box_points(p.dimension(), box)) {
    for (const auto& x : points_) {
      auto cls = brute_class(p, x, limit);
      if (!cls) {
        finite_ = false;
        return;
      }
      classes_.emplace(x, std::move(*cls));
    }
  }

  bool finite() const { return finite_; }
  const std::vector<MultiVec>& points() const { return points_; }
  const std::set<MultiVec>& class_of(const MultiVec& x) const { return classes_.at(x); }

  bool below(const MultiVec& y, const MultiVec& a) const {
    const auto& cls = classes_.at(a);
    return std::any_of(cls.begin(), cls.end(), [&](const MultiVec& u) { return u.dominates(y); });
  }

  std::set<MultiVec> closure(const std::set<MultiVec>& a) const {
    std::set<MultiVec> out;
    for (const auto& y : points_)
      for (const auto& x : a)
        if (below(y, x)) {
          out.insert(y);
          break;
        }
    return out;
  }

 private:
  std::vector<MultiVec> points_;
  std::map<MultiVec, std::set<MultiVec>> classes_;
  bool finite_ = true;
};

}  // namespace clk::testing
