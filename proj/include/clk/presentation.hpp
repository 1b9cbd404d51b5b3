#pragma once

// The commutative semigroup S(Γ,Π,Λ): generators Ω = V ⊔ (Π∖Λ) and one
// relation per block,
//   s(X) = Σ_{e∈X} t(e)        for X ∈ Λ,
//   s(X) = X + Σ_{f∈X} t(f)    for X ∈ Π∖Λ.

#include "clk/errors.hpp"
#include "clk/graph_model.hpp"
#include "clk/matrix.hpp"
#include "clk/numeric.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

namespace clk {

/// An element of ℕΩ: nonnegative counts, one per generator.
class MultiVec {
 public:
  MultiVec() = default;
  explicit MultiVec(std::size_t dim) : counts_(dim) {}
  explicit MultiVec(std::vector<Integer> counts) : counts_(std::move(counts)) {
    for (const auto& c : counts_)
      if (c < 0) throw DimensionError("MultiVec counts must be nonnegative");
  }
  MultiVec(std::initializer_list<long long> counts)
      : MultiVec(std::vector<Integer>(counts.begin(), counts.end())) {}

  static MultiVec unit(std::size_t dim, std::size_t i) {
    MultiVec v(dim);
    v.counts_.at(i) = 1;
    return v;
  }

  std::size_t size() const noexcept { return counts_.size(); }
  const Integer& operator[](std::size_t i) const { return counts_[i]; }
  const std::vector<Integer>& counts() const noexcept { return counts_; }

  bool is_zero() const {
    return std::all_of(counts_.begin(), counts_.end(), [](const Integer& c) { return c == 0; });
  }

  /// Componentwise `other <= *this`.
  bool dominates(const MultiVec& other) const {
    for (std::size_t i = 0; i < counts_.size(); ++i)
      if (other.counts_[i] > counts_[i]) return false;
    return true;
  }

  MultiVec& operator+=(const MultiVec& o) {
    check_dim(o);
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += o.counts_[i];
    return *this;
  }
  friend MultiVec operator+(MultiVec a, const MultiVec& b) { return a += b; }

  /// `*this - remove + add`; caller guarantees `remove <= *this`.
  MultiVec rewrite(const MultiVec& remove, const MultiVec& add) const {
    MultiVec out = *this;
    for (std::size_t i = 0; i < counts_.size(); ++i)
      out.counts_[i] += add.counts_[i] - remove.counts_[i];
    return out;
  }

  MultiVec scaled(const Integer& k) const {
    if (k < 0) throw DimensionError("negative multiple of a MultiVec");
    MultiVec out = *this;
    for (auto& c : out.counts_) c *= k;
    return out;
  }

  /// Signed difference in ℤΩ.
  friend IntVec operator-(const MultiVec& a, const MultiVec& b) {
    a.check_dim(b);
    IntVec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a.counts_[i] - b.counts_[i];
    return d;
  }

  IntVec as_int_vec() const { return counts_; }

  friend bool operator==(const MultiVec&, const MultiVec&) = default;
  friend bool operator<(const MultiVec& a, const MultiVec& b) {
    return std::lexicographical_compare(a.counts_.begin(), a.counts_.end(), b.counts_.begin(),
                                        b.counts_.end());
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (i) s += ",";
      s += counts_[i].str();
    }
    return s + ")";
  }

 private:
  void check_dim(const MultiVec& o) const {
    if (o.size() != size()) throw DimensionError("MultiVec dimension mismatch");
  }

  std::vector<Integer> counts_;
};

/// R_X: lhs = unit(s(X)); rhs = Σ unit(t(e)) (+ unit(X) when X ∉ Λ).
struct Relation {
  std::string name;
  MultiVec lhs;
  MultiVec rhs;
  bool in_lambda = false;
};

struct Presentation {
  /// Ω: all vertices in declaration order, then the non-lambda blocks.
  std::vector<std::string> generators;
  std::size_t vertex_count = 0;
  std::vector<Relation> relations;
  SeparatedGraph graph;

  std::size_t dimension() const noexcept { return generators.size(); }
};

inline Presentation build_presentation(const SeparatedGraph& g) {
  Presentation p;
  p.graph = g;
  p.vertex_count = g.vertices.size();
  p.generators = g.vertices;
  for (const auto& b : g.blocks)
    if (!b.in_lambda) p.generators.push_back(b.name);

  const std::size_t dim = p.generators.size();
  std::size_t next_block_gen = p.vertex_count;
  for (const auto& b : g.blocks) {
    Relation r{b.name, MultiVec(dim), MultiVec(dim), b.in_lambda};
    const Edge* first = g.find_edge(b.edges.front());
    r.lhs = MultiVec::unit(dim, *g.vertex_index(first->src));
    std::vector<Integer> rhs(dim);
    for (const auto& name : b.edges) rhs[*g.vertex_index(g.find_edge(name)->tgt)] += 1;
    if (!b.in_lambda) rhs[next_block_gen++] += 1;
    r.rhs = MultiVec(std::move(rhs));
    p.relations.push_back(std::move(r));
  }
  return p;
}

/// One row per relation: lhs − rhs over Ω.
inline IntMatrix relation_matrix(const Presentation& p) {
  IntMatrix m(p.relations.size(), p.dimension());
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const auto& r = p.relations[i];
    for (std::size_t j = 0; j < p.dimension(); ++j) m(i, j) = r.lhs[j] - r.rhs[j];
  }
  return m;
}

/// Rows of the Λ relations only, in relation order.
inline IntMatrix lambda_relation_matrix(const Presentation& p) {
  std::vector<IntVec> rows;
  for (const auto& r : p.relations)
    if (r.in_lambda) rows.push_back(r.lhs - r.rhs);
  return IntMatrix::from_rows(rows, p.dimension());
}

/// α = Σ_{v∈H} v as an element of ℕΩ.
template <typename Range>
MultiVec unit_sum(const Presentation& p, const Range& vertices) {
  std::vector<Integer> counts(p.dimension());
  bool any = false;
  for (const auto& name : vertices) {
    auto idx = p.graph.vertex_index(name);
    if (!idx) throw InputError("unknown vertex '" + std::string(name) + "'", std::string(name));
    counts[*idx] = 1;
    any = true;
  }
  if (!any) throw InputError("vertex subset must be nonempty");
  return MultiVec(std::move(counts));
}

inline MultiVec unit_sum(const Presentation& p, std::initializer_list<std::string> vertices) {
  return unit_sum<std::initializer_list<std::string>>(p, vertices);
}

/// Σ_{v∈V} v, the class of the free module of rank one.
inline MultiVec unit_sum_all(const Presentation& p) {
  std::vector<Integer> counts(p.dimension());
  for (std::size_t i = 0; i < p.vertex_count; ++i) counts[i] = 1;
  return MultiVec(std::move(counts));
}

inline nlohmann::ordered_json counts_to_json(const std::vector<Integer>& v) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& x : v) {
    if (x >= std::numeric_limits<std::int64_t>::min() &&
        x <= std::numeric_limits<std::int64_t>::max())
      arr.push_back(static_cast<std::int64_t>(x));
    else
      arr.push_back(x.str());
  }
  return arr;
}

inline nlohmann::ordered_json presentation_to_json(const Presentation& p) {
  nlohmann::ordered_json j;
  j["generators"] = p.generators;
  j["relations"] = nlohmann::ordered_json::array();
  for (const auto& r : p.relations) {
    j["relations"].push_back({{"name", r.name},
                              {"lhs", counts_to_json(r.lhs.counts())},
                              {"rhs", counts_to_json(r.rhs.counts())},
                              {"in_lambda", r.in_lambda}});
  }
  return j;
}

}  // namespace clk
