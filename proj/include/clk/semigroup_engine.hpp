#pragma once

// Word problem in a finitely presented commutative semigroup, searched on its
// geometric representation: nodes are the points of ℕΩ∖{0}, edges are all
// translates of the relation segments lhs–rhs, and two points name the same
// element exactly when they are path-connected.
//
// Searches are bounded (see Budget) and every answer other than Unknown
// carries a certificate that can be checked without rerunning the search.

#include "clk/errors.hpp"
#include "clk/exact_linalg.hpp"
#include "clk/presentation.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace clk {

struct Budget {
  /// Distinct states stored by one search.
  std::size_t max_states = 100000;
  /// Largest multiple k·a probed by torsion and closure searches.
  std::size_t max_multiple = 64;

  void validate() const {
    if (max_states == 0 || max_multiple == 0)
      throw InputError("budgets must be positive");
  }
};

enum class Direction { forward, backward };

inline Direction flip(Direction d) {
  return d == Direction::forward ? Direction::backward : Direction::forward;
}

inline const char* to_string(Direction d) {
  return d == Direction::forward ? "forward" : "backward";
}

/// One rewrite available at a point: forward replaces lhs by rhs, backward
/// replaces rhs by lhs.
struct Step {
  std::size_t relation;
  Direction direction;
  MultiVec result;
};

namespace detail {

inline void require_nonzero(const Presentation& p, const MultiVec& x, const char* what) {
  if (x.size() != p.dimension())
    throw DimensionError(std::string(what) + ": expected " + std::to_string(p.dimension()) +
                         " coordinates, got " + std::to_string(x.size()));
  if (x.is_zero()) throw InputError(std::string(what) + ": element must be nonzero");
}

}  // namespace detail

inline std::vector<Step> applicable_steps(const Presentation& p, const MultiVec& x) {
  detail::require_nonzero(p, x, "applicable_steps");
  std::vector<Step> out;
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const auto& r = p.relations[i];
    if (x.dominates(r.lhs)) out.push_back({i, Direction::forward, x.rewrite(r.lhs, r.rhs)});
    if (x.dominates(r.rhs)) out.push_back({i, Direction::backward, x.rewrite(r.rhs, r.lhs)});
  }
  return out;
}

struct RewriteStep {
  std::size_t relation;
  Direction direction;
  MultiVec from;
  MultiVec to;
};

/// An alternating rewrite path start → … → end.
struct Witness {
  MultiVec start;
  std::vector<RewriteStep> steps;

  const MultiVec& end() const { return steps.empty() ? start : steps.back().to; }

  Witness reversed() const {
    Witness w{end(), {}};
    for (auto it = steps.rbegin(); it != steps.rend(); ++it)
      w.steps.push_back({it->relation, flip(it->direction), it->to, it->from});
    return w;
  }

  Witness translated(const MultiVec& t) const {
    Witness w{start + t, {}};
    for (const auto& s : steps) w.steps.push_back({s.relation, s.direction, s.from + t, s.to + t});
    return w;
  }

  /// Concatenation; `next.start` must equal `end()`.
  Witness then(const Witness& next) const {
    Witness w = *this;
    w.steps.insert(w.steps.end(), next.steps.begin(), next.steps.end());
    return w;
  }
};

/// Re-executes every step with exact componentwise applicability checks.
inline bool replay(const Presentation& p, const Witness& w) {
  MultiVec cur = w.start;
  for (const auto& s : w.steps) {
    if (s.relation >= p.relations.size() || s.from != cur) return false;
    const auto& r = p.relations[s.relation];
    const MultiVec& remove = s.direction == Direction::forward ? r.lhs : r.rhs;
    const MultiVec& add = s.direction == Direction::forward ? r.rhs : r.lhs;
    if (!cur.dominates(remove)) return false;
    cur = cur.rewrite(remove, add);
    if (cur != s.to) return false;
  }
  return true;
}

enum class SearchStatus { complete, partial };

struct ClassEnumeration {
  SearchStatus status = SearchStatus::complete;
  std::set<MultiVec> members;
  std::size_t visited = 0;
};

namespace detail {

struct Parent {
  MultiVec prev;
  std::size_t relation;
  Direction direction;  // of the step prev -> node
};

struct Node {
  std::optional<Parent> parent;
  std::size_t depth = 0;
};

using VisitMap = std::map<MultiVec, Node>;

/// Path from the search root to `target`.
inline Witness path_from_root(const VisitMap& visited, const MultiVec& target) {
  std::vector<RewriteStep> rev;
  MultiVec cur = target;
  for (;;) {
    const Node& n = visited.at(cur);
    if (!n.parent) break;
    rev.push_back({n.parent->relation, n.parent->direction, n.parent->prev, cur});
    cur = n.parent->prev;
  }
  Witness w{cur, {}};
  w.steps.assign(rev.rbegin(), rev.rend());
  return w;
}

struct ClassSearchResult {
  SearchStatus status = SearchStatus::complete;
  VisitMap visited;
  std::optional<MultiVec> found;
};

/// Level-by-level BFS of the class of x; each level is handled in
/// lexicographic order. Stops at the first node satisfying `accept`.
template <typename Accept>
ClassSearchResult search_class(const Presentation& p, const MultiVec& x, std::size_t max_states,
                               Accept accept) {
  ClassSearchResult res;
  res.visited.emplace(x, Node{});
  if (accept(x)) {
    res.found = x;
    return res;
  }
  bool truncated = false;
  std::vector<MultiVec> frontier{x};
  std::size_t depth = 0;
  while (!frontier.empty()) {
    ++depth;
    std::set<MultiVec> next;
    for (const auto& node : frontier) {
      for (auto& step : applicable_steps(p, node)) {
        if (res.visited.contains(step.result)) continue;
        if (res.visited.size() >= max_states) {
          truncated = true;
          continue;
        }
        res.visited.emplace(step.result,
                            Node{Parent{node, step.relation, step.direction}, depth});
        next.insert(std::move(step.result));
      }
    }
    for (const auto& node : next)
      if (accept(node)) {
        res.found = node;
        res.status = SearchStatus::partial;  // stopped early
        return res;
      }
    frontier.assign(next.begin(), next.end());
  }
  res.status = truncated ? SearchStatus::partial : SearchStatus::complete;
  return res;
}

}  // namespace detail

/// All points equivalent to x, up to the state budget.
inline ClassEnumeration class_enumerate(const Presentation& p, const MultiVec& x,
                                        const Budget& budget) {
  detail::require_nonzero(p, x, "class_enumerate");
  auto res = detail::search_class(p, x, budget.max_states, [](const MultiVec&) { return false; });
  ClassEnumeration out;
  out.status = res.status;
  for (auto& [node, _] : res.visited) out.members.insert(node);
  out.visited = out.members.size();
  return out;
}

struct EqOutcome {
  enum class Kind { equivalent, inequivalent, unknown };
  enum class Certificate { none, k0_mismatch, complete_class_excludes };

  Kind kind = Kind::unknown;
  Certificate certificate = Certificate::none;
  /// Path x → y when Equivalent.
  std::optional<Witness> witness;
  /// For complete_class_excludes: the fully enumerated side (0 = x, 1 = y).
  std::optional<int> complete_side;
  std::size_t states_visited = 0;

  bool certified() const { return kind != Kind::unknown; }
};

inline const char* to_string(EqOutcome::Kind k) {
  switch (k) {
    case EqOutcome::Kind::equivalent: return "equivalent";
    case EqOutcome::Kind::inequivalent: return "inequivalent";
    case EqOutcome::Kind::unknown: return "unknown";
  }
  return "unknown";
}

inline const char* to_string(EqOutcome::Certificate c) {
  switch (c) {
    case EqOutcome::Certificate::none: return "none";
    case EqOutcome::Certificate::k0_mismatch: return "k0_mismatch";
    case EqOutcome::Certificate::complete_class_excludes: return "complete_class_excludes";
  }
  return "none";
}

/// Relation matrix and its Smith form, shared across the probes of one call.
struct RelationLattice {
  IntMatrix matrix;
  SNFResult snf;

  explicit RelationLattice(const Presentation& p)
      : matrix(relation_matrix(p)), snf(smith_normal_form(matrix)) {}

  bool contains(const IntVec& z) const { return zspan_solve(matrix, snf, z).has_value(); }
};

namespace detail {

struct Side {
  VisitMap visited;
  std::vector<MultiVec> frontier;
  bool truncated = false;

  bool complete() const { return frontier.empty() && !truncated; }
};

struct Meeting {
  MultiVec node;
  Parent parent;
  std::size_t other_depth;
};

inline EqOutcome bidirectional(const Presentation& p, const MultiVec& x, const MultiVec& y,
                               std::size_t max_states) {
  EqOutcome out;
  Side sides[2];
  sides[0].visited.emplace(x, Node{});
  sides[0].frontier = {x};
  sides[1].visited.emplace(y, Node{});
  sides[1].frontier = {y};

  auto total = [&] { return sides[0].visited.size() + sides[1].visited.size(); };

  for (;;) {
    for (int s = 0; s < 2; ++s)
      if (sides[s].complete()) {
        out.kind = EqOutcome::Kind::inequivalent;
        out.certificate = EqOutcome::Certificate::complete_class_excludes;
        out.complete_side = s;
        out.states_visited = total();
        return out;
      }
    int a;
    if (sides[0].frontier.empty())
      a = 1;
    else if (sides[1].frontier.empty())
      a = 0;
    else
      a = sides[1].frontier.size() < sides[0].frontier.size() ? 1 : 0;
    if (sides[a].frontier.empty() || total() >= max_states) {
      out.states_visited = total();
      return out;  // unknown
    }

    Side& me = sides[a];
    const Side& other = sides[1 - a];
    std::set<MultiVec> next;
    std::optional<Meeting> best;
    const std::size_t depth = me.visited.at(me.frontier.front()).depth + 1;
    for (const auto& node : me.frontier) {
      for (auto& step : applicable_steps(p, node)) {
        if (me.visited.contains(step.result)) continue;
        Parent parent{node, step.relation, step.direction};
        if (auto it = other.visited.find(step.result); it != other.visited.end()) {
          const std::size_t od = it->second.depth;
          if (!best || od < best->other_depth ||
              (od == best->other_depth && step.result < best->node))
            best = Meeting{step.result, parent, od};
          continue;
        }
        if (total() >= max_states) {
          me.truncated = true;
          continue;
        }
        me.visited.emplace(step.result, Node{parent, depth});
        next.insert(std::move(step.result));
      }
    }
    if (best) {
      me.visited.emplace(best->node, Node{best->parent, depth});
      Witness from_me = path_from_root(me.visited, best->node);
      Witness from_other = path_from_root(other.visited, best->node);
      Witness w = from_me.then(from_other.reversed());
      out.kind = EqOutcome::Kind::equivalent;
      out.witness = a == 0 ? w : w.reversed();
      out.states_visited = total();
      return out;
    }
    me.frontier.assign(next.begin(), next.end());
  }
}

inline EqOutcome equivalent_with(const Presentation& p, const RelationLattice& lattice,
                                 const MultiVec& x, const MultiVec& y, std::size_t max_states) {
  if (x == y) {
    EqOutcome out;
    out.kind = EqOutcome::Kind::equivalent;
    out.witness = Witness{x, {}};
    out.states_visited = 1;
    return out;
  }
  // x ~ y forces x − y into the ℤ-span of the relations.
  if (!lattice.contains(x - y)) {
    EqOutcome out;
    out.kind = EqOutcome::Kind::inequivalent;
    out.certificate = EqOutcome::Certificate::k0_mismatch;
    return out;
  }
  return bidirectional(p, x, y, max_states);
}

}  // namespace detail

inline EqOutcome equivalent(const Presentation& p, const MultiVec& x, const MultiVec& y,
                            const Budget& budget) {
  detail::require_nonzero(p, x, "equivalent");
  detail::require_nonzero(p, y, "equivalent");
  return detail::equivalent_with(p, RelationLattice(p), x, y, budget.max_states);
}

struct TorsionProbe {
  std::size_t n;
  std::size_t m;
  EqOutcome::Kind kind;
  EqOutcome::Certificate certificate;
};

/// Torsion(m, n) when n·a ~ m·a was found (n least, then m least), otherwise
/// no torsion up to `bound`. An empty bound means infinite order is certified
/// by other means and no search was needed.
struct TorsionType {
  std::optional<std::pair<std::size_t, std::size_t>> torsion;  // (m, n)
  std::optional<Witness> witness;                              // n·a → m·a
  std::optional<std::size_t> bound;
  std::vector<TorsionProbe> probes;

  bool is_torsion() const { return torsion.has_value(); }
  bool unbounded() const { return !torsion && !bound; }
  std::size_t unknown_probes() const {
    return static_cast<std::size_t>(std::count_if(probes.begin(), probes.end(), [](const auto& pr) {
      return pr.kind == EqOutcome::Kind::unknown;
    }));
  }
  /// No torsion up to the bound and every probe certified inequivalent.
  bool all_certified() const { return !torsion && unknown_probes() == 0; }

  static TorsionType none_unbounded() { return {}; }
};

inline TorsionType torsion_type(const Presentation& p, const MultiVec& a, const Budget& budget) {
  detail::require_nonzero(p, a, "torsion_type");
  budget.validate();
  const RelationLattice lattice(p);
  TorsionType out;
  for (std::size_t n = 2; n <= budget.max_multiple; ++n) {
    const MultiVec na = a.scaled(n);
    for (std::size_t m = 1; m < n; ++m) {
      EqOutcome eq = detail::equivalent_with(p, lattice, na, a.scaled(m), budget.max_states);
      out.probes.push_back({n, m, eq.kind, eq.certificate});
      if (eq.kind == EqOutcome::Kind::equivalent) {
        out.torsion = {m, n};
        out.witness = std::move(eq.witness);
        return out;
      }
    }
  }
  out.bound = budget.max_multiple;
  return out;
}

enum class Tri { yes, no_up_to_bound, unknown };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no_up_to_bound: return "no_up_to_bound";
    case Tri::unknown: return "unknown";
  }
  return "unknown";
}

/// y ∈ closure of ⟨a⟩ when y ≤ u for some u ~ k·a.
struct ClosureOutcome {
  Tri verdict = Tri::unknown;
  std::optional<std::size_t> k;
  std::optional<MultiVec> u;
  /// Rewrite path k·a → u.
  std::optional<Witness> path;
};

/// Tri-state test for y ⪯ s: some u in the class of s with u ≥ y.
inline ClosureOutcome dominated_by(const Presentation& p, const MultiVec& y, const MultiVec& s,
                                   const Budget& budget) {
  detail::require_nonzero(p, y, "dominated_by");
  detail::require_nonzero(p, s, "dominated_by");
  auto res = detail::search_class(p, s, budget.max_states,
                                  [&](const MultiVec& u) { return u.dominates(y); });
  ClosureOutcome out;
  if (res.found) {
    out.verdict = Tri::yes;
    out.k = 1;
    out.u = *res.found;
    out.path = detail::path_from_root(res.visited, *res.found);
  } else {
    out.verdict = res.status == SearchStatus::complete ? Tri::no_up_to_bound : Tri::unknown;
  }
  return out;
}

inline ClosureOutcome closure_contains(const Presentation& p, const MultiVec& a,
                                       const MultiVec& y, const Budget& budget) {
  detail::require_nonzero(p, a, "closure_contains");
  detail::require_nonzero(p, y, "closure_contains");
  budget.validate();
  bool partial = false;
  for (std::size_t k = 1; k <= budget.max_multiple; ++k) {
    ClosureOutcome r = dominated_by(p, y, a.scaled(k), budget);
    if (r.verdict == Tri::yes) {
      r.k = k;
      return r;
    }
    if (r.verdict == Tri::unknown) partial = true;
  }
  ClosureOutcome out;
  out.verdict = partial ? Tri::unknown : Tri::no_up_to_bound;
  return out;
}

struct ProgeneratorOutcome {
  Tri verdict = Tri::unknown;
  std::vector<ClosureOutcome> per_generator;
};

/// Closure of ⟨a⟩ is everything iff every generator is dominated by some k·a.
inline ProgeneratorOutcome is_progenerator(const Presentation& p, const MultiVec& a,
                                           const Budget& budget) {
  detail::require_nonzero(p, a, "is_progenerator");
  ProgeneratorOutcome out;
  bool any_unknown = false, any_no = false;
  for (std::size_t g = 0; g < p.dimension(); ++g) {
    out.per_generator.push_back(closure_contains(p, a, MultiVec::unit(p.dimension(), g), budget));
    any_unknown |= out.per_generator.back().verdict == Tri::unknown;
    any_no |= out.per_generator.back().verdict == Tri::no_up_to_bound;
  }
  out.verdict = any_unknown ? Tri::unknown : any_no ? Tri::no_up_to_bound : Tri::yes;
  return out;
}

}  // namespace clk
