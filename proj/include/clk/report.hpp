#pragma once

// JSON shapes for every verdict type. Key order is fixed by insertion
// (ordered_json), so output is byte-stable for fixed input.

#include "clk/exact_linalg.hpp"
#include "clk/geometry_render.hpp"
#include "clk/ktheory.hpp"
#include "clk/presentation.hpp"
#include "clk/semigroup_engine.hpp"

#include <json.hpp>

#include <string>

namespace clk::report {

using json = nlohmann::ordered_json;

/// Machine-sized integers become JSON numbers, larger ones decimal strings.
inline json number(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() &&
      x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline json number(const Rational& x) {
  if (boost::multiprecision::denominator(x) == 1)
    return number(Integer(boost::multiprecision::numerator(x)));
  return to_string(x);
}

inline json to_json(const MultiVec& v) { return counts_to_json(v.counts()); }

inline json to_json(const ElementOrder& o) {
  if (o.is_finite()) return json{{"finite", number(o.value())}};
  return json{{"infinite", true}};
}

inline json to_json(const Presentation& p, const Witness& w) {
  json steps = json::array();
  for (const auto& s : w.steps)
    steps.push_back({{"relation", p.relations[s.relation].name},
                     {"direction", to_string(s.direction)},
                     {"to", to_json(s.to)}});
  return json{{"start", to_json(w.start)}, {"steps", steps}};
}

inline json to_json(const Presentation& p, const EqOutcome& e) {
  json j{{"kind", to_string(e.kind)}, {"certificate", to_string(e.certificate)}};
  if (e.complete_side) j["complete_side"] = *e.complete_side == 0 ? "x" : "y";
  j["states_visited"] = e.states_visited;
  j["witness"] = e.witness ? to_json(p, *e.witness) : json(nullptr);
  return j;
}

inline json to_json(const Presentation& p, const TorsionType& t) {
  json j;
  if (t.torsion) {
    j["kind"] = "torsion";
    j["m"] = t.torsion->first;
    j["n"] = t.torsion->second;
    j["probes"] = t.probes.size();
    j["witness"] = t.witness ? to_json(p, *t.witness) : json(nullptr);
    return j;
  }
  if (!t.bound) {
    j["kind"] = "no_torsion";
    j["bound"] = nullptr;
    j["certificate"] = "infinite_order";
    return j;
  }
  j["kind"] = "no_torsion_up_to";
  j["bound"] = *t.bound;
  j["all_certified"] = t.all_certified();
  j["probes"] = t.probes.size();
  json unknown = json::array();
  for (const auto& pr : t.probes)
    if (pr.kind == EqOutcome::Kind::unknown) unknown.push_back({{"n", pr.n}, {"m", pr.m}});
  j["unknown_probes"] = unknown;
  return j;
}

inline json to_json(const IbnVerdict& v) {
  json cert{{"kind", to_string(v.certificate)}};
  if (v.coefficients) {
    json c = json::array();
    for (const auto& x : *v.coefficients) c.push_back(number(x));
    cert["coefficients"] = c;
  }
  return json{{"ibn", v.ibn}, {"certificate", cert}};
}

inline json to_json(const K0Report& r) {
  json factors = json::array();
  for (const auto& d : r.invariant_factors) factors.push_back(number(d));
  return json{{"free_rank", r.free_rank},
              {"invariant_factors", factors},
              {"unit_order", to_json(r.unit_order)}};
}

inline json to_json(const Presentation& p, const CornerReport& r) {
  json verdict{{"kind", to_string(r.verdict)}};
  if (r.verdict == CornerReport::Verdict::certified_ibn) verdict["reason"] = to_string(r.reason);
  if (r.verdict == CornerReport::Verdict::non_ibn) {
    verdict["m"] = r.torsion.torsion->first;
    verdict["n"] = r.torsion.torsion->second;
  }
  return json{{"vertices", r.vertices},
              {"sufficient_test", r.sufficient_test_passed ? "passed" : "inconclusive"},
              {"isolated_support", r.isolated_support ? "holds" : "fails"},
              {"torsion", to_json(p, r.torsion)},
              {"verdict", verdict}};
}

inline json to_json(const ClassEnumeration& c, std::size_t max_listed = 1000) {
  json members = json::array();
  for (const auto& m : c.members) {
    if (members.size() >= max_listed) break;
    members.push_back(to_json(m));
  }
  return json{{"status", c.status == SearchStatus::complete ? "complete" : "partial"},
              {"visited", c.visited},
              {"listed", members.size()},
              {"members", members}};
}

inline json to_json(const Presentation& p, const ClosureOutcome& c) {
  json j{{"verdict", to_string(c.verdict)}};
  if (c.verdict == Tri::yes) {
    j["k"] = *c.k;
    j["u"] = to_json(*c.u);
    j["path"] = to_json(p, *c.path);
  }
  return j;
}

inline json to_json(const Presentation& p, const ProgeneratorOutcome& o) {
  json per = json::object();
  for (std::size_t g = 0; g < o.per_generator.size(); ++g)
    per[p.generators[g]] = to_json(p, o.per_generator[g]);
  return json{{"verdict", to_string(o.verdict)}, {"generators", per}};
}

inline json to_json(const Diagram& d) {
  json nodes = json::array();
  for (const auto& q : d.nodes) nodes.push_back({q[0], q[1]});
  json edges = json::array();
  for (const auto& e : d.edges)
    edges.push_back({{"from", {e.from[0], e.from[1]}},
                     {"to", {e.to[0], e.to[1]}},
                     {"relation", d.relation_names[e.relation]},
                     {"color", e.relation + 1}});
  json j{{"axes", {d.axis_labels[0], d.axis_labels[1]}},
         {"domain", d.window.domain == Domain::natural_quadrant ? "n" : "z"},
         {"nodes", nodes},
         {"edges", edges}};
  if (d.components) {
    j["components"] = {{"count", d.components->count},
                       {"boundary", d.components->boundary},
                       {"labels", d.components->label}};
  }
  return j;
}

}  // namespace clk::report
