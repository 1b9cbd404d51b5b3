#pragma once

// Separated graphs (Γ, Π, Λ): a finite digraph, a partition Π of its edges
// refining the source fibers, and a distinguished subset Λ ⊆ Π.

#include "clk/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace clk {

enum class SeparationMode { leavitt, cohn };

struct Edge {
  std::string name;
  std::string src;
  std::string tgt;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A block X ∈ Π. `in_lambda` marks X ∈ Λ.
struct Block {
  std::string name;
  std::vector<std::string> edges;
  bool in_lambda = false;

  friend bool operator==(const Block&, const Block&) = default;
};

/// Plain digraph, before a partition is chosen.
struct Digraph {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
};

/// The triple (Γ, Π, Λ). Declaration order of vertices and blocks is
/// semantic: it fixes the coordinate order of the generator set downstream.
struct SeparatedGraph {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::vector<Block> blocks;

  std::optional<std::size_t> vertex_index(std::string_view name) const {
    auto it = std::find(vertices.begin(), vertices.end(), name);
    if (it == vertices.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vertices.begin());
  }

  const Edge* find_edge(std::string_view name) const {
    auto it = std::find_if(edges.begin(), edges.end(),
                           [&](const Edge& e) { return e.name == name; });
    return it == edges.end() ? nullptr : &*it;
  }

  friend bool operator==(const SeparatedGraph&, const SeparatedGraph&) = default;
};

namespace detail {

inline void validate_digraph(const std::vector<std::string>& vertices,
                             const std::vector<Edge>& edges) {
  std::set<std::string, std::less<>> seen;
  for (const auto& v : vertices) {
    if (v.empty()) throw InputError("vertex names must be nonempty");
    if (!seen.insert(v).second)
      throw InputError("duplicate vertex name '" + v + "'", v);
  }
  std::set<std::string, std::less<>> edge_names;
  for (const auto& e : edges) {
    if (e.name.empty()) throw InputError("edge names must be nonempty");
    if (!edge_names.insert(e.name).second)
      throw InputError("duplicate edge name '" + e.name + "'", e.name);
    if (!seen.contains(e.src))
      throw InputError("edge '" + e.name + "' has unknown source vertex '" + e.src + "'",
                       e.src);
    if (!seen.contains(e.tgt))
      throw InputError("edge '" + e.name + "' has unknown target vertex '" + e.tgt + "'",
                       e.tgt);
  }
}

inline std::string default_block_name(const std::string& vertex) { return "X_" + vertex; }

}  // namespace detail

/// Throws InputError naming the offending item when any invariant of the
/// triple fails.
inline void validate(const SeparatedGraph& g) {
  detail::validate_digraph(g.vertices, g.edges);

  std::set<std::string, std::less<>> vertex_names(g.vertices.begin(), g.vertices.end());
  std::set<std::string, std::less<>> block_names;
  std::map<std::string, std::string, std::less<>> owner;  // edge -> block
  for (const auto& b : g.blocks) {
    if (b.name.empty()) throw InputError("block names must be nonempty");
    if (!block_names.insert(b.name).second)
      throw InputError("duplicate block name '" + b.name + "'", b.name);
    if (vertex_names.contains(b.name))
      throw InputError("block name '" + b.name + "' collides with a vertex name", b.name);
    if (b.edges.empty()) throw InputError("block '" + b.name + "' is empty", b.name);

    const std::string* source = nullptr;
    for (const auto& name : b.edges) {
      const Edge* e = g.find_edge(name);
      if (e == nullptr)
        throw InputError("block '" + b.name + "' lists unknown edge '" + name + "'", name);
      auto [it, fresh] = owner.emplace(name, b.name);
      if (!fresh)
        throw InputError("edge '" + name + "' appears in blocks '" + it->second + "' and '" +
                             b.name + "'",
                         name);
      if (source == nullptr) {
        source = &e->src;
      } else if (*source != e->src) {
        throw InputError("partition violation: block '" + b.name + "' mixes edges from '" +
                             *source + "' and '" + e->src + "' (edge '" + name + "')",
                         b.name);
      }
    }
  }
  for (const auto& e : g.edges)
    if (!owner.contains(e.name))
      throw InputError("edge '" + e.name + "' is not covered by the partition", e.name);
}

/// Partition by source fibers of non-sink vertices; Λ = Π (leavitt) or ∅ (cohn).
inline SeparatedGraph default_separation(const Digraph& d, SeparationMode mode) {
  detail::validate_digraph(d.vertices, d.edges);
  SeparatedGraph g{d.vertices, d.edges, {}};
  for (const auto& v : d.vertices) {
    Block b{detail::default_block_name(v), {}, mode == SeparationMode::leavitt};
    for (const auto& e : d.edges)
      if (e.src == v) b.edges.push_back(e.name);
    if (!b.edges.empty()) g.blocks.push_back(std::move(b));
  }
  validate(g);
  return g;
}

namespace detail {

using ojson = nlohmann::ordered_json;

inline const ojson& require_array(const ojson& j, const char* key) {
  if (!j.is_array()) throw InputError(std::string("'") + key + "' must be an array", key);
  return j;
}

inline std::string require_string(const ojson& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + " must be a string", where);
  return j.get<std::string>();
}

}  // namespace detail

/// Parses the canonical JSON document. Unknown keys are rejected.
inline SeparatedGraph parse_graph(std::string_view text) {
  using detail::ojson;
  if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
      static_cast<unsigned char>(text[1]) == 0xBB && static_cast<unsigned char>(text[2]) == 0xBF)
    throw InputError("input must not start with a byte order mark");

  ojson doc;
  try {
    doc = ojson::parse(text.begin(), text.end());
  } catch (const ojson::parse_error& e) {
    throw InputError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw InputError("top-level JSON value must be an object");

  for (const auto& [key, _] : doc.items()) {
    if (key != "vertices" && key != "edges" && key != "partition" && key != "lambda" &&
        key != "mode")
      throw InputError("unknown key '" + key + "'", key);
  }
  if (!doc.contains("vertices")) throw InputError("missing key 'vertices'", "vertices");

  Digraph d;
  for (const auto& v : detail::require_array(doc["vertices"], "vertices"))
    d.vertices.push_back(detail::require_string(v, "vertex name"));

  if (doc.contains("edges")) {
    for (const auto& e : detail::require_array(doc["edges"], "edges")) {
      if (!e.is_object()) throw InputError("edge entries must be objects", "edges");
      for (const auto& [key, _] : e.items())
        if (key != "name" && key != "src" && key != "tgt")
          throw InputError("unknown key '" + key + "' in edge", key);
      if (!e.contains("name") || !e.contains("src") || !e.contains("tgt"))
        throw InputError("edge entries need 'name', 'src' and 'tgt'", "edges");
      d.edges.push_back({detail::require_string(e["name"], "edge name"),
                         detail::require_string(e["src"], "edge src"),
                         detail::require_string(e["tgt"], "edge tgt")});
    }
  }

  SeparationMode mode = SeparationMode::leavitt;
  if (doc.contains("mode")) {
    const std::string m = detail::require_string(doc["mode"], "mode");
    if (m == "leavitt")
      mode = SeparationMode::leavitt;
    else if (m == "cohn")
      mode = SeparationMode::cohn;
    else
      throw InputError("mode must be \"leavitt\" or \"cohn\", got '" + m + "'", m);
  }

  SeparatedGraph g;
  if (doc.contains("partition")) {
    detail::validate_digraph(d.vertices, d.edges);
    const auto& part = doc["partition"];
    if (!part.is_object()) throw InputError("'partition' must be an object", "partition");
    g.vertices = d.vertices;
    g.edges = d.edges;
    for (const auto& [name, members] : part.items()) {
      if (!members.is_array())
        throw InputError("block '" + name + "' must be an array of edge names", name);
      Block b{name, {}, mode == SeparationMode::leavitt};
      for (const auto& m : members) b.edges.push_back(detail::require_string(m, "edge name"));
      g.blocks.push_back(std::move(b));
    }
  } else {
    g = default_separation(d, mode);
  }

  if (doc.contains("lambda")) {
    for (auto& b : g.blocks) b.in_lambda = false;
    std::set<std::string> listed;
    for (const auto& l : detail::require_array(doc["lambda"], "lambda")) {
      const std::string name = detail::require_string(l, "lambda entry");
      if (!listed.insert(name).second)
        throw InputError("block '" + name + "' listed twice in lambda", name);
      auto it = std::find_if(g.blocks.begin(), g.blocks.end(),
                             [&](const Block& b) { return b.name == name; });
      if (it == g.blocks.end())
        throw InputError("lambda references unknown block '" + name + "'", name);
      it->in_lambda = true;
    }
  }

  validate(g);
  return g;
}

/// Canonical form: vertices, edges, partition, lambda, in that field order.
inline nlohmann::ordered_json graph_to_json(const SeparatedGraph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = g.vertices;
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges)
    j["edges"].push_back({{"name", e.name}, {"src", e.src}, {"tgt", e.tgt}});
  j["partition"] = nlohmann::ordered_json::object();
  auto lambda = nlohmann::ordered_json::array();
  for (const auto& b : g.blocks) {
    j["partition"][b.name] = b.edges;
    if (b.in_lambda) lambda.push_back(b.name);
  }
  j["lambda"] = lambda;
  return j;
}

inline std::string serialize_graph(const SeparatedGraph& g) {
  return graph_to_json(g).dump(2) + "\n";
}

}  // namespace clk
