#pragma once

// Planar pictures of the geometric representation for two generators:
// lattice points of a window, every translate of every relation segment with
// both endpoints inside it, and optional in-window component labels.

#include "clk/errors.hpp"
#include "clk/presentation.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace clk {

enum class Domain { natural_quadrant, full_lattice };
enum class RenderFormat { svg, dot };

using Point = std::array<std::int64_t, 2>;

struct Window {
  Point lo{0, 0};
  Point hi{0, 0};
  Domain domain = Domain::natural_quadrant;

  bool contains(const Point& q) const {
    for (int a = 0; a < 2; ++a)
      if (q[a] < lo[a] || q[a] > hi[a]) return false;
    return !(domain == Domain::natural_quadrant && q[0] == 0 && q[1] == 0);
  }

  std::size_t node_count() const {
    std::size_t n = static_cast<std::size_t>(hi[0] - lo[0] + 1) *
                    static_cast<std::size_t>(hi[1] - lo[1] + 1);
    if (domain == Domain::natural_quadrant && lo[0] == 0 && lo[1] == 0) --n;
    return n;
  }

  void validate() const {
    for (int a = 0; a < 2; ++a) {
      if (lo[a] > hi[a]) throw InputError("window lower bound exceeds upper bound");
      if (domain == Domain::natural_quadrant && lo[a] < 0)
        throw InputError("natural-quadrant window must have nonnegative bounds");
    }
    if (node_count() == 0) throw InputError("window contains no lattice points");
  }
};

/// Palette indexed by relation; the first two mirror the usual blue/red.
inline const std::array<const char*, 8>& relation_palette() {
  static const std::array<const char*, 8> colors{"#1f5fd6", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  return colors;
}

inline const std::array<const char*, 10>& component_palette() {
  static const std::array<const char*, 10> colors{"#000000", "#e6194b", "#3cb44b", "#4363d8",
                                                  "#f58231", "#911eb4", "#42d4f4", "#f032e6",
                                                  "#9a6324", "#808000"};
  return colors;
}

struct DiagramEdge {
  Point from;  // translate of lhs
  Point to;    // translate of rhs
  std::size_t relation;
  /// The untranslated relation segment itself.
  bool original = false;
};

struct ComponentLabeling {
  /// Component id per node, ids numbered by first appearance in node order.
  std::vector<std::size_t> label;
  std::size_t count = 0;
  /// Per component: some node sits on a truncating side of the window.
  std::vector<bool> touches_border;
  bool boundary = false;
};

struct Diagram {
  Window window;
  std::vector<Point> nodes;
  std::vector<DiagramEdge> edges;
  std::array<std::string, 2> axis_labels;
  std::vector<std::string> relation_names;
  std::optional<ComponentLabeling> components;
};

namespace detail {

inline void require_planar(const Presentation& p) {
  if (p.dimension() != 2)
    throw InputError("diagrams need exactly 2 generators, presentation has " +
                     std::to_string(p.dimension()));
}

/// Relation endpoints as machine integers; nullopt when they cannot fit any
/// window anyway.
inline std::optional<std::array<Point, 2>> segment(const Relation& r) {
  std::array<Point, 2> s{};
  const Integer limit = std::numeric_limits<std::int32_t>::max();
  for (int a = 0; a < 2; ++a) {
    if (r.lhs[a] > limit || r.rhs[a] > limit) return std::nullopt;
    s[0][a] = static_cast<std::int64_t>(r.lhs[a]);
    s[1][a] = static_cast<std::int64_t>(r.rhs[a]);
  }
  return s;
}

/// Range of translate offsets along one axis.
inline std::pair<std::int64_t, std::int64_t> offset_range(const Window& w, int axis,
                                                          std::int64_t a, std::int64_t b) {
  std::int64_t first = w.lo[axis] - std::min(a, b);
  const std::int64_t last = w.hi[axis] - std::max(a, b);
  if (w.domain == Domain::natural_quadrant) first = std::max<std::int64_t>(first, 0);
  return {first, last};
}

}  // namespace detail

/// Closed-form number of in-window translates of relation `i`.
inline std::size_t translate_count(const Presentation& p, std::size_t i, const Window& w) {
  detail::require_planar(p);
  auto seg = detail::segment(p.relations.at(i));
  if (!seg) return 0;
  std::size_t count = 1;
  for (int a = 0; a < 2; ++a) {
    auto [first, last] = detail::offset_range(w, a, (*seg)[0][a], (*seg)[1][a]);
    count *= last >= first ? static_cast<std::size_t>(last - first + 1) : 0;
  }
  // Endpoints are nonzero translates of nonzero vectors by t ≥ 0, so the
  // excluded origin never appears as an endpoint.
  return count;
}

inline Diagram build_diagram(const Presentation& p, const Window& w) {
  detail::require_planar(p);
  w.validate();
  Diagram d;
  d.window = w;
  d.axis_labels = {p.generators[0], p.generators[1]};
  for (const auto& r : p.relations) d.relation_names.push_back(r.name);

  for (std::int64_t x = w.lo[0]; x <= w.hi[0]; ++x)
    for (std::int64_t y = w.lo[1]; y <= w.hi[1]; ++y)
      if (w.contains({x, y})) d.nodes.push_back({x, y});

  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    auto seg = detail::segment(p.relations[i]);
    if (!seg) continue;
    const auto& [l, r] = *seg;
    auto [x0, x1] = detail::offset_range(w, 0, l[0], r[0]);
    auto [y0, y1] = detail::offset_range(w, 1, l[1], r[1]);
    for (std::int64_t tx = x0; tx <= x1; ++tx)
      for (std::int64_t ty = y0; ty <= y1; ++ty)
        d.edges.push_back(
            {{l[0] + tx, l[1] + ty}, {r[0] + tx, r[1] + ty}, i, tx == 0 && ty == 0});
  }
  return d;
}

inline ComponentLabeling label_components(const Diagram& d) {
  const Window& w = d.window;
  if (w.domain != Domain::natural_quadrant)
    throw InputError("component labeling is defined on the natural quadrant only");

  std::vector<std::size_t> parent(d.nodes.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  auto index_of = [&](const Point& q) {
    return static_cast<std::size_t>(std::lower_bound(d.nodes.begin(), d.nodes.end(), q) -
                                    d.nodes.begin());
  };
  for (const auto& e : d.edges) {
    std::size_t a = find(index_of(e.from)), b = find(index_of(e.to));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  ComponentLabeling c;
  c.label.resize(d.nodes.size());
  std::vector<std::size_t> id_of_root(d.nodes.size(), SIZE_MAX);
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    std::size_t root = find(i);
    if (id_of_root[root] == SIZE_MAX) {
      id_of_root[root] = c.count++;
      c.touches_border.push_back(false);
    }
    c.label[i] = id_of_root[root];
    const Point& q = d.nodes[i];
    bool border = false;
    for (int a = 0; a < 2; ++a)
      border |= q[a] == w.hi[a] || (q[a] == w.lo[a] && w.lo[a] > 0);
    if (border) c.touches_border[c.label[i]] = true;
  }
  c.boundary = std::find(c.touches_border.begin(), c.touches_border.end(), true) !=
               c.touches_border.end();
  return c;
}

inline ComponentLabeling window_components(const Presentation& p, const Window& w) {
  return label_components(build_diagram(p, w));
}

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

inline std::string point_name(const Point& q) {
  return "(" + std::to_string(q[0]) + "," + std::to_string(q[1]) + ")";
}

}  // namespace detail

inline std::string render_svg(const Diagram& d) {
  constexpr std::int64_t unit = 50, margin = 60;
  const Window& w = d.window;
  const std::int64_t width = (w.hi[0] - w.lo[0]) * unit + 2 * margin;
  const std::int64_t height = (w.hi[1] - w.lo[1]) * unit + 2 * margin;
  auto px = [&](std::int64_t x) { return margin + (x - w.lo[0]) * unit; };
  auto py = [&](std::int64_t y) { return margin + (w.hi[1] - y) * unit; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
     << "\" fill=\"#ffffff\"/>\n";

  os << "<g class=\"grid\" stroke=\"#c8c8c8\" stroke-width=\"1\" stroke-dasharray=\"2,3\">\n";
  for (std::int64_t x = w.lo[0]; x <= w.hi[0]; ++x)
    os << "<line x1=\"" << px(x) << "\" y1=\"" << py(w.hi[1]) << "\" x2=\"" << px(x)
       << "\" y2=\"" << py(w.lo[1]) << "\"/>\n";
  for (std::int64_t y = w.lo[1]; y <= w.hi[1]; ++y)
    os << "<line x1=\"" << px(w.lo[0]) << "\" y1=\"" << py(y) << "\" x2=\"" << px(w.hi[0])
       << "\" y2=\"" << py(y) << "\"/>\n";
  os << "</g>\n";

  const auto& palette = relation_palette();
  os << "<g class=\"edges\" fill=\"none\" stroke-linecap=\"round\">\n";
  for (const auto& e : d.edges) {
    os << "<line class=\"edge color-" << e.relation + 1 << "\" data-relation=\""
       << detail::xml_escape(d.relation_names[e.relation]) << "\" x1=\"" << px(e.from[0])
       << "\" y1=\"" << py(e.from[1]) << "\" x2=\"" << px(e.to[0]) << "\" y2=\"" << py(e.to[1])
       << "\" stroke=\"" << palette[e.relation % palette.size()] << "\" stroke-width=\""
       << (e.original ? 4 : 2) << "\"/>\n";
  }
  os << "</g>\n";

  os << "<g class=\"nodes\">\n";
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const Point& q = d.nodes[i];
    os << "<circle cx=\"" << px(q[0]) << "\" cy=\"" << py(q[1]) << "\" r=\"3\"";
    if (d.components) {
      const std::size_t c = d.components->label[i];
      os << " data-component=\"" << c << "\" fill=\""
         << component_palette()[c % component_palette().size()] << "\"";
    } else {
      os << " fill=\"#000000\"";
    }
    os << "/>\n";
  }
  os << "</g>\n";

  os << "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#000000\">\n";
  for (std::int64_t x = w.lo[0]; x <= w.hi[0]; ++x)
    os << "<text x=\"" << px(x) << "\" y=\"" << py(w.lo[1]) + 18
       << "\" text-anchor=\"middle\">" << x << "</text>\n";
  for (std::int64_t y = w.lo[1]; y <= w.hi[1]; ++y)
    os << "<text x=\"" << px(w.lo[0]) - 12 << "\" y=\"" << py(y) + 4
       << "\" text-anchor=\"end\">" << y << "</text>\n";
  os << "<text class=\"axis\" x=\"" << px(w.hi[0]) << "\" y=\"" << py(w.lo[1]) + 40
     << "\" text-anchor=\"end\" font-size=\"14\">" << detail::xml_escape(d.axis_labels[0])
     << "</text>\n";
  os << "<text class=\"axis\" x=\"" << px(w.lo[0]) - 40 << "\" y=\"" << py(w.hi[1])
     << "\" text-anchor=\"middle\" font-size=\"14\">" << detail::xml_escape(d.axis_labels[1])
     << "</text>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

inline std::string render_dot(const Diagram& d) {
  std::ostringstream os;
  os << "graph semigroup {\n"
     << "  graph [layout=neato, splines=false, label=\"horizontal: "
     << detail::dot_escape(d.axis_labels[0]) << ", vertical: "
     << detail::dot_escape(d.axis_labels[1]) << "\"];\n"
     << "  node [shape=point, width=0.06];\n";
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const Point& q = d.nodes[i];
    os << "  \"" << detail::point_name(q) << "\" [pos=\"" << q[0] << ',' << q[1] << "!\"";
    if (d.components) {
      const std::size_t c = d.components->label[i];
      os << ", component=" << c << ", color=\""
         << component_palette()[c % component_palette().size()] << "\"";
    }
    os << "];\n";
  }
  const auto& palette = relation_palette();
  for (const auto& e : d.edges) {
    os << "  \"" << detail::point_name(e.from) << "\" -- \"" << detail::point_name(e.to)
       << "\" [color=\"" << palette[e.relation % palette.size()] << "\", class=\"color-"
       << e.relation + 1 << "\", relation=\"" << detail::dot_escape(d.relation_names[e.relation])
       << "\", penwidth=" << (e.original ? 3 : 1) << "];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string render_window(const Presentation& p, const Window& w, RenderFormat format,
                                 bool with_components = false) {
  Diagram d = build_diagram(p, w);
  if (with_components) d.components = label_components(d);
  return format == RenderFormat::svg ? render_svg(d) : render_dot(d);
}

}  // namespace clk
