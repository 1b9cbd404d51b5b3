#pragma once

// Command-line front end. `run` is the whole program minus process setup, so
// tests can drive it in-process with string streams.
//
// Exit codes: 0 positive verdict, 3 negative verdict, 4 input error,
// 5 inconclusive.

#include "clk/errors.hpp"
#include "clk/geometry_render.hpp"
#include "clk/graph_model.hpp"
#include "clk/ktheory.hpp"
#include "clk/presentation.hpp"
#include "clk/report.hpp"
#include "clk/semigroup_engine.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace clk::cli {

enum ExitCode : int { positive = 0, negative = 3, input_error = 4, inconclusive = 5 };

struct RunConfig {
  std::string subcommand;
  std::string input = "-";
  Budget budget;
  bool json = false;
  bool color = false;

  // corner / k0
  std::string vertices;
  // monoid
  std::string eq, cls, closure, progenerator, torsion;
  bool witness = false;
  // render
  std::string window, domain = "n", format = "svg";
  bool components = false;
};

namespace detail {

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(in), {});
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open input file '" + path + "'", path);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

/// Comma-separated nonnegative counts in generator order.
inline MultiVec parse_vector(const Presentation& p, const std::string& text) {
  static const std::regex digits("[0-9]+");
  std::vector<Integer> counts;
  for (const auto& part : split(text, ',')) {
    const std::string t = trim(part);
    if (!std::regex_match(t, digits))
      throw InputError("malformed vector '" + text + "': expected comma-separated counts", text);
    counts.emplace_back(t);
  }
  if (counts.size() != p.dimension())
    throw InputError("vector '" + text + "' has " + std::to_string(counts.size()) +
                         " entries, expected " + std::to_string(p.dimension()),
                     text);
  MultiVec v(std::move(counts));
  if (v.is_zero()) throw InputError("vector '" + text + "' must be nonzero", text);
  return v;
}

inline std::pair<MultiVec, MultiVec> parse_pair(const Presentation& p, const std::string& text) {
  auto parts = split(text, '|');
  if (parts.size() != 2) throw InputError("expected \"x | y\", got '" + text + "'", text);
  return {parse_vector(p, parts[0]), parse_vector(p, parts[1])};
}

inline std::vector<std::string> parse_vertex_list(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& part : split(text, ',')) {
    const std::string t = trim(part);
    if (t.empty()) throw InputError("empty vertex name in '" + text + "'", text);
    out.push_back(t);
  }
  return out;
}

inline Window parse_window(const std::string& text, const std::string& domain) {
  static const std::regex shape(R"(\s*(-?\d+):(-?\d+)\s*,\s*(-?\d+):(-?\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, shape))
    throw InputError("window must look like X0:X1,Y0:Y1, got '" + text + "'", text);
  Window w;
  w.lo = {std::stoll(m[1]), std::stoll(m[3])};
  w.hi = {std::stoll(m[2]), std::stoll(m[4])};
  if (domain == "n")
    w.domain = Domain::natural_quadrant;
  else if (domain == "z")
    w.domain = Domain::full_lattice;
  else
    throw InputError("domain must be n or z", domain);
  w.validate();
  return w;
}

inline std::string superscript(std::size_t n) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string out;
  for (char ch : std::to_string(n)) out += digits[ch - '0'];
  return out;
}

inline std::string group_name(const K0Report& r) {
  std::vector<std::string> parts;
  for (const auto& d : r.invariant_factors) parts.push_back("ℤ/" + d.str());
  if (r.free_rank == 1) parts.push_back("ℤ");
  if (r.free_rank > 1) parts.push_back("ℤ" + superscript(r.free_rank));
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " ⊕ " + parts[i];
  return s;
}

inline std::string order_phrase(const ElementOrder& o) {
  return o.is_finite() ? "order " + o.value().str() : "infinite order";
}

struct Painter {
  bool enabled;
  std::string operator()(const std::string& s, const char* code) const {
    return enabled ? std::string("\033[") + code + "m" + s + "\033[0m" : s;
  }
  std::string good(const std::string& s) const { return (*this)(s, "32"); }
  std::string bad(const std::string& s) const { return (*this)(s, "31"); }
  std::string unsure(const std::string& s) const { return (*this)(s, "33"); }
};

inline std::string relation_text(const Presentation& p, const Relation& r) {
  auto side = [&](const MultiVec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      if (!s.empty()) s += " + ";
      if (v[i] != 1) s += v[i].str();
      s += p.generators[i];
    }
    return s;
  };
  return side(r.lhs) + " = " + side(r.rhs);
}

inline void print_witness(std::ostream& out, const Presentation& p, const Witness& w) {
  out << "  " << w.start.str() << "\n";
  for (const auto& s : w.steps)
    out << "  -[" << p.relations[s.relation].name << " " << to_string(s.direction) << "]-> "
        << s.to.str() << "\n";
}

inline std::string torsion_text(const TorsionType& t) {
  if (t.torsion)
    return "(" + std::to_string(t.torsion->first) + "," + std::to_string(t.torsion->second) + ")";
  if (!t.bound) return "none (infinite order certified)";
  std::string s = "none found up to n=" + std::to_string(*t.bound);
  if (t.all_certified())
    s += ", every probe certified";
  else
    s += ", " + std::to_string(t.unknown_probes()) + " probes inconclusive";
  return s;
}

inline int tri_exit(Tri t) {
  return t == Tri::yes ? positive : t == Tri::no_up_to_bound ? negative : inconclusive;
}

inline void emit(std::ostream& out, const report::json& j) { out << j.dump() << "\n"; }

inline int cmd_check(const RunConfig& cfg, const Presentation& p, std::ostream& out,
                     const Painter& paint) {
  IbnVerdict v = ibn_of_algebra(p);
  std::optional<TorsionType> type;
  if (!v.ibn) {
    type = torsion_type(p, unit_sum_all(p), cfg.budget);
    if (type->torsion) v.type_if_known = type->torsion;
  }
  if (cfg.json) {
    auto j = report::to_json(v);
    j["type"] = type ? report::to_json(p, *type) : report::json(nullptr);
    emit(out, j);
  } else if (v.ibn) {
    out << "IBN: " << paint.good("yes") << " (Σv ∉ ℚ-span)\n"
        << "certificate: qspan_excluded\n";
  } else {
    out << "IBN: " << paint.bad("no") << "; type " << torsion_text(*type) << "\n"
        << "certificate: qspan_member, Σv =";
    for (std::size_t i = 0; i < v.coefficients->size(); ++i)
      out << (i ? " +" : "") << " (" << to_string((*v.coefficients)[i]) << ")·"
          << p.relations[i].name;
    out << "\n";
  }
  return v.ibn ? positive : negative;
}

inline int cmd_k0(const RunConfig& cfg, const Presentation& p, std::ostream& out) {
  const K0Report r = k0_report(p);
  std::optional<ElementOrder> subset;
  if (!cfg.vertices.empty())
    subset = k0_order(p, unit_sum(p, parse_vertex_list(cfg.vertices)));
  if (cfg.json) {
    auto j = report::to_json(r);
    if (subset) j["subset_order"] = report::to_json(*subset);
    emit(out, j);
  } else {
    out << "K₀ ≅ " << group_name(r) << "; [L] has " << order_phrase(r.unit_order) << "\n";
    if (subset) out << "[Σ{" << cfg.vertices << "}] has " << order_phrase(*subset) << "\n";
  }
  return positive;
}

inline int cmd_type(const RunConfig& cfg, const Presentation& p, std::ostream& out) {
  const IbnVerdict v = ibn_of_algebra(p);
  const TorsionType t = v.ibn ? TorsionType::none_unbounded()
                              : torsion_type(p, unit_sum_all(p), cfg.budget);
  if (cfg.json)
    emit(out, report::to_json(p, t));
  else
    out << "type: " << torsion_text(t) << (v.ibn ? " [qspan_excluded]" : "") << "\n";
  if (t.torsion) return negative;
  return v.ibn ? positive : inconclusive;
}

inline int cmd_corner(const RunConfig& cfg, const Presentation& p, std::ostream& out,
                      const Painter& paint) {
  const CornerReport r = corner_report(p, parse_vertex_list(cfg.vertices), cfg.budget);
  if (cfg.json) {
    emit(out, report::to_json(p, r));
  } else {
    std::string names;
    for (const auto& v : r.vertices) names += (names.empty() ? "" : ",") + v;
    out << "corner {" << names << "}: ";
    switch (r.verdict) {
      case CornerReport::Verdict::certified_ibn:
        out << paint.good("CertifiedIBN") << " (" << to_string(r.reason) << ")\n";
        break;
      case CornerReport::Verdict::non_ibn:
        out << paint.bad("NonIBN") << " (" << r.torsion.torsion->first << ","
            << r.torsion.torsion->second << ")\n";
        break;
      case CornerReport::Verdict::unknown:
        out << paint.unsure("Unknown") << "\n";
        break;
    }
    out << "  sufficient_test: " << (r.sufficient_test_passed ? "passed" : "inconclusive") << "\n"
        << "  isolated_support: " << (r.isolated_support ? "holds" : "fails") << "\n"
        << "  torsion: " << torsion_text(r.torsion) << "\n";
  }
  switch (r.verdict) {
    case CornerReport::Verdict::certified_ibn: return positive;
    case CornerReport::Verdict::non_ibn: return negative;
    default: return inconclusive;
  }
}

inline int cmd_monoid(const RunConfig& cfg, const Presentation& p, std::ostream& out,
                      const Painter& paint) {
  if (!cfg.eq.empty()) {
    auto [x, y] = parse_pair(p, cfg.eq);
    const EqOutcome e = equivalent(p, x, y, cfg.budget);
    if (cfg.json) {
      emit(out, report::to_json(p, e));
    } else {
      switch (e.kind) {
        case EqOutcome::Kind::equivalent:
          out << paint.good("Equivalent") << " (witness: " << e.witness->steps.size()
              << " steps)\n";
          if (cfg.witness) print_witness(out, p, *e.witness);
          break;
        case EqOutcome::Kind::inequivalent:
          out << paint.bad("Inequivalent") << " (" << to_string(e.certificate) << ")\n";
          break;
        case EqOutcome::Kind::unknown:
          out << paint.unsure("Unknown") << " (" << e.states_visited << " states visited)\n";
          break;
      }
    }
    return e.kind == EqOutcome::Kind::equivalent     ? positive
           : e.kind == EqOutcome::Kind::inequivalent ? negative
                                                     : inconclusive;
  }
  if (!cfg.cls.empty()) {
    const ClassEnumeration c = class_enumerate(p, parse_vector(p, cfg.cls), cfg.budget);
    if (cfg.json) {
      emit(out, report::to_json(c));
    } else {
      out << (c.status == SearchStatus::complete ? "Complete" : "Partial") << " class, "
          << c.visited << " members\n";
      std::size_t shown = 0;
      for (const auto& m : c.members) {
        if (shown++ == 50) {
          out << "  ...\n";
          break;
        }
        out << "  " << m.str() << "\n";
      }
    }
    return c.status == SearchStatus::complete ? positive : inconclusive;
  }
  if (!cfg.closure.empty()) {
    auto [a, y] = parse_pair(p, cfg.closure);
    const ClosureOutcome c = closure_contains(p, a, y, cfg.budget);
    if (cfg.json) {
      emit(out, report::to_json(p, c));
    } else {
      out << "closure: " << to_string(c.verdict);
      if (c.verdict == Tri::yes) out << " (k=" << *c.k << ", u=" << c.u->str() << ")";
      out << "\n";
      if (cfg.witness && c.path) print_witness(out, p, *c.path);
    }
    return tri_exit(c.verdict);
  }
  if (!cfg.progenerator.empty()) {
    const ProgeneratorOutcome o = is_progenerator(p, parse_vector(p, cfg.progenerator), cfg.budget);
    if (cfg.json) {
      emit(out, report::to_json(p, o));
    } else {
      out << "progenerator: " << to_string(o.verdict) << "\n";
      for (std::size_t g = 0; g < o.per_generator.size(); ++g) {
        const auto& c = o.per_generator[g];
        out << "  " << p.generators[g] << ": " << to_string(c.verdict);
        if (c.verdict == Tri::yes) out << " (k=" << *c.k << ", u=" << c.u->str() << ")";
        out << "\n";
      }
    }
    return tri_exit(o.verdict);
  }
  if (!cfg.torsion.empty()) {
    const TorsionType t = torsion_type(p, parse_vector(p, cfg.torsion), cfg.budget);
    if (cfg.json)
      emit(out, report::to_json(p, t));
    else
      out << "torsion: " << torsion_text(t) << "\n";
    return t.torsion ? negative : t.all_certified() ? positive : inconclusive;
  }
  if (cfg.json) {
    emit(out, presentation_to_json(p));
  } else {
    out << "generators: ";
    for (std::size_t i = 0; i < p.generators.size(); ++i)
      out << (i ? ", " : "") << p.generators[i];
    out << "\n";
    for (const auto& r : p.relations) out << "  " << r.name << ": " << relation_text(p, r) << "\n";
  }
  return positive;
}

inline int cmd_render(const RunConfig& cfg, const Presentation& p, std::ostream& out) {
  const Window w = parse_window(cfg.window, cfg.domain);
  if (cfg.components && w.domain != Domain::natural_quadrant)
    throw InputError("--components needs the natural-quadrant domain (--domain n)");
  Diagram d = build_diagram(p, w);
  if (cfg.components) d.components = label_components(d);
  if (cfg.json)
    emit(out, report::to_json(d));
  else
    out << (cfg.format == "dot" ? render_dot(d) : render_svg(d));
  return positive;
}

inline int cmd_info(const RunConfig& cfg, const Presentation& p, std::ostream& out) {
  const IntMatrix m = relation_matrix(p);
  if (cfg.json) {
    report::json rows = report::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(counts_to_json(m.row(i)));
    emit(out, report::json{{"graph", graph_to_json(p.graph)},
                           {"presentation", presentation_to_json(p)},
                           {"relation_matrix", rows}});
    return positive;
  }
  std::size_t lambda = 0;
  for (const auto& b : p.graph.blocks) lambda += b.in_lambda;
  out << "vertices: " << p.graph.vertices.size() << ", edges: " << p.graph.edges.size()
      << ", blocks: " << p.graph.blocks.size() << " (" << lambda << " in lambda)\n";
  out << "generators: ";
  for (std::size_t i = 0; i < p.generators.size(); ++i) out << (i ? ", " : "") << p.generators[i];
  out << "\nrelations:\n";
  for (const auto& r : p.relations) out << "  " << r.name << ": " << relation_text(p, r) << "\n";
  out << "relation matrix:\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j).str();
    out << "]\n";
  }
  return positive;
}

}  // namespace detail

/// Runs one invocation. `tty` says whether `out` is a terminal (for
/// CLK_COLOR=auto).
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
               std::ostream& err, bool tty = false) {
  RunConfig cfg;
  CLI::App app{"Invariant basis number and K-theory of separated Cohn-Leavitt path algebras",
               "clk"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", cfg.json, "Emit JSON");
  app.add_option("--max-states", cfg.budget.max_states, "State budget per search")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-multiple", cfg.budget.max_multiple, "Largest multiple probed")
      ->check(CLI::PositiveNumber);

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "Graph JSON file, or - for stdin")->required();
  };

  auto* check = app.add_subcommand("check", "Decide IBN of the algebra");
  add_input(check);
  auto* k0 = app.add_subcommand("k0", "Grothendieck group and order of [L]");
  add_input(k0);
  k0->add_option("--vertices", cfg.vertices, "Also report the order of Σ of these vertices");
  auto* type = app.add_subcommand("type", "Non-IBN type (m,n) of the algebra");
  add_input(type);
  auto* corner = app.add_subcommand("corner", "IBN of the corner αLα, α = Σ_{v∈H} v");
  add_input(corner);
  corner->add_option("--vertices", cfg.vertices, "Comma-separated vertex subset H")->required();
  auto* monoid = app.add_subcommand("monoid", "Word problem in the graph semigroup");
  add_input(monoid);
  auto* eq = monoid->add_option("--eq", cfg.eq, "\"x | y\": decide x ~ y");
  auto* cls = monoid->add_option("--class", cfg.cls, "Enumerate the class of x");
  auto* clo = monoid->add_option("--closure", cfg.closure, "\"a | y\": is y in closure of <a>");
  auto* pro = monoid->add_option("--progenerator", cfg.progenerator, "Is a a progenerator");
  auto* tor = monoid->add_option("--torsion", cfg.torsion, "Torsion type of a");
  monoid->add_flag("--witness", cfg.witness, "Print rewrite witnesses");
  const std::vector<CLI::Option*> ops{eq, cls, clo, pro, tor};
  for (auto* a : ops)
    for (auto* b : ops)
      if (a != b) a->excludes(b);
  auto* render = app.add_subcommand("render", "Draw the geometric representation");
  add_input(render);
  render->add_option("--window", cfg.window, "X0:X1,Y0:Y1")->required();
  render->add_option("--domain", cfg.domain, "n (ℕΩ∖{0}) or z (ℤΩ)")
      ->check(CLI::IsMember({"n", "z"}));
  render->add_option("--format", cfg.format, "svg or dot")->check(CLI::IsMember({"svg", "dot"}));
  render->add_flag("--components", cfg.components, "Color nodes by in-window component");
  auto* info = app.add_subcommand("info", "Summarize the graph and its presentation");
  add_input(info);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return positive;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }

  const char* color_env = std::getenv("CLK_COLOR");
  const std::string color_mode = color_env ? color_env : "auto";
  cfg.color = !cfg.json && color_mode != "never" && tty;
  const detail::Painter paint{cfg.color};

  Presentation p;
  try {
    p = build_presentation(parse_graph(detail::read_input(cfg.input, in)));
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "check") return detail::cmd_check(cfg, p, out, paint);
    if (name == "k0") return detail::cmd_k0(cfg, p, out);
    if (name == "type") return detail::cmd_type(cfg, p, out);
    if (name == "corner") return detail::cmd_corner(cfg, p, out, paint);
    if (name == "monoid") return detail::cmd_monoid(cfg, p, out, paint);
    if (name == "render") return detail::cmd_render(cfg, p, out);
    return detail::cmd_info(cfg, p, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
}

}  // namespace clk::cli
