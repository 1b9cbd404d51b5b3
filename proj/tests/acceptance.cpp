// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each criterion records its first few mismatches for diagnosis.

#include "clk/cli.hpp"
#include "support.hpp"

#include <chrono>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

namespace {

using namespace clk;
using Pair = std::pair<std::size_t, std::size_t>;

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ |= !ok;
  }

  bool report(double seconds) const {
    std::cout << (failed_ ? "FAIL" : "PASS") << "  criterion " << id_ << ": " << title_ << " ("
              << checks_ << " checks, " << std::fixed;
    std::cout.precision(2);
    std::cout << seconds << " s)\n";
    for (const auto& f : failures_) std::cout << "      " << f << "\n";
    return !failed_;
  }

 private:
  int id_;
  std::string title_;
  std::size_t checks_ = 0;
  bool failed_ = false;
  std::vector<std::string> failures_;
};

struct CliResult {
  int code;
  std::string out;
};

CliResult cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "clk");
  for (auto& a : args)
    if (a.ends_with(".json")) a = std::string(CLK_SAMPLES_DIR) + "/" + a;
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in;
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err, false);
  return {code, out.str() + err.str()};
}

report::json cli_json(std::vector<std::string> args, int expected_code, Criterion& c) {
  args.push_back("--json");
  const CliResult r = cli_run(args);
  c.expect(r.code == expected_code, args[0] + " exit " + std::to_string(r.code) + ", expected " +
                                        std::to_string(expected_code));
  try {
    return report::json::parse(r.out);
  } catch (const std::exception&) {
    c.expect(false, args[0] + " did not emit JSON: " + r.out);
    return {};
  }
}

MultiVec mv(std::initializer_list<int> xs) {
  std::vector<Integer> v(xs.begin(), xs.end());
  return MultiVec(std::move(v));
}

void toeplitz_suite(Criterion& c) {
  const auto check = cli_json({"check", "toeplitz.json"}, 0, c);
  c.expect(check["ibn"] == true, "check toeplitz: expected IBN");
  c.expect(check["certificate"]["kind"] == "qspan_excluded", "check toeplitz: certificate");

  const auto v = cli_json({"corner", "toeplitz.json", "--vertices", "v"}, 0, c);
  c.expect(v["verdict"]["kind"] == "certified_ibn", "corner v: verdict");
  c.expect(v["verdict"]["reason"] == "sufficient_test", "corner v: reason");

  const auto w = cli_json({"corner", "toeplitz.json", "--vertices", "w"}, 0, c);
  c.expect(w["verdict"]["kind"] == "certified_ibn", "corner w: verdict");
  c.expect(w["verdict"]["reason"] == "isolated_support", "corner w: reason");
  c.expect(w["sufficient_test"] == "inconclusive", "corner w: sufficient test must be inconclusive");

  const auto k0 = cli_json({"k0", "toeplitz.json", "--vertices", "w"}, 0, c);
  c.expect(k0["free_rank"] == 1 && k0["invariant_factors"].empty(), "k0: expected ℤ");
  c.expect(k0["unit_order"] == report::json{{"infinite", true}}, "k0: unit order");
  c.expect(k0["subset_order"] == report::json{{"finite", 1}}, "k0: order of [w]");
}

void l25_suite(Criterion& c) {
  const auto check = cli_json({"check", "l25.json"}, 3, c);
  c.expect(check["ibn"] == false, "check l25: expected non-IBN");
  c.expect(check["type"]["kind"] == "torsion" && check["type"]["m"] == 1 &&
               check["type"]["n"] == 2,
           "check l25: expected type (1,2), got " + check["type"].dump());

  // BFS oracle: 2(v+w) and v+w share a class inside a small box.
  const Presentation p = build_presentation(testing::two_block(2, 5));
  c.expect(testing::boxed_reachable(p, mv({2, 2}), mv({1, 1}), 8), "BFS oracle for type (1,2)");

  const auto w = cli_json({"corner", "l25.json", "--vertices", "w"}, 3, c);
  c.expect(w["verdict"] == report::json{{"kind", "non_ibn"}, {"m", 2}, {"n", 5}},
           "corner w: expected NonIBN(2,5), got " + w["verdict"].dump());

  const auto k0 = cli_json({"k0", "l25.json"}, 0, c);
  c.expect(k0.dump() == R"({"free_rank":0,"invariant_factors":[3],"unit_order":{"finite":1}})",
           "k0 l25: " + k0.dump());
  // SNF oracle: |det| of the square relation matrix is the group order.
  c.expect(abs(testing::cofactor_det(relation_matrix(p))) == 3, "determinant oracle");

  for (const char* a : {"1,0", "0,1"}) {
    const auto pro = cli_json({"monoid", "l25.json", "--progenerator", a}, 0, c);
    c.expect(pro["verdict"] == "yes", std::string("progenerator ") + a);
  }

  // n − m for a = Σv equals the K₀ order of [L].
  const auto t = algebra_type(p, Budget{});
  const auto o = k0_report(p).unit_order;
  c.expect(t.is_torsion() && o.is_finite() && o.value() == t.torsion->second - t.torsion->first,
           "K₀ order of Σv must equal n − m");
}

void scaling_suite(Criterion& c) {
  const auto v = cli_json({"corner", "l24.json", "--vertices", "v"}, 3, c);
  c.expect(v["verdict"] == report::json{{"kind", "non_ibn"}, {"m", 1}, {"n", 2}},
           "corner v of L(2,4): expected NonIBN(1,2), got " + v["verdict"].dump());
  const int m = 2, n = 4, d = std::gcd(m, n);
  c.expect(v["verdict"]["m"] == m / d && v["verdict"]["n"] == n / d, "(m/d, n/d) scaling");
}

void cohn_suite(Criterion& c) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const SeparatedGraph g = testing::random_graph(rng, 6, 10, testing::LambdaChoice::none);
    const std::string doc = serialize_graph(g);
    // Through the CLI, reading the graph as a document.
    std::istringstream in(doc);
    std::ostringstream out, err;
    const char* argv[] = {"clk", "check", "-", "--json"};
    const int code = cli::run(4, argv, in, out, err, false);
    c.expect(code == 0, "Cohn graph not IBN:\n" + doc);
    c.expect(ibn_of_algebra(build_presentation(g)).ibn, "library disagrees:\n" + doc);
  }
}

void rose_suite(Criterion& c) {
  for (int n = 2; n <= 8; ++n) {
    const Presentation p = build_presentation(testing::rose(n));
    const auto t = algebra_type(p, Budget{});
    c.expect(t.is_torsion() && *t.torsion == Pair(1, n),
             "rose " + std::to_string(n) + ": expected type (1," + std::to_string(n) + ")");
    const K0Report r = k0_report(p);
    // ℤ/(n−1): free rank 0 and the invariant factors multiply to n − 1.
    Integer order = 1;
    for (const auto& f : r.invariant_factors) order *= f;
    c.expect(r.free_rank == 0 && order == n - 1 && r.invariant_factors.size() <= 1,
             "rose " + std::to_string(n) + ": expected K₀ ≅ ℤ/" + std::to_string(n - 1));
    c.expect(r.unit_order == ElementOrder::finite(n - 1), "rose unit order");
  }
}

void property_suites(Criterion& c) {
  constexpr int kCases = 1000;
  std::mt19937 rng(7);

  // SNF certificate identity.
  for (int i = 0; i < kCases; ++i) {
    const IntMatrix m = testing::random_matrix(rng, 4, 6);
    const SNFResult s = smith_normal_form(m);
    bool chain = true;
    const auto f = s.invariant_factors();
    for (std::size_t k = 0; k + 1 < f.size(); ++k) chain &= f[k + 1] % f[k] == 0;
    c.expect(s.U * m * s.V == s.D && abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1 &&
                 chain,
             "SNF certificate");
  }

  // qspan / order dichotomy, with minimality of finite orders.
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int i = 0; i < kCases; ++i) {
    const IntMatrix m = testing::random_matrix(rng, 3, 5);
    IntVec z(m.cols());
    for (auto& x : z) x = entry(rng);
    const ElementOrder o = element_order_in_quotient(m, z);
    c.expect(o.is_finite() == qspan_contains(m, z), "order dichotomy");
    if (o.is_finite() && o.value() <= 200) {
      const long k = static_cast<long>(o.value());
      for (long j = 1; j <= k; ++j) {
        IntVec jz = z;
        for (auto& x : jz) x *= j;
        c.expect(zspan_solve(m, jz).has_value() == (j == k), "order minimality");
      }
    }
  }

  // Torsion ⇒ K₀ order divides n − m, equality for Σv.
  int torsion_seen = 0;
  for (int i = 0; i < kCases; ++i) {
    const Presentation p = build_presentation(
        testing::random_graph(rng, 3, 5, testing::LambdaChoice::all));
    const bool unit = i % 2 == 0;
    const MultiVec a = unit ? unit_sum_all(p) : testing::random_multivec(rng, p.dimension(), 1);
    const auto t = torsion_type(p, a, Budget{150, 4});
    if (!t.is_torsion()) continue;
    ++torsion_seen;
    const auto [m, n] = *t.torsion;
    const ElementOrder o = k0_order(p, a);
    c.expect(replay(p, *t.witness) && o.is_finite() && Integer(n - m) % o.value() == 0,
             "torsion order divides n − m");
    if (unit && t.unknown_probes() == 0)
      c.expect(o.value() == n - m, "unit torsion order equals n − m");
  }
  c.expect(torsion_seen >= 100, "too few torsion cases: " + std::to_string(torsion_seen));

  // Closure axioms on finite windows of acyclic Cohn graphs.
  int closure_cases = 0;
  while (closure_cases < kCases) {
    const Presentation p = build_presentation(
        testing::random_graph(rng, 3, 3, testing::LambdaChoice::none, true));
    if (p.dimension() > 4) continue;
    const testing::WindowClosure w(p, 1, 5000);
    c.expect(w.finite(), "acyclic Cohn class must be finite");
    if (!w.finite()) continue;
    const auto& pts = w.points();
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    const std::set<MultiVec> a{pts[pick(rng)], pts[pick(rng)]};
    const std::set<MultiVec> b{pts[pick(rng)]};
    const auto ca = w.closure(a), cb = w.closure(b);
    bool extensive = true;
    for (const auto& x : a) extensive &= ca.contains(x);
    c.expect(extensive, "A ⊆ closure(A)");
    c.expect(w.closure(ca) == ca, "closure is idempotent");
    std::set<MultiVec> ab = a, union_cl = ca;
    ab.insert(b.begin(), b.end());
    union_cl.insert(cb.begin(), cb.end());
    c.expect(w.closure(ab) == union_cl, "closure of a union");
    const MultiVec& y = pts[pick(rng)];
    const auto d = dominated_by(p, y, *a.begin(), Budget{5000, 1});
    c.expect(d.verdict != Tri::unknown && (d.verdict == Tri::yes) == w.below(y, *a.begin()),
             "engine domination agrees with enumerated classes");
    ++closure_cases;
  }

  // Translation invariance of ~.
  for (int i = 0; i < kCases; ++i) {
    const Presentation p = build_presentation(
        testing::random_graph(rng, 4, 6, testing::LambdaChoice::random));
    const MultiVec x = testing::random_multivec(rng, p.dimension(), 2);
    const MultiVec y = testing::random_walk(p, x, 5, rng);
    const MultiVec t = testing::random_multivec(rng, p.dimension(), 2, false);
    const auto base = equivalent(p, x, y, Budget{300, 4});
    c.expect(base.kind != EqOutcome::Kind::inequivalent, "walk endpoints declared inequivalent");
    if (base.kind == EqOutcome::Kind::equivalent)
      c.expect(replay(p, base.witness->translated(t)), "translated witness replays");
    const auto moved = equivalent(p, x + t, y + t, Budget{300, 4});
    c.expect(moved.kind != EqOutcome::Kind::inequivalent, "translate declared inequivalent");
  }

  // Λ-vs-Π span agreement (ibn_of_algebra throws on disagreement).
  for (int i = 0; i < kCases; ++i) {
    const Presentation p = build_presentation(
        testing::random_graph(rng, 6, 10, testing::LambdaChoice::random));
    const IntVec target = unit_sum_all(p).as_int_vec();
    c.expect(qspan_contains(relation_matrix(p), target) ==
                 qspan_contains(lambda_relation_matrix(p), target),
             "Λ and Π spans disagree");
    try {
      const IbnVerdict v = ibn_of_algebra(p);
      c.expect(v.ibn || verify_coefficients(p, *v.coefficients), "coefficients verify");
    } catch (const std::logic_error& e) {
      c.expect(false, e.what());
    }
  }

  // Equivalent witnesses replay exactly.
  int replayed = 0;
  for (int i = 0; i < kCases; ++i) {
    const Presentation p = build_presentation(
        testing::random_graph(rng, 4, 6, testing::LambdaChoice::random));
    const MultiVec x = testing::random_multivec(rng, p.dimension(), 2);
    const MultiVec y = testing::random_walk(p, x, 6, rng);
    const auto out = equivalent(p, x, y, Budget{300, 4});
    if (out.kind != EqOutcome::Kind::equivalent) continue;
    ++replayed;
    c.expect(out.witness->start == x && out.witness->end() == y && replay(p, *out.witness),
             "witness replay");
    c.expect(zspan_solve(relation_matrix(p), x - y).has_value(), "K₀ necessity");
  }
  c.expect(replayed >= kCases / 2, "too few equivalent pairs: " + std::to_string(replayed));
}

void render_suite(Criterion& c) {
  const CliResult svg = cli_run({"render", "l25.json", "--window", "0:4,0:5"});
  c.expect(svg.code == 0, "render l25 exit code");
  auto count = [](const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
      ++n;
    return n;
  };
  const std::size_t blue = count(svg.out, "class=\"edge color-1\"");
  const std::size_t red = count(svg.out, "class=\"edge color-2\"");
  c.expect(blue == 16 && red == 4,
           "expected 16/4 edges, got " + std::to_string(blue) + "/" + std::to_string(red));

  const Presentation t = build_presentation(testing::toeplitz());
  const Window w{{0, 0}, {4, 4}, Domain::natural_quadrant};
  const std::size_t comps = window_components(t, w).count;
  c.expect(comps == 8, "Toeplitz component count " + std::to_string(comps));
  c.expect(testing::flood_fill_components(t, w) == 8, "flood-fill oracle");
  const auto j = cli_json({"render", "toeplitz.json", "--window", "0:4,0:4", "--components"}, 0, c);
  c.expect(j["components"]["count"] == 8, "CLI component count");

  const CliResult again = cli_run({"render", "l25.json", "--window", "0:4,0:5"});
  c.expect(again.out == svg.out, "SVG byte determinism");
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    std::function<void(Criterion&)> body;
  };
  const std::vector<Entry> entries{
      {1, "Toeplitz suite", toeplitz_suite},
      {2, "L(2,5) suite", l25_suite},
      {3, "L(2,4) corner scaling", scaling_suite},
      {4, "separated Cohn algebras have IBN (200 random graphs)", cohn_suite},
      {5, "rose family L(1,n), n = 2..8", rose_suite},
      {6, "property suites (1000 cases each)", property_suites},
      {7, "render fidelity", render_suite},
  };
  bool all = true;
  for (const auto& e : entries) {
    Criterion c(e.id, e.title);
    const auto start = std::chrono::steady_clock::now();
    try {
      e.body(c);
    } catch (const std::exception& ex) {
      c.expect(false, std::string("exception: ") + ex.what());
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    all &= c.report(took.count());
  }
  std::cout << (all ? "all acceptance criteria passed" : "acceptance criteria failed") << "\n";
  return all ? 0 : 1;
}
