#pragma once

// Verdicts on the algebra and its vertex corners, each with a certificate:
//  - IBN of the algebra: Σ_{v∈V} v against the ℚ-span of the relations.
//  - K₀ = ℤΩ / ⟨relations⟩ through the Smith form.
//  - Type (m, n): least n with n·[L] = m·[L], found by rewriting search.
//  - Corners α = Σ_{v∈H} v: two sound IBN certificates plus torsion search.

#include "clk/exact_linalg.hpp"
#include "clk/presentation.hpp"
#include "clk/semigroup_engine.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace clk {

struct IbnVerdict {
  enum class Certificate { qspan_excluded, qspan_member };

  bool ibn = true;
  Certificate certificate = Certificate::qspan_excluded;
  /// One coefficient per relation (Π order) with Σ cᵢ Rᵢ = Σv; zero on Π∖Λ.
  std::optional<QVec> coefficients;
  std::optional<std::pair<std::size_t, std::size_t>> type_if_known;
};

inline const char* to_string(IbnVerdict::Certificate c) {
  return c == IbnVerdict::Certificate::qspan_excluded ? "qspan_excluded" : "qspan_member";
}

/// Recomputes Σ cᵢ Rᵢ and compares with Σv.
inline bool verify_coefficients(const Presentation& p, const QVec& c) {
  if (c.size() != p.relations.size()) return false;
  const IntMatrix m = relation_matrix(p);
  QVec sum(p.dimension());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!p.relations[i].in_lambda && c[i] != 0) return false;
    for (std::size_t j = 0; j < m.cols(); ++j) sum[j] += c[i] * Rational(m(i, j));
  }
  return sum == to_qvec(unit_sum_all(p).as_int_vec());
}

inline IbnVerdict ibn_of_algebra(const Presentation& p) {
  const IntVec target = unit_sum_all(p).as_int_vec();
  const IntMatrix all = relation_matrix(p);
  const IntMatrix lambda = lambda_relation_matrix(p);
  const bool in_all = qspan_contains(all, target);
  const bool in_lambda = qspan_contains(lambda, target);
  // Projecting onto a block generator Y ∉ Λ kills every relation but R_Y, so
  // the two spans meet the vertex coordinates identically.
  if (in_all != in_lambda)
    throw std::logic_error("ibn_of_algebra: Λ-only and full-Π span tests disagree");

  IbnVerdict v;
  if (!in_all) return v;

  v.ibn = false;
  v.certificate = IbnVerdict::Certificate::qspan_member;
  auto lam = qspan_solve(lambda, to_qvec(target));
  if (!lam) throw std::logic_error("ibn_of_algebra: span member without coefficients");
  QVec c(p.relations.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.relations.size(); ++i)
    if (p.relations[i].in_lambda) c[i] = (*lam)[k++];
  if (!verify_coefficients(p, c))
    throw std::logic_error("ibn_of_algebra: coefficients failed to verify");
  v.coefficients = std::move(c);
  return v;
}

struct K0Report {
  std::size_t free_rank = 0;
  /// Invariant factors greater than one.
  std::vector<Integer> invariant_factors;
  /// Order of [Σv] in K₀.
  ElementOrder unit_order = ElementOrder::infinite();
  SNFResult snf;
};

inline K0Report k0_report(const Presentation& p) {
  const IntMatrix m = relation_matrix(p);
  K0Report r;
  r.snf = smith_normal_form(m);
  r.free_rank = r.snf.free_rank();
  r.invariant_factors = r.snf.torsion_factors();
  r.unit_order = element_order_in_quotient(m, r.snf, unit_sum_all(p).as_int_vec());
  return r;
}

/// Order of an arbitrary vertex sum in K₀.
inline ElementOrder k0_order(const Presentation& p, const MultiVec& alpha) {
  return element_order_in_quotient(relation_matrix(p), alpha.as_int_vec());
}

/// Type of the algebra; skips the search when IBN is certified.
inline TorsionType algebra_type(const Presentation& p, const Budget& budget) {
  if (ibn_of_algebra(p).ibn) return TorsionType::none_unbounded();
  return torsion_type(p, unit_sum_all(p), budget);
}

/// No relation has lhs or rhs supported inside H, so no rewrite ever applies
/// to a multiple of Σ_{v∈H} v and every class {k·α} is a singleton.
inline bool isolated_support(const Presentation& p, const MultiVec& alpha) {
  auto supported_in = [&](const MultiVec& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0 && alpha[i] == 0) return false;
    return true;
  };
  for (const auto& r : p.relations)
    if (supported_in(r.lhs) || supported_in(r.rhs)) return false;
  return true;
}

struct CornerReport {
  enum class Verdict { certified_ibn, non_ibn, unknown };
  enum class Reason { none, sufficient_test, isolated_support };

  std::vector<std::string> vertices;
  MultiVec alpha;
  bool sufficient_test_passed = false;
  bool isolated_support = false;
  TorsionType torsion;
  Verdict verdict = Verdict::unknown;
  Reason reason = Reason::none;
};

inline const char* to_string(CornerReport::Verdict v) {
  switch (v) {
    case CornerReport::Verdict::certified_ibn: return "certified_ibn";
    case CornerReport::Verdict::non_ibn: return "non_ibn";
    case CornerReport::Verdict::unknown: return "unknown";
  }
  return "unknown";
}

inline const char* to_string(CornerReport::Reason r) {
  switch (r) {
    case CornerReport::Reason::none: return "none";
    case CornerReport::Reason::sufficient_test: return "sufficient_test";
    case CornerReport::Reason::isolated_support: return "isolated_support";
  }
  return "none";
}

inline CornerReport corner_report(const Presentation& p, const std::vector<std::string>& h,
                                  const Budget& budget) {
  CornerReport r;
  r.alpha = unit_sum(p, h);
  for (const auto& v : p.graph.vertices)
    if (std::find(h.begin(), h.end(), v) != h.end()) r.vertices.push_back(v);

  r.sufficient_test_passed = !qspan_contains(lambda_relation_matrix(p), r.alpha.as_int_vec());
  r.isolated_support = isolated_support(p, r.alpha);
  r.torsion = torsion_type(p, r.alpha, budget);

  const bool certified = r.sufficient_test_passed || r.isolated_support;
  if (certified && r.torsion.is_torsion())
    throw std::logic_error("corner_report: certified IBN corner exhibits torsion");

  if (r.sufficient_test_passed) {
    r.verdict = CornerReport::Verdict::certified_ibn;
    r.reason = CornerReport::Reason::sufficient_test;
  } else if (r.isolated_support) {
    r.verdict = CornerReport::Verdict::certified_ibn;
    r.reason = CornerReport::Reason::isolated_support;
  } else if (r.torsion.is_torsion()) {
    r.verdict = CornerReport::Verdict::non_ibn;
  }
  return r;
}

}  // namespace clk
