#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hslope/maps.hpp"

namespace hslope {

/// full_interval: gamma_k = (-1)^k |gamma_k|, slope set [0, pi].
/// half_interval: gamma_k > 0, slope set [0, pi/2].
enum class Variant { full_interval, half_interval };
std::string to_string(Variant v);
std::optional<Variant> variant_from_string(std::string_view name);

/// a_k = a_base a_growth^k (k!)^ea,  |gamma_k| = gamma_base gamma_growth^k (k!)^eg
/// with (ea, eg) = (2, 4) for full_interval and (3, 6) for half_interval.
struct Generator {
  Rational a_base{1};
  Rational a_growth{1};
  Rational gamma_base{1};
  Rational gamma_growth{1};
  int K = 2;
};

struct Term {
  Rational a;
  Rational gamma;
};

/// f(z) = z + sum_k a_k / (gamma_k - z) with finitely many stored terms.
class ConstructionSpec {
 public:
  /// Throws InputError unless a_k > 0, gamma_k != 0, signs follow the
  /// variant, |gamma_1| >= 1 and K >= 2.
  static ConstructionSpec make(Variant variant, std::vector<Term> terms,
                               std::optional<Generator> meta = std::nullopt);

  Variant variant() const noexcept { return variant_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const std::optional<Generator>& meta() const noexcept { return meta_; }
  int K() const noexcept { return static_cast<int>(terms_.size()); }

  /// Term k (1-based) of the generator, also beyond K. Requires meta.
  Term generated_term(int k) const;

 private:
  Variant variant_ = Variant::full_interval;
  std::vector<Term> terms_;
  std::optional<Generator> meta_;
};

/// Throws InputError for K < 2 or non-positive constants.
ConstructionSpec build_construction(Variant variant, const Generator& g);

/// Reduced-form map with atoms (1 + gamma_k^2)^{-1} a_k at gamma_k and beta_tilde = 0,
/// truncated to the stored terms.
ParabolicMap to_parabolic_map(const ConstructionSpec& spec);

enum class Verdict { pass, fail, uncertifiable };
std::string to_string(Verdict v);

struct ConditionCheck {
  std::string condition;
  int k = 0;
  Verdict verdict = Verdict::pass;
  Rational lhs;
  Rational rhs;
  std::string statement;  // e.g. "sum_{l<k} a_l <= a_k/(80k)"
};

/// Upper bound on sum_{l>K} a_l/|gamma_l|. For generated specs the term ratio
/// (a_{l+1}|gamma_l|)/(a_l|gamma_{l+1}|) is non-increasing in l, so the tail is
/// dominated by a geometric series from l = K+1 when the ratio at l = K+1 is < 1.
struct TailCertificate {
  std::string method;  // "geometric" or "finite"
  bool certified = false;
  Rational ratio;       // common ratio bound (geometric only)
  Rational tail_bound;  // bound on sum_{l>K} a_l/|gamma_l|
};

struct ConditionReport {
  Variant variant = Variant::full_interval;
  int K = 0;
  TailCertificate tail;
  std::vector<ConditionCheck> checks;  // grouped by condition, ascending k
  bool passed = false;
  std::optional<std::size_t> first_failure;  // index into checks

  /// True when every check at an index <= k passes and the tail is certified.
  bool passes_up_to(int k) const;
};

/// Conditions, in report order, with (c1, c2, c3, c4) = (4k, 8k, 80k, 160k)
/// for full_interval and (24k, 24k, 64k^2, 100k^2) for half_interval:
///   gamma_growth       4|gamma_k| <= |gamma_{k+1}|
///   partial_sum_small  sum_{l<=k} a_l <= |gamma_k|/c1
///   tail_small         sum_{l>k} a_l/|gamma_l| <= |gamma_k|/c2
///   dominance_partial  sum_{l<k} a_l <= a_k/c3
///   dominance_tail     sum_{l>k} a_l/|gamma_l| <= a_k/(c4 |gamma_k|)
///   summable           sum_l a_l/|gamma_l| has a certified bound
///   ratio_growth       gamma_k^2/a_k strictly increasing
/// All arithmetic is exact.
ConditionReport validate_conditions(const ConstructionSpec& spec);

struct SearchBounds {
  int max_growth_exponent = 20;  // a_growth, gamma_growth in {2^0 .. 2^e}
  int max_base_exponent = 40;    // gamma_base in {2^0 .. 2^e}; a_base = 1
};

struct SearchResult {
  std::optional<Generator> generator;
  std::optional<ConstructionSpec> spec;
  std::optional<ConditionReport> report;
  std::size_t candidates = 0;
  /// When infeasible: first (condition, k) failing for every candidate.
  std::optional<ConditionCheck> binding;
};

/// Lexicographically smallest (a_growth, gamma_growth, gamma_base) on the
/// power-of-two grid whose spec passes every condition.
SearchResult search_constants(Variant variant, int K, const SearchBounds& bounds = {});

struct LemmaGridOptions {
  int samples = 32;       // per axis, plus edge midpoints
  double C = 1.25;        // height factor of the return region
  Bits bits = 512;
};

struct InequalityResult {
  std::string region;
  std::string inequality;
  bool counted = true;  // diagnostics are reported but do not affect `passed`
  std::size_t points = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;  // min over points of (rhs - lhs) / |rhs|
  std::string witness_x;      // point with the worst margin
  std::string witness_y;
};

struct LemmaReport {
  Variant variant = Variant::full_interval;
  int k = 0;
  double C = 0.0;
  Bits bits = 0;
  std::vector<InequalityResult> results;
  bool passed = false;
};

/// Samples the single-step inequalities of the orbit-control lemmas on
/// log-spaced grids over their regions for index k, with the truncation tail
/// as an error bar. Requires the construction to pass validate_conditions up to k.
LemmaReport check_region_lemmas(const ConstructionSpec& spec, int k,
                                const LemmaGridOptions& options = {});

}  // namespace hslope
