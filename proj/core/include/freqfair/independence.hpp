#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "freqfair/frequency.hpp"
#include "freqfair/selection_rule.hpp"

namespace freqfair {

// ============================================================================
//  Verdicts and tolerances
// ============================================================================

enum class Verdict { independent, dependent, inconclusive };

std::string_view to_string(Verdict v);

/// Comparison tolerance for frequency deltas. "auto" scales with the
/// sampling noise of the subselected estimate:
///   max(1/100, 3 * sqrt(p_hat * (1 - p_hat) / selected_count))
/// pinned to an exact rational (9 significant decimal digits) so verdicts
/// are exact rational comparisons.
class Tolerance {
 public:
  static Tolerance automatic() { return Tolerance(); }
  static Tolerance exact(Rational value);

  bool is_auto() const { return !value_.has_value(); }
  const Rational& value() const { return *value_; }

  /// The effective rational bound for a given overall estimate and
  /// subselection size. Explicit tolerances pass through unchanged.
  Rational effective(const std::optional<Rational>& p_overall, std::uint64_t selected_count) const;

 private:
  Tolerance() = default;
  std::optional<Rational> value_;
};

inline constexpr std::uint64_t kDefaultMinCount = 100;

/// Outcome of a subselection-invariance comparison. Inconclusive whenever
/// the subselection is too small or either convergence diagnostic fails;
/// otherwise independent iff |p_selected - p_overall| <= tolerance.
struct IndependenceVerdict {
  std::optional<Rational> p_overall;
  std::optional<Rational> p_selected;
  std::optional<Rational> delta;
  std::uint64_t selected_count = 0;
  Rational tolerance = Rational(0);
  Verdict verdict = Verdict::inconclusive;
  ConvergenceDiagnostic convergence_overall;
  ConvergenceDiagnostic convergence_selected;
};

// ============================================================================
//  Subselection invariance (frequency-limit independence)
// ============================================================================

/// Tests whether subselecting x at the ones of y leaves the frequency
/// estimate unchanged. y plays the role of a selector; zero selections with
/// min_count = 0 give p_selected = 0 (the 0/0 := 0 convention) but the
/// verdict stays inconclusive.
IndependenceVerdict vonmises_independent(const BitSequence& x, const BitSequence& y,
                                         const Tolerance& tol = Tolerance::automatic(),
                                         std::uint64_t min_count = kDefaultMinCount,
                                         const DiagnosticParams& diag = {});

/// Same comparison with a declarative rule as the selector. Convergence is
/// checked for the overall and the subselected frequency of x only, never
/// for the rule's own frequency.
IndependenceVerdict admissible(const BitSequence& x, const SelectionRule& s,
                               const Tolerance& tol = Tolerance::automatic(),
                               std::uint64_t min_count = kDefaultMinCount,
                               const DiagnosticParams& diag = {});

struct RuleVerdict {
  std::string rule;  // provenance description
  IndependenceVerdict verdict;
};

struct CollectiveReport {
  ConvergenceDiagnostic overall;
  std::vector<RuleVerdict> per_rule;
  bool collective = false;  // frequency converges and every rule is admissible
};

/// A sequence is a collective w.r.t. the rule family iff its frequency
/// converges and every rule is admissible. An empty family reduces to the
/// convergence check alone.
CollectiveReport is_collective(const BitSequence& x, const std::vector<SelectionRule>& rules,
                               const Tolerance& tol = Tolerance::automatic(),
                               std::uint64_t min_count = kDefaultMinCount,
                               const DiagnosticParams& diag = {});

// ============================================================================
//  Product-form independence on finite PMFs
// ============================================================================

/// Exact probability mass function over integer-labelled outcomes.
struct FinitePMF {
  std::map<int, Rational> prob;

  /// Throws unless all masses are >= 0 and sum to exactly 1.
  void validate() const;

  /// Exact P(event); outcomes absent from the support contribute 0.
  Rational prob_of(const std::set<int>& event) const;
};

struct KolmogorovResult {
  bool independent = false;
  Rational p_a, p_b, p_ab;
};

/// Exact product test P(A and B) = P(A) * P(B); no tolerance.
KolmogorovResult kolmogorov_independent(const FinitePMF& pmf, const std::set<int>& a,
                                        const std::set<int>& b);

// ============================================================================
//  Natural density and the density logic
// ============================================================================

enum class Membership { yes, no, inconclusive };

std::string_view to_string(Membership m);

/// Prefix estimate of |A intersect {1..n}| / n for the set indicated by a
/// 0-1 stream, with the convergence diagnostic deciding membership in the
/// family of sets whose density exists.
struct NaturalDensityEstimate {
  BitSequence indicator;
  FrequencyEstimate estimate;
  ConvergenceDiagnostic diagnostic;
  Membership member_of_density_logic = Membership::inconclusive;
};

NaturalDensityEstimate natural_density(const BitSequence& indicator,
                                       const DiagnosticParams& diag = {});

/// Product-form independence of two index sets under natural density:
/// requires the intersection's density to converge (measurability of
/// A intersect B) and |d(X and S) - d(X) * d(S)| <= tol. The densities of X
/// and S themselves must also converge for the comparison to be meaningful.
struct DensityIndependence {
  std::optional<Rational> density_x;
  std::optional<Rational> density_s;
  std::optional<Rational> density_intersection;
  std::optional<Rational> product;
  std::optional<Rational> delta;
  Rational tolerance = Rational(0);
  Verdict verdict = Verdict::inconclusive;
  ConvergenceDiagnostic diag_x, diag_s, diag_intersection;
};

DensityIndependence finadd_independent(const BitSequence& x_indicator,
                                       const BitSequence& s_indicator,
                                       const Tolerance& tol = Tolerance::automatic(),
                                       const DiagnosticParams& diag = {});

// ============================================================================
//  Implication checks between admissibility and product form
// ============================================================================

enum class TheoremStatus {
  inconclusive_hypothesis,  // a stated hypothesis failed its finite check
  vacuous,                  // antecedent conclusively false; nothing to check
  inconclusive_consequent,  // consequent could not be decided
  holds,                    // antecedent and consequent both hold (within slack)
  fails,                    // antecedent holds, consequent fails beyond slack
};

std::string_view to_string(TheoremStatus s);

/// One implication check. The consequent is accepted within a slack of
/// 2 * tolerance to absorb finite-n error in the limit-product step.
struct TheoremReport {
  TheoremStatus status = TheoremStatus::inconclusive_hypothesis;
  Verdict antecedent = Verdict::inconclusive;
  Verdict consequent = Verdict::inconclusive;
  std::optional<Rational> antecedent_delta;
  std::optional<Rational> consequent_delta;
  Rational slack = Rational(0);
  std::string note;
};

/// If s is admissible on x (and s's own frequency converges), then the
/// indicated sets X and S satisfy the density product form.
TheoremReport admissibility_implies_product_form(const BitSequence& x, const SelectionRule& s,
                                                 const Tolerance& tol = Tolerance::automatic(),
                                                 std::uint64_t min_count = kDefaultMinCount,
                                                 const DiagnosticParams& diag = {});

/// If X and S satisfy the density product form (and S has positive
/// converging density), then the mask of S is admissible on x.
TheoremReport product_form_implies_admissibility(const BitSequence& x_indicator,
                                                 const BitSequence& s_indicator,
                                                 const Tolerance& tol = Tolerance::automatic(),
                                                 std::uint64_t min_count = kDefaultMinCount,
                                                 const DiagnosticParams& diag = {});

}  // namespace freqfair
