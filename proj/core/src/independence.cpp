#include "freqfair/independence.hpp"

#include <algorithm>
#include <cmath>

namespace freqfair {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::independent: return "independent";
    case Verdict::dependent: return "dependent";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::yes: return "yes";
    case Membership::no: return "no";
    case Membership::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(TheoremStatus s) {
  switch (s) {
    case TheoremStatus::inconclusive_hypothesis: return "inconclusive-hypothesis";
    case TheoremStatus::vacuous: return "vacuous";
    case TheoremStatus::inconclusive_consequent: return "inconclusive-consequent";
    case TheoremStatus::holds: return "holds";
    case TheoremStatus::fails: return "fails";
  }
  return "inconclusive-hypothesis";
}

Tolerance Tolerance::exact(Rational value) {
  if (value <= 0)
    throw InputError(ErrorCode::config_invalid, "explicit tolerance must be positive");
  Tolerance t;
  t.value_ = std::move(value);
  return t;
}

Rational Tolerance::effective(const std::optional<Rational>& p_overall,
                              std::uint64_t selected_count) const {
  if (value_) return *value_;
  const Rational floor(1, 100);
  if (!p_overall || selected_count == 0) return floor;
  const Rational variance = *p_overall * (Rational(1) - *p_overall) / selected_count;
  if (variance <= 0) return floor;
  const double band = 3.0 * std::sqrt(to_double(variance));
  if (band <= 0.01) return floor;
  return rational_from_decimal_digits(band);
}

namespace {

// Shared core: compare the overall frequency of x with the frequency of the
// subselected values.
IndependenceVerdict compare_subselection(const BitSequence& x, const Subselection& sub,
                                         const Tolerance& tol, std::uint64_t min_count,
                                         const DiagnosticParams& diag) {
  IndependenceVerdict out;
  FrequencyEstimate overall = freq_estimate(x);
  FrequencyEstimate selected = freq_estimate(sub.selected_values);
  out.selected_count = sub.selected_count;
  out.p_overall = overall.p_hat();
  out.p_selected = selected.p_hat();
  if (!out.p_selected && sub.selected_count == 0 && min_count == 0) {
    out.p_selected = Rational(0);  // 0/0 := 0
  }

  out.convergence_overall = convergence_diagnostic(x, diag);
  out.convergence_selected = convergence_diagnostic(sub.selected_values, diag);

  if (out.p_overall && out.p_selected) out.delta = abs(*out.p_selected - *out.p_overall);
  out.tolerance = tol.effective(out.p_overall, out.selected_count);

  const bool too_few = out.selected_count < std::max<std::uint64_t>(min_count, 1);
  if (too_few || !out.p_overall || !out.delta || !out.convergence_overall.ok() ||
      !out.convergence_selected.ok()) {
    out.verdict = Verdict::inconclusive;
  } else {
    out.verdict = *out.delta <= out.tolerance ? Verdict::independent : Verdict::dependent;
  }
  return out;
}

}  // namespace

IndependenceVerdict vonmises_independent(const BitSequence& x, const BitSequence& y,
                                         const Tolerance& tol, std::uint64_t min_count,
                                         const DiagnosticParams& diag) {
  if (x.size() != y.size())
    throw InputError(ErrorCode::length_mismatch, "collective and selector lengths differ");
  return compare_subselection(x, subselect(x, y), tol, min_count, diag);
}

IndependenceVerdict admissible(const BitSequence& x, const SelectionRule& s, const Tolerance& tol,
                               std::uint64_t min_count, const DiagnosticParams& diag) {
  return compare_subselection(x, apply_selection(x, s), tol, min_count, diag);
}

CollectiveReport is_collective(const BitSequence& x, const std::vector<SelectionRule>& rules,
                               const Tolerance& tol, std::uint64_t min_count,
                               const DiagnosticParams& diag) {
  CollectiveReport report;
  report.overall = convergence_diagnostic(x, diag);
  report.collective = report.overall.ok();
  report.per_rule.reserve(rules.size());
  for (const auto& rule : rules) {
    RuleVerdict rv{rule.description(), admissible(x, rule, tol, min_count, diag)};
    if (rv.verdict.verdict != Verdict::independent) report.collective = false;
    report.per_rule.push_back(std::move(rv));
  }
  return report;
}

void FinitePMF::validate() const {
  Rational sum(0);
  for (const auto& [outcome, p] : prob) {
    if (p < 0)
      throw InputError(ErrorCode::invalid_probability,
                       "negative mass at outcome " + std::to_string(outcome));
    sum += p;
  }
  if (sum != 1)
    throw InputError(ErrorCode::invalid_probability,
                     "masses sum to " + to_fraction_string(sum) + ", expected 1");
}

Rational FinitePMF::prob_of(const std::set<int>& event) const {
  Rational sum(0);
  for (int outcome : event) {
    auto it = prob.find(outcome);
    if (it != prob.end()) sum += it->second;
  }
  return sum;
}

KolmogorovResult kolmogorov_independent(const FinitePMF& pmf, const std::set<int>& a,
                                        const std::set<int>& b) {
  std::set<int> ab;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(ab, ab.begin()));
  KolmogorovResult result;
  result.p_a = pmf.prob_of(a);
  result.p_b = pmf.prob_of(b);
  result.p_ab = pmf.prob_of(ab);
  result.independent = result.p_ab == result.p_a * result.p_b;
  return result;
}

NaturalDensityEstimate natural_density(const BitSequence& indicator,
                                       const DiagnosticParams& diag) {
  NaturalDensityEstimate out;
  out.indicator = indicator;
  out.estimate = freq_estimate(indicator);
  out.diagnostic = convergence_diagnostic(indicator, diag);
  out.estimate.oscillation = out.diagnostic.oscillation;
  if (!out.diagnostic.conclusive) {
    out.member_of_density_logic = Membership::inconclusive;
  } else {
    out.member_of_density_logic = out.diagnostic.converged ? Membership::yes : Membership::no;
  }
  return out;
}

DensityIndependence finadd_independent(const BitSequence& x_indicator,
                                       const BitSequence& s_indicator, const Tolerance& tol,
                                       const DiagnosticParams& diag) {
  if (x_indicator.size() != s_indicator.size())
    throw InputError(ErrorCode::length_mismatch, "indicator lengths differ");

  DensityIndependence out;
  const BitSequence intersection = bit_and(x_indicator, s_indicator);
  const auto est_x = freq_estimate(x_indicator);
  const auto est_s = freq_estimate(s_indicator);
  const auto est_xs = freq_estimate(intersection);
  out.density_x = est_x.p_hat();
  out.density_s = est_s.p_hat();
  out.density_intersection = est_xs.p_hat();
  out.diag_x = convergence_diagnostic(x_indicator, diag);
  out.diag_s = convergence_diagnostic(s_indicator, diag);
  out.diag_intersection = convergence_diagnostic(intersection, diag);

  if (out.density_x && out.density_s) out.product = *out.density_x * *out.density_s;
  if (out.product && out.density_intersection)
    out.delta = abs(*out.density_intersection - *out.product);

  out.tolerance = tol.effective(out.density_intersection, x_indicator.size());

  if (!out.delta || !out.diag_x.ok() || !out.diag_s.ok() || !out.diag_intersection.ok()) {
    out.verdict = Verdict::inconclusive;
  } else {
    out.verdict = *out.delta <= out.tolerance ? Verdict::independent : Verdict::dependent;
  }
  return out;
}

TheoremReport admissibility_implies_product_form(const BitSequence& x, const SelectionRule& s,
                                                 const Tolerance& tol, std::uint64_t min_count,
                                                 const DiagnosticParams& diag) {
  TheoremReport report;
  const std::uint64_t n = x.size();
  const BitSequence s_ind = s.indicator(n);

  // Hypothesis: the rule's own frequency converges.
  if (!convergence_diagnostic(s_ind, diag).ok()) {
    report.status = TheoremStatus::inconclusive_hypothesis;
    report.note = "selector frequency does not converge";
    return report;
  }

  const IndependenceVerdict adm = admissible(x, s, tol, min_count, diag);
  report.antecedent = adm.verdict;
  report.antecedent_delta = adm.delta;

  const DensityIndependence prod = finadd_independent(x, s_ind, tol, diag);
  report.consequent = prod.verdict;
  report.consequent_delta = prod.delta;
  report.slack = prod.tolerance * 2;

  if (adm.verdict == Verdict::inconclusive) {
    report.status = TheoremStatus::inconclusive_hypothesis;
    report.note = "admissibility not decidable at this scale";
  } else if (adm.verdict == Verdict::dependent) {
    report.status = TheoremStatus::vacuous;
  } else if (!prod.delta) {
    report.status = TheoremStatus::inconclusive_consequent;
  } else if (prod.verdict == Verdict::independent || *prod.delta <= report.slack) {
    report.status = TheoremStatus::holds;
  } else {
    report.status = TheoremStatus::fails;
  }
  return report;
}

TheoremReport product_form_implies_admissibility(const BitSequence& x_indicator,
                                                 const BitSequence& s_indicator,
                                                 const Tolerance& tol, std::uint64_t min_count,
                                                 const DiagnosticParams& diag) {
  TheoremReport report;
  const auto density_s = natural_density(s_indicator, diag);

  // Hypotheses: S has converging, strictly positive density with enough
  // selections to condition on.
  const bool positive = density_s.estimate.ones_count >= std::max<std::uint64_t>(min_count, 1);
  if (density_s.member_of_density_logic != Membership::yes || !positive) {
    report.status = TheoremStatus::inconclusive_hypothesis;
    report.note = positive ? "selector density does not converge"
                           : "selector density too close to zero";
    return report;
  }

  const DensityIndependence prod = finadd_independent(x_indicator, s_indicator, tol, diag);
  report.antecedent = prod.verdict;
  report.antecedent_delta = prod.delta;

  const IndependenceVerdict adm =
      vonmises_independent(x_indicator, s_indicator, tol, min_count, diag);
  report.consequent = adm.verdict;
  report.consequent_delta = adm.delta;
  report.slack = adm.tolerance * 2;

  if (prod.verdict == Verdict::inconclusive) {
    report.status = TheoremStatus::inconclusive_hypothesis;
    report.note = "product form not decidable at this scale";
  } else if (prod.verdict == Verdict::dependent) {
    report.status = TheoremStatus::vacuous;
  } else if (!adm.delta) {
    report.status = TheoremStatus::inconclusive_consequent;
  } else if (adm.verdict == Verdict::independent || *adm.delta <= report.slack) {
    report.status = TheoremStatus::holds;
  } else {
    report.status = TheoremStatus::fails;
  }
  return report;
}

}  // namespace freqfair
