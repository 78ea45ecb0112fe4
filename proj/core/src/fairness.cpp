#include "freqfair/fairness.hpp"

#include <algorithm>

namespace freqfair {

std::string_view to_string(AuditCriterion c) {
  switch (c) {
    case AuditCriterion::independence: return "independence";
    case AuditCriterion::separation: return "separation";
    case AuditCriterion::sufficiency: return "sufficiency";
  }
  return "independence";
}

std::string_view to_string(SummaryVerdict s) {
  switch (s) {
    case SummaryVerdict::fair: return "fair";
    case SummaryVerdict::unfair: return "unfair";
    case SummaryVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

void GroupFamily::add(std::string name, BitSequence members) {
  for (const auto& [existing, _] : groups_) {
    if (existing == name)
      throw InputError(ErrorCode::duplicate_group, "group '" + name + "' already present");
  }
  if (!groups_.empty() && members.size() != stream_length())
    throw InputError(ErrorCode::length_mismatch,
                     "group '" + name + "' has length " + std::to_string(members.size()) +
                         ", expected " + std::to_string(stream_length()));
  groups_.emplace_back(std::move(name), std::move(members));
}

void AuditInput::validate(bool require_labels) const {
  if (groups.empty())
    throw InputError(ErrorCode::empty_group_family, "at least one group stream is required");
  if (groups.stream_length() != predictions.size())
    throw InputError(ErrorCode::length_mismatch, "group streams do not match prediction length");
  if (labels && labels->size() != predictions.size())
    throw InputError(ErrorCode::length_mismatch, "label stream does not match prediction length");
  if (require_labels && !labels)
    throw InputError(ErrorCode::labels_required, "this criterion requires a label column");
}

SummaryVerdict summarize_cells(const std::vector<AuditCell>& cells) {
  bool any_dependent = false;
  bool any_conclusive = false;
  for (const auto& cell : cells) {
    if (cell.verdict.verdict == Verdict::dependent) any_dependent = true;
    if (cell.verdict.verdict != Verdict::inconclusive) any_conclusive = true;
  }
  if (any_dependent) return SummaryVerdict::unfair;
  if (any_conclusive) return SummaryVerdict::fair;
  return SummaryVerdict::inconclusive;
}

namespace {

// The audited group streams: the declared groups, plus pairwise
// intersections when requested.
std::vector<std::pair<std::string, BitSequence>> audited_groups(const AuditInput& input,
                                                                const AuditOptions& options) {
  std::vector<std::pair<std::string, BitSequence>> out(input.groups.groups().begin(),
                                                       input.groups.groups().end());
  if (options.intersections) {
    const auto& base = input.groups.groups();
    for (std::size_t i = 0; i < base.size(); ++i) {
      for (std::size_t j = i + 1; j < base.size(); ++j) {
        out.emplace_back(base[i].first + "&" + base[j].first,
                         bit_and(base[i].second, base[j].second));
      }
    }
  }
  return out;
}

FairnessReport audit_conditioned(AuditCriterion criterion, const BitSequence& target,
                                 const BitSequence& conditioner, std::string_view stratum_prefix,
                                 const AuditInput& input, const AuditOptions& options) {
  FairnessReport report;
  report.criterion = criterion;
  const auto groups = audited_groups(input, options);
  for (bool stratum_value : {false, true}) {
    const std::string stratum =
        std::string(stratum_prefix) + "=" + (stratum_value ? "1" : "0");
    const SelectionRule stratum_rule =
        conditioned_mask(conditioner, stratum_value, std::string(stratum_prefix));
    report.rule_provenance.push_back(stratum_rule.description());
    const Subselection target_in_stratum = apply_selection(target, stratum_rule);
    for (const auto& [name, stream] : groups) {
      const Subselection group_in_stratum = apply_selection(stream, stratum_rule);
      AuditCell cell;
      cell.group = name;
      cell.stratum = stratum;
      cell.verdict = vonmises_independent(target_in_stratum.selected_values,
                                          group_in_stratum.selected_values, options.tolerance,
                                          options.min_count, options.diagnostics);
      report.cells.push_back(std::move(cell));
    }
  }
  report.summary = summarize_cells(report.cells);
  return report;
}

}  // namespace

FairnessReport audit_independence(const AuditInput& input, const AuditOptions& options) {
  input.validate(/*require_labels=*/false);
  FairnessReport report;
  report.criterion = AuditCriterion::independence;
  for (const auto& [name, stream] : audited_groups(input, options)) {
    report.rule_provenance.push_back(mask_from_attribute(stream, name).description());
    AuditCell cell;
    cell.group = name;
    cell.stratum = "all";
    cell.verdict = vonmises_independent(input.predictions, stream, options.tolerance,
                                        options.min_count, options.diagnostics);
    report.cells.push_back(std::move(cell));
  }
  report.summary = summarize_cells(report.cells);
  return report;
}

FairnessReport audit_separation(const AuditInput& input, const AuditOptions& options) {
  input.validate(/*require_labels=*/true);
  return audit_conditioned(AuditCriterion::separation, input.predictions, *input.labels, "y",
                           input, options);
}

FairnessReport audit_sufficiency(const AuditInput& input, const AuditOptions& options) {
  input.validate(/*require_labels=*/true);
  return audit_conditioned(AuditCriterion::sufficiency, *input.labels, input.predictions, "y_hat",
                           input, options);
}

EquivalenceReport fairness_equals_randomness(const BitSequence& x, const GroupFamily& groups,
                                             const AuditOptions& options) {
  EquivalenceReport report;

  AuditInput input;
  input.predictions = x;
  input.groups = groups;
  report.fairness = audit_independence(input, options);

  // Mirror the audited family exactly, intersections included, but express
  // intersections as composite rules so both evaluation paths get exercised.
  std::vector<SelectionRule> rules;
  for (const auto& [name, stream] : groups.groups())
    rules.push_back(mask_from_attribute(stream, name));
  if (options.intersections) {
    const std::size_t base = rules.size();
    for (std::size_t i = 0; i < base; ++i)
      for (std::size_t j = i + 1; j < base; ++j)
        rules.push_back(combine({rules[i], rules[j]}, SetOp::intersect));
  }
  report.randomness = is_collective(x, rules, options.tolerance, options.min_count,
                                    options.diagnostics);

  report.vectors_match = report.fairness.cells.size() == report.randomness.per_rule.size();
  if (report.vectors_match) {
    for (std::size_t i = 0; i < report.fairness.cells.size(); ++i) {
      if (report.fairness.cells[i].verdict.verdict !=
          report.randomness.per_rule[i].verdict.verdict) {
        report.vectors_match = false;
        break;
      }
    }
  }
  return report;
}

AdversarialResult adversarial_rule(const BitSequence& x, const AuditOptions& options) {
  SelectionRule rule = SelectionRule::ex_post_mask(x, "target-ones");
  IndependenceVerdict verdict =
      admissible(x, rule, options.tolerance, options.min_count, options.diagnostics);
  return AdversarialResult{std::move(rule), std::move(verdict)};
}

}  // namespace freqfair
