#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "freqfair/independence.hpp"

namespace freqfair {

/// Named family of group-membership streams, all the same length. Order is
/// preserved: report rows follow insertion order.
class GroupFamily {
 public:
  void add(std::string name, BitSequence members);

  const std::vector<std::pair<std::string, BitSequence>>& groups() const { return groups_; }

  bool empty() const { return groups_.empty(); }
  std::size_t size() const { return groups_.size(); }

  /// Common stream length; 0 when empty.
  std::size_t stream_length() const { return groups_.empty() ? 0 : groups_.front().second.size(); }

 private:
  std::vector<std::pair<std::string, BitSequence>> groups_;
};

/// Parallel streams over individuals: predictions, optional true labels,
/// and group memberships. Row i of every stream describes individual i.
struct AuditInput {
  BitSequence predictions;
  std::optional<BitSequence> labels;
  GroupFamily groups;

  std::size_t size() const { return predictions.size(); }

  /// Throws unless all stream lengths agree and the family is non-empty.
  void validate(bool require_labels) const;
};

enum class AuditCriterion { independence, separation, sufficiency };

std::string_view to_string(AuditCriterion c);

enum class SummaryVerdict { fair, unfair, inconclusive };

std::string_view to_string(SummaryVerdict s);

struct AuditOptions {
  Tolerance tolerance = Tolerance::automatic();
  std::uint64_t min_count = kDefaultMinCount;
  DiagnosticParams diagnostics;
  bool intersections = false;  // also audit pairwise group intersections
};

struct AuditCell {
  std::string group;
  std::string stratum;  // "all" for unconditioned audits, else e.g. "y=1"
  IndependenceVerdict verdict;
};

/// One criterion's verdicts. A criterion is fair only if no cell is
/// dependent and at least one cell is conclusive; all-inconclusive stays
/// inconclusive rather than counting silence as fairness.
struct FairnessReport {
  AuditCriterion criterion = AuditCriterion::independence;
  std::vector<AuditCell> cells;
  SummaryVerdict summary = SummaryVerdict::inconclusive;
  std::vector<std::string> rule_provenance;
};

SummaryVerdict summarize_cells(const std::vector<AuditCell>& cells);

/// Predictions vs. group membership: one verdict per group.
FairnessReport audit_independence(const AuditInput& input, const AuditOptions& options = {});

/// Predictions vs. group membership within each label stratum (y=0, y=1).
FairnessReport audit_separation(const AuditInput& input, const AuditOptions& options = {});

/// Labels vs. group membership within each prediction stratum.
FairnessReport audit_sufficiency(const AuditInput& input, const AuditOptions& options = {});

/// Runs the per-group fairness audit and the collective/randomness check
/// over the same family and compares the two verdict vectors cell for cell.
struct EquivalenceReport {
  FairnessReport fairness;
  CollectiveReport randomness;
  bool vectors_match = false;
};

EquivalenceReport fairness_equals_randomness(const BitSequence& x, const GroupFamily& groups,
                                             const AuditOptions& options = {});

/// Builds the ex-post rule "select where x is 1" and audits x against it.
/// For any non-constant stream the subselected frequency is exactly 1, so
/// the verdict is dependent; the constant stream is the trivial exception.
struct AdversarialResult {
  SelectionRule rule;
  IndependenceVerdict verdict;
};

AdversarialResult adversarial_rule(const BitSequence& x, const AuditOptions& options = {});

}  // namespace freqfair
