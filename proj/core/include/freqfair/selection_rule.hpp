#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "freqfair/bit_sequence.hpp"

namespace freqfair {

enum class SetOp { intersect, unite, complement };

/// Declarative index-selection rule. A rule decides, for each 1-based index
/// i, whether the i-th element of a target sequence is selected. Decisions
/// depend only on i and on side streams fixed at construction time; no
/// constructor or evaluation path sees the target sequence, which makes the
/// ex-ante property structural. The one deliberate exception is
/// ex_post_mask, which is flagged as such.
class SelectionRule {
 public:
  /// Selects exactly the given 1-based indices.
  static SelectionRule explicit_indices(std::set<std::uint64_t> indices);

  /// Selects i iff (i mod period) is in residues. Residues must lie in
  /// [0, period). periodic(2, {1}) selects the odd indices, periodic(2, {0})
  /// the even ones.
  static SelectionRule periodic(std::uint64_t period, std::set<std::uint64_t> residues);

  /// Selects i iff side(i) = 1. The side stream is copied; the rule is
  /// only defined up to the side stream's length.
  static SelectionRule attribute_mask(BitSequence side, std::string name);

  /// Same shape as attribute_mask but explicitly flagged as violating the
  /// ex-ante property (the side stream was derived from the audited target).
  static SelectionRule ex_post_mask(BitSequence side, std::string name);

  /// Selects every index.
  static SelectionRule all();

  static SelectionRule intersect(std::vector<SelectionRule> rules);
  static SelectionRule unite(std::vector<SelectionRule> rules);
  static SelectionRule complement(SelectionRule rule);

  /// True iff index (1-based) is selected. Throws if the index lies beyond
  /// a side stream's horizon.
  bool selects(std::uint64_t index1) const;

  /// Largest index the rule can decide, if bounded by a side stream.
  std::optional<std::uint64_t> horizon() const;

  bool ex_post() const;

  /// Canonical textual form (kind + parameters), used for report provenance.
  const std::string& description() const;

  /// Materializes s(1..n) as a sequence.
  BitSequence indicator(std::uint64_t n) const;

  struct Node;  // opaque

 private:
  explicit SelectionRule(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend SelectionRule combine(std::vector<SelectionRule> rules, SetOp op);
  std::shared_ptr<const Node> node_;
};

struct Subselection {
  BitSequence selected_values;   // target values at selected indices, in order
  std::uint64_t selected_count = 0;
  std::uint64_t source_length = 0;
};

/// Values of x at the indices the rule selects, scanning i = 1..len(x).
Subselection apply_selection(const BitSequence& x, const SelectionRule& s);

/// Subselection by a parallel 0-1 stream: selects i where y(i) = 1.
Subselection subselect(const BitSequence& x, const BitSequence& y);

/// Group membership stream as a selection rule (selects i iff side(i) = 1).
SelectionRule mask_from_attribute(BitSequence side, std::string name = "attribute");

/// Stratum rule: selects i iff labels(i) = value ("selecting is conditioning").
SelectionRule conditioned_mask(BitSequence labels, bool value, std::string name = "labels");

/// Set algebra over rules. complement takes exactly one rule; intersect and
/// unite take at least one.
SelectionRule combine(std::vector<SelectionRule> rules, SetOp op);

}  // namespace freqfair
