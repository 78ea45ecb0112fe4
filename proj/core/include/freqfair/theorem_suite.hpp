#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "freqfair/generators.hpp"

namespace freqfair {

/// One generated (collective, selector) pair checked both ways: does
/// admissibility imply the density product form, and does the product form
/// imply admissibility. "agree" means the two standalone verdicts match, or
/// the dissenting side's delta is within twice its own tolerance.
struct TheoremPairResult {
  std::string description;
  std::uint64_t n = 0;
  bool hypotheses_ok = false;
  Verdict admissibility = Verdict::inconclusive;
  Verdict product_form = Verdict::inconclusive;
  TheoremReport forward;   // admissibility -> product form
  TheoremReport backward;  // product form -> admissibility
  bool agree = false;
};

struct TheoremSuiteReport {
  std::vector<TheoremPairResult> pairs;
  std::size_t hypotheses_passed = 0;
  std::size_t agreements = 0;
  std::vector<std::string> failures;

  /// True iff at least `required_pairs` pairs passed the hypotheses and all
  /// of those agreed without any implication check failing.
  bool ok(std::size_t required_pairs) const {
    return failures.empty() && hypotheses_passed >= required_pairs &&
           agreements == hypotheses_passed;
  }
};

/// Deterministically generates a mixed population of pairs (periodic
/// patterns, seeded i.i.d. streams at stochastic_n, and dependent
/// constructions) and checks both implication directions on each.
TheoremSuiteReport run_theorem_suite(const Seed& seed, std::size_t stochastic_n = 1000000,
                                     const AuditOptions& options = {});

}  // namespace freqfair
