#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "freqfair/bit_sequence.hpp"
#include "freqfair/rational.hpp"

namespace freqfair {

/// Running count of ones over a prefix. The estimate p_hat is exact
/// (ones_count/total) and is undefined for an empty prefix rather than
/// defaulting to 0.
struct FrequencyEstimate {
  std::uint64_t ones_count = 0;
  std::uint64_t total = 0;

  // Populated by convergence diagnostics; absent for plain counts.
  std::optional<Rational> oscillation;

  bool has_p_hat() const { return total > 0; }

  std::optional<Rational> p_hat() const {
    if (total == 0) return std::nullopt;
    return Rational(ones_count, total);
  }
};

FrequencyEstimate freq_estimate(const BitSequence& x);

/// Combines counts gathered over disjoint index ranges. Exact; associative
/// and commutative with the empty estimate as identity.
FrequencyEstimate merge_counts(const FrequencyEstimate& a, const FrequencyEstimate& b);

struct DiagnosticParams {
  Rational checkpoint_ratio = Rational(2);  // > 1
  std::size_t window = 5;                   // trailing checkpoints compared against p_hat(n)
  Rational threshold = Rational(1, 100);    // max tolerated oscillation
};

struct Checkpoint {
  std::uint64_t index = 0;
  Rational p_hat;
};

/// Finite surrogate for "the frequency limit exists": the estimate is
/// sampled at geometrically spaced prefix lengths and the trailing-window
/// spread around the final estimate is reported as oscillation.
struct ConvergenceDiagnostic {
  std::vector<Checkpoint> checkpoints;
  Rational oscillation = Rational(0);
  bool conclusive = false;  // at least two checkpoints were representable
  bool converged = false;   // conclusive && oscillation <= threshold

  bool ok() const { return conclusive && converged; }
};

/// Geometric prefix lengths 1 < c1 < c2 < ... ending exactly at n.
std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t n, const Rational& ratio);

ConvergenceDiagnostic convergence_diagnostic(const BitSequence& x,
                                             const DiagnosticParams& params = {});

}  // namespace freqfair
