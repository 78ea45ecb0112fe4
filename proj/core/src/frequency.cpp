#include "freqfair/frequency.hpp"

#include <algorithm>

namespace freqfair {

FrequencyEstimate freq_estimate(const BitSequence& x) {
  FrequencyEstimate est;
  est.total = x.size();
  est.ones_count = x.ones();
  return est;
}

FrequencyEstimate merge_counts(const FrequencyEstimate& a, const FrequencyEstimate& b) {
  FrequencyEstimate merged;
  merged.ones_count = a.ones_count + b.ones_count;
  merged.total = a.total + b.total;
  return merged;
}

std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t n, const Rational& ratio) {
  if (ratio <= 1)
    throw InputError(ErrorCode::config_invalid, "checkpoint ratio must be greater than 1");
  std::vector<std::uint64_t> schedule;
  if (n == 0) return schedule;
  std::uint64_t current = 1;
  while (current < n) {
    schedule.push_back(current);
    // ceil(current * ratio), but always advance by at least one
    BigInt scaled_num = numerator(ratio) * current;
    BigInt next_big = (scaled_num + denominator(ratio) - 1) / denominator(ratio);
    std::uint64_t next = next_big.convert_to<std::uint64_t>();
    current = std::max<std::uint64_t>(current + 1, next);
  }
  schedule.push_back(n);
  return schedule;
}

ConvergenceDiagnostic convergence_diagnostic(const BitSequence& x,
                                             const DiagnosticParams& params) {
  if (params.window == 0)
    throw InputError(ErrorCode::config_invalid, "diagnostic window must be positive");
  if (params.threshold <= 0)
    throw InputError(ErrorCode::config_invalid, "diagnostic threshold must be positive");

  ConvergenceDiagnostic diag;
  const auto schedule = checkpoint_schedule(x.size(), params.checkpoint_ratio);
  if (schedule.size() < 2) return diag;  // too short: inconclusive, not an error

  diag.checkpoints.reserve(schedule.size());
  std::uint64_t ones = 0;
  std::size_t next = 0;
  const auto values = x.values();
  for (std::uint64_t i = 1; i <= x.size(); ++i) {
    ones += values[i - 1];
    if (next < schedule.size() && i == schedule[next]) {
      diag.checkpoints.push_back({i, Rational(ones, i)});
      ++next;
    }
  }

  const Rational final_p = diag.checkpoints.back().p_hat;
  const std::size_t first_in_window =
      diag.checkpoints.size() > params.window ? diag.checkpoints.size() - params.window : 0;
  for (std::size_t k = first_in_window; k < diag.checkpoints.size(); ++k) {
    Rational dev = abs(diag.checkpoints[k].p_hat - final_p);
    if (dev > diag.oscillation) diag.oscillation = dev;
  }
  diag.conclusive = true;
  diag.converged = diag.oscillation <= params.threshold;
  return diag;
}

}  // namespace freqfair
