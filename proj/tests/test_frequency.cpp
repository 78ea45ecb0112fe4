#include <doctest.h>

#include <random>

#include "freqfair/frequency.hpp"

using namespace freqfair;

namespace {

BitSequence periodic_10(std::size_t n) {
  BitSequence x;
  for (std::size_t i = 1; i <= n; ++i) x.push_back(i % 2 == 1);  // 1,0,1,0,...
  return x;
}

// Indicator of {i : floor(log2 i) even}; its partial densities oscillate
// between fixed bands forever.
BitSequence log2_block_indicator(std::size_t n) {
  BitSequence x;
  for (std::size_t i = 1; i <= n; ++i) {
    unsigned level = 0;
    for (std::size_t v = i; v > 1; v >>= 1) ++level;
    x.push_back(level % 2 == 0);
  }
  return x;
}

}  // namespace

TEST_CASE("freq_estimate counts exactly") {
  // Oracle: direct count over the generated prefix.
  const BitSequence x = periodic_10(1000);
  std::uint64_t expected = 0;
  for (std::size_t i = 1; i <= 1000; ++i) expected += (i % 2 == 1) ? 1 : 0;
  const auto est = freq_estimate(x);
  CHECK(est.ones_count == expected);
  CHECK(est.total == 1000);
  CHECK(est.p_hat() == Rational(1, 2));

  CHECK(freq_estimate(BitSequence::constant(10, false)).p_hat() == Rational(0));
  CHECK(freq_estimate(BitSequence{1, 1, 0}).p_hat() == Rational(2, 3));
}

TEST_CASE("empty prefix leaves p_hat undefined") {
  const auto est = freq_estimate(BitSequence{});
  CHECK(est.total == 0);
  CHECK(!est.has_p_hat());
  CHECK(!est.p_hat().has_value());
}

TEST_CASE("p_hat times total equals ones_count exactly") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    BitSequence x;
    const std::size_t n = 1 + rng() % 500;
    for (std::size_t i = 0; i < n; ++i) x.push_back(rng() & 1);
    const auto est = freq_estimate(x);
    CHECK(Rational(*est.p_hat() * est.total) == Rational(est.ones_count));
  }
}

TEST_CASE("merge_counts sums disjoint shards") {
  const FrequencyEstimate a{3, 10, {}};
  const FrequencyEstimate b{7, 10, {}};
  const auto merged = merge_counts(a, b);
  CHECK(merged.ones_count == 10);
  CHECK(merged.total == 20);
  CHECK(merged.p_hat() == Rational(1, 2));

  const FrequencyEstimate empty{0, 0, {}};
  const FrequencyEstimate c{2, 5, {}};
  CHECK(merge_counts(empty, c).p_hat() == Rational(2, 5));

  const FrequencyEstimate d{5, 8, {}};
  const FrequencyEstimate e{1, 2, {}};
  const auto f = merge_counts(d, e);
  CHECK(f.ones_count == 6);
  CHECK(f.total == 10);
}

TEST_CASE("merging any sharding equals the single pass") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 400;
    BitSequence x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(rng() & 1);
    const auto whole = freq_estimate(x);

    // Split into shards and merge in a shuffled order.
    std::vector<FrequencyEstimate> shards;
    std::size_t start = 0;
    while (start < n) {
      const std::size_t len = 1 + rng() % (n - start);
      BitSequence shard;
      for (std::size_t i = start; i < start + len; ++i) shard.push_back(x.values()[i] != 0);
      shards.push_back(freq_estimate(shard));
      start += len;
    }
    std::shuffle(shards.begin(), shards.end(), rng);
    FrequencyEstimate merged;  // empty identity
    for (const auto& s : shards) merged = merge_counts(merged, s);
    CHECK(merged.ones_count == whole.ones_count);
    CHECK(merged.total == whole.total);
  }
}

TEST_CASE("extending by one symbol changes ones_count by that symbol") {
  std::mt19937_64 rng(13);
  BitSequence x;
  auto prev = freq_estimate(x);
  for (int i = 0; i < 300; ++i) {
    const bool bit = rng() & 1;
    x.push_back(bit);
    const auto next = freq_estimate(x);
    CHECK(next.ones_count == prev.ones_count + (bit ? 1 : 0));
    CHECK(next.total == prev.total + 1);
    prev = next;
  }
}

TEST_CASE("periodic prefixes have exact frequency at multiples of the period") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t period = 2 + rng() % 9;
    std::vector<std::uint8_t> pattern(period);
    for (auto& b : pattern) b = rng() & 1;
    std::uint64_t ones_in_period = 0;
    for (auto b : pattern) ones_in_period += b;

    const std::size_t repeats = 1 + rng() % 50;
    BitSequence x;
    for (std::size_t i = 0; i < repeats * period; ++i) x.push_back(pattern[i % period] != 0);
    if (ones_in_period == 0) {
      CHECK(freq_estimate(x).p_hat() == Rational(0));
    } else {
      CHECK(freq_estimate(x).p_hat() == Rational(ones_in_period, period));
    }
  }
}

TEST_CASE("checkpoint schedule is strictly increasing and ends at n") {
  for (std::uint64_t n : {1ULL, 2ULL, 3ULL, 100ULL, 99999ULL, 1000000ULL}) {
    const auto schedule = checkpoint_schedule(n, Rational(2));
    REQUIRE(!schedule.empty());
    CHECK(schedule.back() == n);
    for (std::size_t i = 1; i < schedule.size(); ++i) CHECK(schedule[i] > schedule[i - 1]);
  }
  CHECK(checkpoint_schedule(0, Rational(2)).empty());
  CHECK_THROWS_AS(checkpoint_schedule(10, Rational(1)), InputError);
}

TEST_CASE("periodic stream converges under the default diagnostic") {
  const auto diag = convergence_diagnostic(periodic_10(100000));
  CHECK(diag.conclusive);
  CHECK(diag.converged);
  CHECK(diag.oscillation <= Rational(1, 100));
  CHECK(diag.checkpoints.back().index == 100000);
}

TEST_CASE("log2-block indicator is flagged as non-converging") {
  const std::size_t n = 1 << 20;
  const BitSequence x = log2_block_indicator(n);

  // Oracle: recompute the trailing-window oscillation by direct counting.
  DiagnosticParams params;
  params.threshold = Rational(5, 100);
  const auto schedule = checkpoint_schedule(n, params.checkpoint_ratio);
  std::vector<Rational> p_at;
  {
    std::uint64_t ones = 0;
    std::size_t next = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      ones += x.values()[i - 1];
      if (next < schedule.size() && i == schedule[next]) {
        p_at.push_back(Rational(ones, i));
        ++next;
      }
    }
  }
  Rational expected_osc(0);
  for (std::size_t k = p_at.size() - std::min<std::size_t>(params.window, p_at.size());
       k < p_at.size(); ++k) {
    const Rational dev = abs(p_at[k] - p_at.back());
    if (dev > expected_osc) expected_osc = dev;
  }

  const auto diag = convergence_diagnostic(x, params);
  CHECK(diag.conclusive);
  CHECK(!diag.converged);
  CHECK(diag.oscillation == expected_osc);
  CHECK(diag.oscillation > Rational(5, 100));
}

TEST_CASE("constant stream has zero oscillation") {
  const auto diag = convergence_diagnostic(BitSequence::constant(4, true));
  CHECK(diag.conclusive);
  CHECK(diag.converged);
  CHECK(diag.oscillation == Rational(0));
}

TEST_CASE("too-short streams give an inconclusive diagnostic, not an error") {
  CHECK(!convergence_diagnostic(BitSequence{}).conclusive);
  CHECK(!convergence_diagnostic(BitSequence{1}).conclusive);
  CHECK(convergence_diagnostic(BitSequence{1, 0}).conclusive);
}

TEST_CASE("rational parsing") {
  CHECK(rational_from_string("1/100") == Rational(1, 100));
  CHECK(rational_from_string("0.01") == Rational(1, 100));
  CHECK(rational_from_string("3") == Rational(3));
  CHECK(rational_from_string("2.5e-3") == Rational(1, 400));
  CHECK(rational_from_string("-0.5") == Rational(-1, 2));
  CHECK_THROWS_AS(rational_from_string("abc"), InputError);
  CHECK_THROWS_AS(rational_from_string("1/0"), InputError);
  CHECK_THROWS_AS(rational_from_string(""), InputError);
}
