#include <benchmark/benchmark.h>

#include "freqfair/generators.hpp"
#include "freqfair/independence.hpp"

namespace {

using namespace freqfair;

BitSequence fair_stream(std::size_t n) { return bernoulli_stream(Rational(1, 2), n, Seed{42}); }

void BM_FreqEstimate(benchmark::State& state) {
  const BitSequence x = fair_stream(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto est = freq_estimate(x);
    benchmark::DoNotOptimize(est);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FreqEstimate)->Arg(1 << 16)->Arg(1 << 20);

void BM_ConvergenceDiagnostic(benchmark::State& state) {
  const BitSequence x = fair_stream(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto diag = convergence_diagnostic(x);
    benchmark::DoNotOptimize(diag);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConvergenceDiagnostic)->Arg(1 << 16)->Arg(1 << 20);

void BM_ApplySelectionPeriodic(benchmark::State& state) {
  const BitSequence x = fair_stream(static_cast<std::size_t>(state.range(0)));
  const auto rule = SelectionRule::periodic(3, {0});
  for (auto _ : state) {
    auto sub = apply_selection(x, rule);
    benchmark::DoNotOptimize(sub);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ApplySelectionPeriodic)->Arg(1 << 16)->Arg(1 << 20);

void BM_SubselectionVerdict(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const BitSequence x = fair_stream(n);
  const BitSequence y = bernoulli_stream(Rational(1, 3), n, Seed{43});
  for (auto _ : state) {
    auto verdict = vonmises_independent(x, y);
    benchmark::DoNotOptimize(verdict);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SubselectionVerdict)->Arg(1 << 16)->Arg(1 << 20);

void BM_BernoulliStream(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto x = bernoulli_stream(Rational(1, 2), n, Seed{seed++});
    benchmark::DoNotOptimize(x);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BernoulliStream)->Arg(1 << 16)->Arg(1 << 20);

void BM_IndependenceAudit(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  AuditInput input;
  input.predictions = fair_stream(n);
  input.groups.add("a", bernoulli_stream(Rational(1, 4), n, Seed{44}));
  input.groups.add("b", bernoulli_stream(Rational(1, 2), n, Seed{45}));
  for (auto _ : state) {
    auto report = audit_independence(input);
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IndependenceAudit)->Arg(1 << 16)->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
