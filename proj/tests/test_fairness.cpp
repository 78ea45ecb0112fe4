#include <doctest.h>

#include <random>

#include "freqfair/generators.hpp"

using namespace freqfair;

namespace {

// Predictions equal labels; labels depend on the group (rates 4/5 vs 1/5).
JointTable dissociation_table() {
  JointTable table({"a", "b"});
  table.set(0, true, true, Rational(2, 5));
  table.set(0, false, false, Rational(1, 10));
  table.set(1, true, true, Rational(1, 10));
  table.set(1, false, false, Rational(2, 5));
  table.validate();
  return table;
}

BitSequence alternating(std::size_t n) {
  BitSequence x;
  for (std::size_t i = 1; i <= n; ++i) x.push_back(i % 2 == 1);
  return x;
}

}  // namespace

TEST_CASE("group-correlated predictions fail the independence audit") {
  const AuditInput input = sample_joint(dissociation_table(), 100000, Seed{8});
  const auto report = audit_independence(input);
  REQUIRE(report.cells.size() == 2);
  for (const auto& cell : report.cells) {
    CHECK(cell.stratum == "all");
    CHECK(cell.verdict.verdict == Verdict::dependent);
  }
  CHECK(report.summary == SummaryVerdict::unfair);
}

TEST_CASE("constant predictions are independent of every group") {
  AuditInput input;
  input.predictions = BitSequence::constant(2000, true);
  input.groups.add("a", alternating(2000));
  input.groups.add("b", BitSequence::constant(2000, true));
  const auto report = audit_independence(input);
  for (const auto& cell : report.cells) CHECK(cell.verdict.verdict == Verdict::independent);
  CHECK(report.summary == SummaryVerdict::fair);
}

TEST_CASE("unbiased seeded predictions audit as fair") {
  const std::size_t n = 1000000;
  AuditInput input;
  input.predictions = bernoulli_stream(Rational(1, 2), n, Seed{1001});
  input.groups.add("g", bernoulli_stream(Rational(1, 3), n, Seed{1002}));
  const auto report = audit_independence(input);
  CHECK(report.summary == SummaryVerdict::fair);
}

TEST_CASE("separation and independence dissociate on the constructed input") {
  const AuditInput input = sample_joint(dissociation_table(), 100000, Seed{8});
  const auto separation = audit_separation(input);
  CHECK(separation.summary == SummaryVerdict::fair);
  REQUIRE(separation.cells.size() == 4);  // two groups, two strata
  for (const auto& cell : separation.cells) {
    CHECK(cell.verdict.verdict == Verdict::independent);
    CHECK(cell.verdict.delta == Rational(0));  // strata are constant
  }
  CHECK(audit_independence(input).summary == SummaryVerdict::unfair);
}

TEST_CASE("prediction noise inside one group breaks separation") {
  // Start from predictions == labels, then flip predictions only inside
  // group a at rate 3/10.
  const std::size_t n = 100000;
  AuditInput input = sample_joint(dissociation_table(), n, Seed{21});
  BitStreamGenerator gen(Seed{22});
  BitSequence noisy;
  const auto& in_a = input.groups.groups()[0].second;
  for (std::size_t i = 1; i <= n; ++i) {
    bool value = input.predictions.at(i);
    const bool flip = gen.bernoulli(Rational(3, 10));
    if (in_a.at(i) && flip) value = !value;
    noisy.push_back(value);
  }
  input.predictions = std::move(noisy);

  const auto report = audit_separation(input);
  CHECK(report.summary == SummaryVerdict::unfair);
  bool any_dependent = false;
  for (const auto& cell : report.cells)
    any_dependent = any_dependent || cell.verdict.verdict == Verdict::dependent;
  CHECK(any_dependent);
}

TEST_CASE("sufficiency swaps the roles of labels and predictions") {
  const AuditInput input = sample_joint(dissociation_table(), 100000, Seed{8});
  const auto report = audit_sufficiency(input);
  CHECK(report.summary == SummaryVerdict::fair);  // strata constant in y
  REQUIRE(report.cells.size() == 4);
  CHECK(report.cells[0].stratum == "y_hat=0");
  CHECK(report.cells[2].stratum == "y_hat=1");
}

TEST_CASE("sufficiency flags label-group dependence within a prediction stratum") {
  // Within y_hat = 1: group a mostly has y = 1, group b mostly y = 0.
  JointTable table({"a", "b"});
  table.set(0, true, true, Rational(2, 10));
  table.set(0, false, true, Rational(1, 20));
  table.set(0, true, false, Rational(1, 20));
  table.set(0, false, false, Rational(2, 10));
  table.set(1, true, true, Rational(1, 20));
  table.set(1, false, true, Rational(2, 10));
  table.set(1, true, false, Rational(2, 10));
  table.set(1, false, false, Rational(1, 20));
  table.validate();
  const AuditInput input = sample_joint(table, 100000, Seed{30});
  const auto report = audit_sufficiency(input);
  CHECK(report.summary == SummaryVerdict::unfair);
}

TEST_CASE("an empty stratum stays inconclusive without spoiling the summary") {
  AuditInput input;
  input.predictions = BitSequence::constant(3000, false);  // y_hat = 1 never occurs
  input.labels = alternating(3000);
  input.groups.add("g", bernoulli_stream(Rational(1, 2), 3000, Seed{33}));
  const auto report = audit_sufficiency(input);
  bool saw_inconclusive_stratum = false;
  bool saw_conclusive_stratum = false;
  for (const auto& cell : report.cells) {
    if (cell.stratum == "y_hat=1") {
      CHECK(cell.verdict.verdict == Verdict::inconclusive);
      saw_inconclusive_stratum = true;
    }
    if (cell.stratum == "y_hat=0" && cell.verdict.verdict != Verdict::inconclusive)
      saw_conclusive_stratum = true;
  }
  CHECK(saw_inconclusive_stratum);
  CHECK(saw_conclusive_stratum);
  CHECK(report.summary == SummaryVerdict::fair);
}

TEST_CASE("all-inconclusive audits stay inconclusive overall") {
  AuditInput input;
  input.predictions = alternating(20);  // far below min_count
  input.groups.add("g", BitSequence::constant(20, true));
  const auto report = audit_independence(input);
  CHECK(report.summary == SummaryVerdict::inconclusive);
}

TEST_CASE("missing labels are rejected for label-conditioned criteria") {
  AuditInput input;
  input.predictions = alternating(1000);
  input.groups.add("g", BitSequence::constant(1000, true));
  CHECK_THROWS_AS(audit_separation(input), InputError);
  CHECK_THROWS_AS(audit_sufficiency(input), InputError);
  CHECK_NOTHROW(audit_independence(input));
}

TEST_CASE("an empty group family is rejected") {
  AuditInput input;
  input.predictions = alternating(1000);
  CHECK_THROWS_AS(audit_independence(input), InputError);
}

TEST_CASE("relabelling groups permutes report rows and nothing else") {
  const std::size_t n = 50000;
  const BitSequence x = bernoulli_stream(Rational(1, 2), n, Seed{51});
  const BitSequence g1 = bernoulli_stream(Rational(1, 4), n, Seed{52});
  const BitSequence g2 = bernoulli_stream(Rational(3, 4), n, Seed{53});

  AuditInput a;
  a.predictions = x;
  a.groups.add("first", g1);
  a.groups.add("second", g2);
  AuditInput b;
  b.predictions = x;
  b.groups.add("second", g2);
  b.groups.add("first", g1);

  const auto ra = audit_independence(a);
  const auto rb = audit_independence(b);
  REQUIRE(ra.cells.size() == 2);
  REQUIRE(rb.cells.size() == 2);
  CHECK(ra.summary == rb.summary);
  CHECK(ra.cells[0].group == rb.cells[1].group);
  CHECK(ra.cells[0].verdict.verdict == rb.cells[1].verdict.verdict);
  CHECK(ra.cells[0].verdict.p_selected == rb.cells[1].verdict.p_selected);
  CHECK(ra.cells[1].group == rb.cells[0].group);
  CHECK(ra.cells[1].verdict.p_selected == rb.cells[0].verdict.p_selected);
}

TEST_CASE("group streams never leak into the overall frequency") {
  const std::size_t n = 50000;
  AuditInput input;
  input.predictions = bernoulli_stream(Rational(1, 2), n, Seed{61});
  input.groups.add("g", bernoulli_stream(Rational(1, 2), n, Seed{62}));
  const auto before = audit_independence(input);

  AuditInput corrupted;
  corrupted.predictions = input.predictions;
  corrupted.groups.add("g", bernoulli_stream(Rational(1, 10), n, Seed{63}));
  const auto after = audit_independence(corrupted);

  REQUIRE(before.cells.size() == 1);
  REQUIRE(after.cells.size() == 1);
  CHECK(before.cells[0].verdict.p_overall == after.cells[0].verdict.p_overall);
}

TEST_CASE("intersectional cells are opt-in") {
  const std::size_t n = 50000;
  AuditInput input;
  input.predictions = bernoulli_stream(Rational(1, 2), n, Seed{71});
  input.groups.add("a", bernoulli_stream(Rational(1, 2), n, Seed{72}));
  input.groups.add("b", bernoulli_stream(Rational(1, 2), n, Seed{73}));

  CHECK(audit_independence(input).cells.size() == 2);

  AuditOptions options;
  options.intersections = true;
  const auto with = audit_independence(input, options);
  REQUIRE(with.cells.size() == 3);
  CHECK(with.cells[2].group == "a&b");
}

TEST_CASE("fairness and randomness verdict vectors coincide") {
  std::mt19937_64 seeds(404);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2000 + seeds() % 20000;
    BitSequence x;
    switch (trial % 3) {
      case 0: x = bernoulli_stream(Rational(1, 2), n, Seed{seeds()}); break;
      case 1: x = alternating(n); break;
      default: x = BitSequence::constant(n, true); break;
    }
    GroupFamily groups;
    const int group_count = 1 + static_cast<int>(seeds() % 3);
    for (int g = 0; g < group_count; ++g) {
      if (seeds() % 2 == 0) {
        groups.add("g" + std::to_string(g), bernoulli_stream(Rational(1, 3), n, Seed{seeds()}));
      } else {
        const std::uint64_t period = 2 + seeds() % 4;
        BitSequence stream;
        for (std::size_t i = 1; i <= n; ++i) stream.push_back(i % period == 0);
        groups.add("g" + std::to_string(g), stream);
      }
    }
    const auto eq = fairness_equals_randomness(x, groups);
    CHECK(eq.vectors_match);
    REQUIRE(eq.fairness.cells.size() == eq.randomness.per_rule.size());
  }
}

TEST_CASE("the ex-post rule exposes any non-constant stream") {
  const auto caught = adversarial_rule(alternating(10000));
  CHECK(caught.rule.ex_post());
  CHECK(caught.verdict.p_selected == Rational(1));
  CHECK(caught.verdict.delta == Rational(1, 2));
  CHECK(caught.verdict.verdict == Verdict::dependent);

  const auto trivial_ones = adversarial_rule(BitSequence::constant(10000, true));
  CHECK(trivial_ones.verdict.verdict == Verdict::independent);

  const auto trivial_zeros = adversarial_rule(BitSequence::constant(10000, false));
  CHECK(trivial_zeros.verdict.verdict == Verdict::inconclusive);
}
