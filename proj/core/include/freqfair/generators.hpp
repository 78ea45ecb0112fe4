#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "freqfair/fairness.hpp"

namespace freqfair {

/// Seed plus a named generator algorithm. The algorithm identifier is part
/// of the reproducibility contract: identical (algorithm, value, params)
/// yield bit-identical streams on every platform.
struct Seed {
  std::uint64_t value = 0;
  std::string algorithm = "mt19937_64-v1";
};

/// Deterministic bit-stream source. "mt19937_64-v1" draws one 64-bit word
/// per decision and compares against floor(p * 2^64), so Bernoulli and
/// categorical draws are exact up to 2^-64 and never depend on
/// platform-specific distribution code.
class BitStreamGenerator {
 public:
  explicit BitStreamGenerator(const Seed& seed);

  std::uint64_t next_u64();

  bool bernoulli(const Rational& p);

  /// Index of the first cumulative threshold exceeding the draw. The last
  /// entry must be exactly 1.
  std::size_t categorical(const std::vector<Rational>& cumulative);

 private:
  std::mt19937_64 engine_;
};

/// Seeded i.i.d. 0-1 stream with success probability p.
BitSequence bernoulli_stream(const Rational& p, std::size_t n, const Seed& seed);

/// Exact joint distribution over (group, label, prediction) cells. Groups
/// partition the population: each individual belongs to exactly one group.
class JointTable {
 public:
  explicit JointTable(std::vector<std::string> group_names);

  void set(std::size_t group, bool label, bool prediction, Rational probability);
  const Rational& cell(std::size_t group, bool label, bool prediction) const;

  std::size_t group_count() const { return group_names_.size(); }
  const std::vector<std::string>& group_names() const { return group_names_; }

  /// Throws unless all cells are >= 0 and sum to exactly 1.
  void validate() const;

  // Exact marginals, usable as oracles for sampled streams.
  Rational group_weight(std::size_t group) const;
  Rational prediction_rate() const;                         // P(prediction = 1)
  Rational prediction_rate_in_group(std::size_t g) const;   // P(prediction = 1 | group)
  Rational label_rate_in_group(std::size_t g) const;        // P(label = 1 | group)
  Rational accuracy() const;                                // P(prediction = label)

 private:
  std::size_t index(std::size_t group, bool label, bool prediction) const;
  std::vector<std::string> group_names_;
  std::vector<Rational> cells_;
};

/// Samples n individuals i.i.d. from the table. Group membership becomes
/// one indicator stream per group.
AuditInput sample_joint(const JointTable& table, std::size_t n, const Seed& seed);

/// Two parallel attribute streams over a population: a binary attribute
/// drawn at rate p_attr, and a second attribute drawn at a rate conditioned
/// on the first. The two are independent in the subselection sense iff the
/// conditional rates are equal.
struct AttributePair {
  BitSequence attribute;    // e.g. sex
  BitSequence conditioned;  // e.g. flu
};

AttributePair penguin_colony(const Rational& p_sex,
                             const std::pair<Rational, Rational>& p_flu_given_sex, std::size_t n,
                             const Seed& seed);

/// The classic dice example: events A = {1,2} and B = {2,3} under the fair
/// die and under a loading often quoted as making A and B independent.
/// That quoted loading (1/3, 1/6, 1/2, 0, 0, 0) actually fails the product
/// test — P(A)P(B) = 1/3 but P(A and B) = 1/6 — so the demo also carries a
/// minimally adjusted loading (1/3, 1/6, 1/6, 1/3, 0, 0) that genuinely
/// satisfies it.
struct DieCase {
  std::string label;
  FinitePMF pmf;
  KolmogorovResult result;
};

struct LoadedDieDemo {
  std::set<int> event_a;  // {1,2}
  std::set<int> event_b;  // {2,3}
  DieCase fair;
  DieCase loaded;           // the quoted loading, product test fails
  DieCase loaded_adjusted;  // adjusted loading, product test holds
};

LoadedDieDemo loaded_die_demo();

/// Post-processes predictions so every group's acceptance rate matches the
/// global rate: groups above the target randomly demote ones, groups below
/// randomly promote zeros. A no-op for groups already at the target, so
/// already-independent inputs keep their accuracy up to sampling noise.
struct RandomizationOutcome {
  BitSequence randomized_predictions;
  Rational accuracy_before = Rational(0);
  Rational accuracy_after = Rational(0);
  FairnessReport post_audit;  // independence audit of the new predictions
  bool degenerate = false;
  std::string note;
};

RandomizationOutcome randomize_for_independence(const AuditInput& input, const Seed& seed,
                                                const AuditOptions& options = {});

}  // namespace freqfair
