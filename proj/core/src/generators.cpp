#include "freqfair/generators.hpp"

#include <algorithm>

namespace freqfair {

namespace {

// floor(p * 2^64) as an unsigned 128-bit-safe big integer; draws u < threshold.
BigInt draw_threshold(const Rational& p) {
  if (p < 0 || p > 1)
    throw InputError(ErrorCode::invalid_probability,
                     "probability " + to_fraction_string(p) + " outside [0, 1]");
  BigInt two64 = BigInt(1) << 64;
  return (numerator(p) * two64) / denominator(p);
}

}  // namespace

BitStreamGenerator::BitStreamGenerator(const Seed& seed) {
  if (seed.algorithm != "mt19937_64-v1")
    throw InputError(ErrorCode::unknown_algorithm,
                     "unknown generator algorithm '" + seed.algorithm + "'");
  engine_.seed(seed.value);
}

std::uint64_t BitStreamGenerator::next_u64() { return engine_(); }

bool BitStreamGenerator::bernoulli(const Rational& p) {
  const BigInt threshold = draw_threshold(p);
  return BigInt(next_u64()) < threshold;
}

std::size_t BitStreamGenerator::categorical(const std::vector<Rational>& cumulative) {
  if (cumulative.empty() || cumulative.back() != 1)
    throw InputError(ErrorCode::invalid_probability, "cumulative weights must end at exactly 1");
  const BigInt draw(next_u64());
  for (std::size_t k = 0; k < cumulative.size(); ++k) {
    if (draw < draw_threshold(cumulative[k])) return k;
  }
  return cumulative.size() - 1;
}

BitSequence bernoulli_stream(const Rational& p, std::size_t n, const Seed& seed) {
  BitStreamGenerator gen(seed);
  const BigInt threshold = draw_threshold(p);
  // threshold is in [0, 2^64]; only the p = 1 case does not fit in 64 bits.
  const bool always = p == 1;
  const std::uint64_t t64 = always ? 0 : threshold.convert_to<std::uint64_t>();
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t u = gen.next_u64();
    bits[i] = (always || u < t64) ? 1 : 0;
  }
  return BitSequence(std::move(bits));
}

JointTable::JointTable(std::vector<std::string> group_names)
    : group_names_(std::move(group_names)), cells_(group_names_.size() * 4, Rational(0)) {
  if (group_names_.empty())
    throw InputError(ErrorCode::empty_group_family, "joint table needs at least one group");
}

std::size_t JointTable::index(std::size_t group, bool label, bool prediction) const {
  if (group >= group_names_.size())
    throw std::out_of_range("group index out of range");
  return group * 4 + (label ? 2 : 0) + (prediction ? 1 : 0);
}

void JointTable::set(std::size_t group, bool label, bool prediction, Rational probability) {
  cells_[index(group, label, prediction)] = std::move(probability);
}

const Rational& JointTable::cell(std::size_t group, bool label, bool prediction) const {
  return cells_[index(group, label, prediction)];
}

void JointTable::validate() const {
  Rational sum(0);
  for (const auto& c : cells_) {
    if (c < 0) throw InputError(ErrorCode::invalid_probability, "negative cell probability");
    sum += c;
  }
  if (sum != 1)
    throw InputError(ErrorCode::invalid_probability,
                     "cells sum to " + to_fraction_string(sum) + ", expected 1");
}

Rational JointTable::group_weight(std::size_t group) const {
  Rational sum(0);
  for (bool y : {false, true})
    for (bool p : {false, true}) sum += cell(group, y, p);
  return sum;
}

Rational JointTable::prediction_rate() const {
  Rational sum(0);
  for (std::size_t g = 0; g < group_count(); ++g)
    for (bool y : {false, true}) sum += cell(g, y, true);
  return sum;
}

Rational JointTable::prediction_rate_in_group(std::size_t g) const {
  const Rational weight = group_weight(g);
  if (weight == 0) return Rational(0);
  return (cell(g, false, true) + cell(g, true, true)) / weight;
}

Rational JointTable::label_rate_in_group(std::size_t g) const {
  const Rational weight = group_weight(g);
  if (weight == 0) return Rational(0);
  return (cell(g, true, false) + cell(g, true, true)) / weight;
}

Rational JointTable::accuracy() const {
  Rational sum(0);
  for (std::size_t g = 0; g < group_count(); ++g) {
    sum += cell(g, false, false);
    sum += cell(g, true, true);
  }
  return sum;
}

AuditInput sample_joint(const JointTable& table, std::size_t n, const Seed& seed) {
  table.validate();
  BitStreamGenerator gen(seed);

  // Fixed cell order (group asc, label asc, prediction asc) for the
  // cumulative thresholds; one draw per individual.
  std::vector<Rational> cumulative;
  Rational running(0);
  for (std::size_t g = 0; g < table.group_count(); ++g) {
    for (bool y : {false, true}) {
      for (bool p : {false, true}) {
        running += table.cell(g, y, p);
        cumulative.push_back(running);
      }
    }
  }
  if (cumulative.back() != 1)
    throw InputError(ErrorCode::invalid_probability, "table does not sum to 1");

  AuditInput input;
  BitSequence labels;
  std::vector<BitSequence> memberships(table.group_count());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = gen.categorical(cumulative);
    const std::size_t g = k / 4;
    const bool y = ((k % 4) / 2) != 0;
    const bool p = (k % 2) != 0;
    input.predictions.push_back(p);
    labels.push_back(y);
    for (std::size_t gg = 0; gg < memberships.size(); ++gg)
      memberships[gg].push_back(gg == g);
  }
  input.labels = std::move(labels);
  for (std::size_t g = 0; g < memberships.size(); ++g)
    input.groups.add(table.group_names()[g], std::move(memberships[g]));
  return input;
}

AttributePair penguin_colony(const Rational& p_sex,
                             const std::pair<Rational, Rational>& p_flu_given_sex, std::size_t n,
                             const Seed& seed) {
  BitStreamGenerator gen(seed);
  AttributePair pair;
  for (std::size_t i = 0; i < n; ++i) {
    const bool sex = gen.bernoulli(p_sex);
    const bool flu = gen.bernoulli(sex ? p_flu_given_sex.second : p_flu_given_sex.first);
    pair.attribute.push_back(sex);
    pair.conditioned.push_back(flu);
  }
  return pair;
}

LoadedDieDemo loaded_die_demo() {
  LoadedDieDemo demo;
  demo.event_a = {1, 2};
  demo.event_b = {2, 3};

  auto make_case = [&](std::string label, FinitePMF pmf) {
    pmf.validate();
    DieCase c;
    c.label = std::move(label);
    c.result = kolmogorov_independent(pmf, demo.event_a, demo.event_b);
    c.pmf = std::move(pmf);
    return c;
  };

  FinitePMF fair;
  for (int face = 1; face <= 6; ++face) fair.prob[face] = Rational(1, 6);
  demo.fair = make_case("fair", std::move(fair));

  FinitePMF loaded;
  loaded.prob[1] = Rational(1, 3);
  loaded.prob[2] = Rational(1, 6);
  loaded.prob[3] = Rational(1, 2);
  loaded.prob[4] = loaded.prob[5] = loaded.prob[6] = Rational(0);
  demo.loaded = make_case("loaded", std::move(loaded));

  FinitePMF adjusted;
  adjusted.prob[1] = Rational(1, 3);
  adjusted.prob[2] = Rational(1, 6);
  adjusted.prob[3] = Rational(1, 6);
  adjusted.prob[4] = Rational(1, 3);
  adjusted.prob[5] = adjusted.prob[6] = Rational(0);
  demo.loaded_adjusted = make_case("loaded-adjusted", std::move(adjusted));

  return demo;
}

RandomizationOutcome randomize_for_independence(const AuditInput& input, const Seed& seed,
                                                const AuditOptions& options) {
  input.validate(/*require_labels=*/true);
  const std::size_t n = input.size();

  RandomizationOutcome out;
  const auto& predictions = input.predictions;
  const auto& labels = *input.labels;

  std::uint64_t matches = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (predictions.at(i) == labels.at(i)) ++matches;
  out.accuracy_before = n > 0 ? Rational(matches, n) : Rational(0);

  const Rational global_rate = n > 0 ? Rational(predictions.ones(), n) : Rational(0);
  if (n == 0 || global_rate == 0 || global_rate == 1) {
    out.degenerate = true;
    out.note = "global prediction rate is degenerate; nothing to equalize";
    out.randomized_predictions = predictions;
    out.accuracy_after = out.accuracy_before;
    out.post_audit = audit_independence(input, options);
    return out;
  }
  if (labels.ones() == 0 || labels.ones() == labels.size()) {
    out.note = "labels are constant; the accuracy trade-off is degenerate";
  }

  // Per-group empirical rates decide the flip probabilities: groups above
  // the global rate demote ones with probability (r_g - r) / r_g, groups
  // below promote zeros with probability (r - r_g) / (1 - r_g).
  const auto& groups = input.groups.groups();
  std::vector<Rational> demote(groups.size(), Rational(0));
  std::vector<Rational> promote(groups.size(), Rational(0));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const Subselection in_group = subselect(predictions, groups[g].second);
    if (in_group.selected_count == 0) continue;
    const Rational rate(in_group.selected_values.ones(), in_group.selected_count);
    if (rate > global_rate && rate > 0) {
      demote[g] = (rate - global_rate) / rate;
    } else if (rate < global_rate && rate < 1) {
      promote[g] = (global_rate - rate) / (Rational(1) - rate);
    }
  }

  // One draw per individual keeps the stream aligned regardless of rates.
  BitStreamGenerator gen(seed);
  BitSequence randomized;
  for (std::size_t i = 1; i <= n; ++i) {
    bool value = predictions.at(i);
    std::uint64_t draw = gen.next_u64();
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (!groups[g].second.at(i)) continue;
      if (value && demote[g] > 0) {
        if (BigInt(draw) < (numerator(demote[g]) * (BigInt(1) << 64)) / denominator(demote[g]))
          value = false;
      } else if (!value && promote[g] > 0) {
        if (BigInt(draw) < (numerator(promote[g]) * (BigInt(1) << 64)) / denominator(promote[g]))
          value = true;
      }
      break;  // groups partition the population; first membership decides
    }
    randomized.push_back(value);
  }

  std::uint64_t matches_after = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (randomized.at(i) == labels.at(i)) ++matches_after;
  out.accuracy_after = Rational(matches_after, n);

  AuditInput post = input;
  post.predictions = std::move(randomized);
  out.post_audit = audit_independence(post, options);
  out.randomized_predictions = std::move(post.predictions);
  return out;
}

}  // namespace freqfair
