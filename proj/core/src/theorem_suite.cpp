#include "freqfair/theorem_suite.hpp"

#include <algorithm>
#include <sstream>

namespace freqfair {

namespace {

Seed child_seed(const Seed& base, std::uint64_t index) {
  Seed child = base;
  child.value = base.value ^ (0x9E3779B97F4A7C15ULL * (index + 1));
  return child;
}

BitSequence periodic_pattern_stream(const std::vector<std::uint8_t>& pattern, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = pattern[i % pattern.size()];
  return BitSequence(std::move(bits));
}

std::vector<std::uint8_t> random_pattern(BitStreamGenerator& gen, std::size_t period) {
  std::vector<std::uint8_t> pattern(period);
  for (auto& b : pattern) b = gen.next_u64() & 1;
  return pattern;
}

struct PairSpec {
  std::string description;
  BitSequence x;
  SelectionRule rule;
  BitSequence rule_indicator;
};

// Mixture stream: rate_selected where the rule selects, rate_rest elsewhere.
BitSequence mixture_stream(const SelectionRule& rule, const Rational& rate_selected,
                           const Rational& rate_rest, std::size_t n, const Seed& seed) {
  BitStreamGenerator gen(seed);
  BitSequence x;
  for (std::size_t i = 1; i <= n; ++i)
    x.push_back(gen.bernoulli(rule.selects(i) ? rate_selected : rate_rest));
  return x;
}

}  // namespace

TheoremSuiteReport run_theorem_suite(const Seed& seed, std::size_t stochastic_n,
                                     const AuditOptions& options) {
  const std::size_t big_n = std::clamp<std::size_t>(stochastic_n, 100000, 1000000);
  BitStreamGenerator meta(child_seed(seed, 0));

  std::vector<PairSpec> specs;
  std::uint64_t stream_index = 1;

  // Periodic collective vs. periodic rule: exact rational frequencies, a mix
  // of admissible and inadmissible alignments.
  const std::size_t periodic_ns[] = {100000, 200000, 500000};
  for (int k = 0; k < 24; ++k) {
    const std::size_t n = periodic_ns[k % 3];
    const std::size_t period_x = 2 + meta.next_u64() % 5;
    const auto pattern = random_pattern(meta, period_x);
    const std::uint64_t period_s = 2 + meta.next_u64() % 5;
    std::set<std::uint64_t> residues;
    const std::uint64_t count = 1 + meta.next_u64() % period_s;
    while (residues.size() < count) residues.insert(meta.next_u64() % period_s);
    auto rule = SelectionRule::periodic(period_s, residues);

    std::ostringstream os;
    os << "periodic-x(p=" << period_x << ") vs " << rule.description() << " n=" << n;
    specs.push_back(PairSpec{os.str(), periodic_pattern_stream(pattern, n), rule,
                             rule.indicator(n)});
  }

  // Seeded i.i.d. collective vs. periodic rule.
  const Rational bern_rates[] = {Rational(3, 10), Rational(1, 2), Rational(7, 10)};
  for (int k = 0; k < 12; ++k) {
    const Rational p = bern_rates[k % 3];
    const std::uint64_t period_s = 2 + meta.next_u64() % 5;
    const std::uint64_t residue = meta.next_u64() % period_s;
    auto rule = SelectionRule::periodic(period_s, {residue});

    std::ostringstream os;
    os << "iid-x(p=" << to_fraction_string(p) << ") vs " << rule.description()
       << " n=" << big_n;
    specs.push_back(PairSpec{os.str(),
                             bernoulli_stream(p, big_n, child_seed(seed, stream_index++)), rule,
                             rule.indicator(big_n)});
  }

  // Seeded i.i.d. collective vs. seeded i.i.d. mask (independent sources).
  const Rational mask_rates[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  for (int k = 0; k < 12; ++k) {
    const Rational p = bern_rates[(k + 1) % 3];
    const Rational q = mask_rates[k % 3];
    BitSequence side = bernoulli_stream(q, big_n, child_seed(seed, stream_index++));
    auto rule = SelectionRule::attribute_mask(side, "iid-mask");

    std::ostringstream os;
    os << "iid-x(p=" << to_fraction_string(p) << ") vs iid-mask(q=" << to_fraction_string(q)
       << ") n=" << big_n;
    specs.push_back(PairSpec{os.str(),
                             bernoulli_stream(p, big_n, child_seed(seed, stream_index++)),
                             std::move(rule), std::move(side)});
  }

  // Dependent constructions: the collective's rate differs sharply inside
  // the selected positions; both sides must flag dependence.
  for (int k = 0; k < 8; ++k) {
    const std::uint64_t period_s = 2 + meta.next_u64() % 3;
    const std::uint64_t residue = meta.next_u64() % period_s;
    auto rule = SelectionRule::periodic(period_s, {residue});

    std::ostringstream os;
    os << "dependent-mixture vs " << rule.description() << " n=" << big_n;
    specs.push_back(PairSpec{os.str(),
                             mixture_stream(rule, Rational(9, 10), Rational(1, 10), big_n,
                                            child_seed(seed, stream_index++)),
                             rule, rule.indicator(big_n)});
  }

  TheoremSuiteReport report;
  for (auto& spec : specs) {
    TheoremPairResult result;
    result.description = spec.description;
    result.n = spec.x.size();

    const auto density_s = natural_density(spec.rule_indicator, options.diagnostics);
    const bool s_converges = density_s.member_of_density_logic == Membership::yes;
    const bool s_positive = density_s.estimate.ones_count >= options.min_count;
    result.hypotheses_ok = s_converges && s_positive;

    const IndependenceVerdict adm = admissible(spec.x, spec.rule, options.tolerance,
                                               options.min_count, options.diagnostics);
    const DensityIndependence prod = finadd_independent(spec.x, spec.rule_indicator,
                                                        options.tolerance, options.diagnostics);
    result.admissibility = adm.verdict;
    result.product_form = prod.verdict;

    result.forward = admissibility_implies_product_form(spec.x, spec.rule, options.tolerance,
                                                        options.min_count, options.diagnostics);
    result.backward = product_form_implies_admissibility(spec.x, spec.rule_indicator,
                                                         options.tolerance, options.min_count,
                                                         options.diagnostics);

    if (result.hypotheses_ok) {
      if (adm.verdict == prod.verdict) {
        result.agree = true;
      } else if (adm.verdict == Verdict::independent && prod.verdict == Verdict::dependent) {
        result.agree = prod.delta && *prod.delta <= prod.tolerance * 2;
      } else if (prod.verdict == Verdict::independent && adm.verdict == Verdict::dependent) {
        result.agree = adm.delta && *adm.delta <= adm.tolerance * 2;
      }
      ++report.hypotheses_passed;
      if (result.agree) {
        ++report.agreements;
      } else {
        report.failures.push_back(result.description + ": admissibility=" +
                                  std::string(to_string(adm.verdict)) + " product-form=" +
                                  std::string(to_string(prod.verdict)));
      }
      if (result.forward.status == TheoremStatus::fails)
        report.failures.push_back(result.description + ": forward implication fails");
      if (result.backward.status == TheoremStatus::fails)
        report.failures.push_back(result.description + ": backward implication fails");
    }
    report.pairs.push_back(std::move(result));
  }
  return report;
}

}  // namespace freqfair
