// freqfair: frequency-based independence and fairness auditing for binary
// streams.
//
// Subcommands:
//   audit            run fairness criteria over a CSV of parallel 0-1 streams
//   demo             emit worked example datasets and reports
//   verify-theorems  cross-check admissibility against density product form
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "freqfair/report_io.hpp"
#include "freqfair/theorem_suite.hpp"
#include "freqfair/version.hpp"

namespace {

using namespace freqfair;

constexpr int kExitError = 3;

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(ErrorCode::io_failure, "cannot write " + path);
  out << contents;
}

AuditCriterion parse_criterion(const std::string& name) {
  if (name == "independence") return AuditCriterion::independence;
  if (name == "separation") return AuditCriterion::separation;
  if (name == "sufficiency") return AuditCriterion::sufficiency;
  throw InputError(ErrorCode::config_invalid,
                   "unknown criterion '" + name +
                       "' (expected independence, separation or sufficiency)");
}

AuditConfig base_config_from_env() {
  if (const char* path = std::getenv("FREQFAIR_CONFIG"); path && *path)
    return config_from_json_file(path);
  return AuditConfig{};
}

std::string summary_line(const FairnessReport& report) {
  std::string line = std::string(to_string(report.criterion)) + ": " +
                     std::string(to_string(report.summary));
  for (const auto& cell : report.cells) {
    line += "\n  [" + cell.group + " | " + cell.stratum +
            "] verdict=" + std::string(to_string(cell.verdict.verdict)) +
            " p_overall=" + to_fraction_string(cell.verdict.p_overall) +
            " p_selected=" + to_fraction_string(cell.verdict.p_selected) +
            " delta=" + to_fraction_string(cell.verdict.delta) +
            " selected=" + std::to_string(cell.verdict.selected_count);
  }
  return line;
}

int run_audit_command(const std::string& input_path, const std::vector<std::string>& criteria,
                      const std::string& tolerance, std::uint64_t min_count, bool intersections,
                      const std::string& report_path, const std::string& trajectories_path) {
  AuditConfig config = base_config_from_env();
  for (const auto& c : criteria) config.criteria.push_back(parse_criterion(c));
  if (tolerance != "auto") config.tolerance = Tolerance::exact(rational_from_string(tolerance));
  if (min_count > 0) config.min_count = min_count;
  config.intersections = intersections;
  config.with_trajectories = !trajectories_path.empty();
  config.validate();

  const LoadedInput loaded = ingest_csv(input_path);
  // Label-dependent criteria need the y column; fail before auditing.
  for (AuditCriterion c : config.criteria) {
    if (c != AuditCriterion::independence && !loaded.input.labels)
      throw InputError(ErrorCode::labels_required,
                       std::string(to_string(c)) + " requires a 'y' column");
  }

  const ReportDocument doc = run_audit(config, loaded);
  for (const auto& report : doc.reports) std::cout << summary_line(report) << "\n";

  if (!report_path.empty()) write_file(report_path, report_to_json(doc));
  if (!trajectories_path.empty() && doc.trajectories)
    write_file(trajectories_path, *doc.trajectories);
  return exit_code_for(doc);
}

void print_die_case(const DieCase& c, const std::string& heading) {
  std::cout << heading << ": P(A)=" << to_fraction_string(c.result.p_a)
            << " P(B)=" << to_fraction_string(c.result.p_b)
            << " P(A&B)=" << to_fraction_string(c.result.p_ab)
            << " P(A)*P(B)=" << to_fraction_string(Rational(c.result.p_a * c.result.p_b)) << " -> "
            << (c.result.independent ? "independent" : "not independent") << "\n";
  std::cout << "  pmf:";
  for (const auto& [face, p] : c.pmf.prob)
    std::cout << " p" << face << "=" << to_fraction_string(p);
  std::cout << "\n";
}

int run_demo_loaded_die() {
  const LoadedDieDemo demo = loaded_die_demo();
  std::cout << "die events: A={1,2} B={2,3}\n";
  print_die_case(demo.fair, "fair die");
  print_die_case(demo.loaded, "loaded die");
  print_die_case(demo.loaded_adjusted, "adjusted loaded die");
  return 0;
}

JointTable biased_table() {
  // Two equal-weight groups; predictions equal labels; label rates 4/5 and
  // 1/5. Separation holds while independence fails.
  JointTable table({"a", "b"});
  table.set(0, true, true, Rational(2, 5));
  table.set(0, false, false, Rational(1, 10));
  table.set(1, true, true, Rational(1, 10));
  table.set(1, false, false, Rational(2, 5));
  table.validate();
  return table;
}

int run_demo_penguin(std::size_t n, std::uint64_t seed_value, bool equal_rates,
                     const std::string& output) {
  const Rational p_sex(1, 2);
  const std::pair<Rational, Rational> rates =
      equal_rates ? std::make_pair(Rational(3, 10), Rational(3, 10))
                  : std::make_pair(Rational(6, 10), Rational(1, 10));
  const AttributePair colony = penguin_colony(p_sex, rates, n, Seed{seed_value});

  AuditInput input;
  input.predictions = colony.conditioned;  // flu is the audited stream
  input.groups.add("sex", colony.attribute);
  const std::string csv = to_csv(input);
  if (output.empty())
    std::cout << csv;
  else
    write_file(output, csv);
  return 0;
}

int run_demo_biased(std::size_t n, std::uint64_t seed_value, const std::string& output) {
  const AuditInput input = sample_joint(biased_table(), n, Seed{seed_value});
  const std::string csv = to_csv(input);
  if (output.empty())
    std::cout << csv;
  else
    write_file(output, csv);
  return 0;
}

int run_demo_tradeoff(std::size_t n, std::uint64_t seed_value) {
  const AuditInput input = sample_joint(biased_table(), n, Seed{seed_value});
  const FairnessReport before = audit_independence(input);
  const RandomizationOutcome outcome = randomize_for_independence(input, Seed{seed_value + 1});

  std::cout << "individuals: " << n << "\n";
  std::cout << "accuracy before: " << to_fraction_string(outcome.accuracy_before) << " ("
            << to_double(outcome.accuracy_before) << ")\n";
  std::cout << "accuracy after:  " << to_fraction_string(outcome.accuracy_after) << " ("
            << to_double(outcome.accuracy_after) << ")\n";
  std::cout << "independence before: " << to_string(before.summary) << "\n";
  std::cout << "independence after:  " << to_string(outcome.post_audit.summary) << "\n";
  if (!outcome.note.empty()) std::cout << "note: " << outcome.note << "\n";
  return 0;
}

int run_verify_theorems(std::size_t n, std::uint64_t seed_value) {
  const TheoremSuiteReport report = run_theorem_suite(Seed{seed_value}, n);
  for (const auto& pair : report.pairs) {
    std::cout << (pair.agree ? "[agree] " : (pair.hypotheses_ok ? "[FAIL]  " : "[skip]  "))
              << pair.description << " admissibility=" << to_string(pair.admissibility)
              << " product-form=" << to_string(pair.product_form)
              << " forward=" << to_string(pair.forward.status)
              << " backward=" << to_string(pair.backward.status) << "\n";
  }
  std::cout << "pairs=" << report.pairs.size()
            << " hypotheses-passed=" << report.hypotheses_passed
            << " agreements=" << report.agreements << " failures=" << report.failures.size()
            << "\n";
  for (const auto& f : report.failures) std::cout << "failure: " << f << "\n";
  return report.ok(50) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frequency-based independence and fairness auditing"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  // audit
  std::string input_path;
  std::vector<std::string> criteria;
  std::string tolerance = "auto";
  std::uint64_t min_count = 0;
  bool intersections = false;
  std::string report_path;
  std::string trajectories_path;
  auto* audit = app.add_subcommand("audit", "audit a CSV of prediction/label/group streams");
  audit->add_option("--input", input_path, "input CSV file")->required();
  audit->add_option("--criterion", criteria,
                    "criteria to audit (independence, separation, sufficiency)")
      ->required()
      ->delimiter(',');
  audit->add_option("--tolerance", tolerance, "auto or an exact rational/decimal, e.g. 1/100");
  audit->add_option("--min-count", min_count, "minimum subselection size for a verdict");
  audit->add_flag("--intersections", intersections, "also audit pairwise group intersections");
  audit->add_option("--report", report_path, "write the JSON report document here");
  audit->add_option("--trajectories", trajectories_path, "write frequency trajectories CSV here");

  // demo
  std::string demo_kind;
  std::size_t demo_n = 100000;
  std::uint64_t demo_seed = 1;
  bool equal_rates = false;
  std::string demo_output;
  auto* demo = app.add_subcommand("demo", "emit worked example datasets and reports");
  demo->add_option("kind", demo_kind, "loaded-die | penguin | biased | tradeoff")->required();
  demo->add_option("--n", demo_n, "number of individuals");
  demo->add_option("--seed", demo_seed, "generator seed");
  demo->add_flag("--equal-rates", equal_rates, "penguin: equal conditional rates (fair)");
  demo->add_option("--output", demo_output, "write the demo CSV here instead of stdout");

  // verify-theorems
  std::size_t vt_n = 1000000;
  std::uint64_t vt_seed = 7;
  auto* verify = app.add_subcommand(
      "verify-theorems", "check admissibility against density product form on generated pairs");
  verify->add_option("--n", vt_n, "stream length for the seeded stochastic pairs");
  verify->add_option("--seed", vt_seed, "suite seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (audit->parsed())
      return run_audit_command(input_path, criteria, tolerance, min_count, intersections,
                               report_path, trajectories_path);
    if (demo->parsed()) {
      if (demo_kind == "loaded-die") return run_demo_loaded_die();
      if (demo_kind == "penguin")
        return run_demo_penguin(demo_n, demo_seed, equal_rates, demo_output);
      if (demo_kind == "biased") return run_demo_biased(demo_n, demo_seed, demo_output);
      if (demo_kind == "tradeoff") return run_demo_tradeoff(demo_n, demo_seed);
      throw InputError(ErrorCode::config_invalid, "unknown demo '" + demo_kind + "'");
    }
    if (verify->parsed()) return run_verify_theorems(vt_n, vt_seed);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
