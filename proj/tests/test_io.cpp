#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "freqfair/report_io.hpp"

using namespace freqfair;

namespace {

LoadedInput load(const std::string& text) { return ingest_csv_text(text, "test"); }

AuditInput random_input(std::mt19937_64& rng, bool with_labels, std::size_t max_n = 400) {
  const std::size_t n = 1 + rng() % max_n;
  AuditInput input;
  for (std::size_t i = 0; i < n; ++i) input.predictions.push_back(rng() & 1);
  if (with_labels) {
    BitSequence labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(rng() & 1);
    input.labels = std::move(labels);
  }
  const int groups = 1 + static_cast<int>(rng() % 3);
  for (int g = 0; g < groups; ++g) {
    BitSequence stream;
    for (std::size_t i = 0; i < n; ++i) stream.push_back(rng() & 1);
    input.groups.add("g" + std::to_string(g), stream);
  }
  return input;
}

}  // namespace

TEST_CASE("a small file parses into the expected streams") {
  const auto loaded = load("y_hat,y,g\n1,1,0\n0,0,1\n1,1,1\n");
  CHECK(loaded.input.predictions == BitSequence{1, 0, 1});
  CHECK(*loaded.input.labels == BitSequence{1, 0, 1});
  REQUIRE(loaded.input.groups.size() == 1);
  CHECK(loaded.input.groups.groups()[0].first == "g");
  CHECK(loaded.input.groups.groups()[0].second == BitSequence{0, 1, 1});
  CHECK(loaded.digest.rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("non-binary cells are reported with their location") {
  const std::string text =
      "y_hat,g\n1,0\n0,0\n1,1\n0,0\n1,1\n0,0\n2,1\n0,0\n";
  try {
    load(text);
    FAIL("expected an ingest error");
  } catch (const InputError& e) {
    CHECK(e.code() == ErrorCode::nonbinary_cell);
    CHECK(std::string(e.what()).find("row 7") != std::string::npos);
    CHECK(std::string(e.what()).find("y_hat") != std::string::npos);
  }
}

TEST_CASE("header problems are rejected") {
  CHECK_THROWS_AS(load(""), InputError);
  CHECK_THROWS_AS(load("y,g\n1,0\n"), InputError);          // y_hat missing
  CHECK_THROWS_AS(load("y_hat,y\n1,0\n"), InputError);      // no group columns
  CHECK_THROWS_AS(load("y_hat,g,g\n1,0,1\n"), InputError);  // duplicate group
}

TEST_CASE("ragged rows are rejected with their row number") {
  try {
    load("y_hat,g\n1,0\n1\n");
    FAIL("expected an ingest error");
  } catch (const InputError& e) {
    CHECK(e.code() == ErrorCode::ragged_row);
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
}

TEST_CASE("label-conditioned criteria require the y column up front") {
  const auto loaded = load("y_hat,g\n1,0\n0,1\n");
  AuditConfig config;
  config.criteria = {AuditCriterion::separation};
  CHECK_THROWS_AS(run_audit(config, loaded), InputError);
}

TEST_CASE("an empty criterion set is a config error") {
  AuditConfig config;
  CHECK_THROWS_AS(config.validate(), InputError);
}

TEST_CASE("csv round trips exactly") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    const AuditInput input = random_input(rng, trial % 2 == 0);
    const std::string csv = to_csv(input);
    const auto loaded = ingest_csv_text(csv, "roundtrip");
    CHECK(loaded.input.predictions == input.predictions);
    CHECK(loaded.input.labels == input.labels);
    REQUIRE(loaded.input.groups.size() == input.groups.size());
    for (std::size_t g = 0; g < input.groups.size(); ++g) {
      CHECK(loaded.input.groups.groups()[g].first == input.groups.groups()[g].first);
      CHECK(loaded.input.groups.groups()[g].second == input.groups.groups()[g].second);
    }
  }
}

TEST_CASE("reports are byte-identical across runs") {
  std::mt19937_64 rng(314);
  AuditConfig config;
  config.criteria = {AuditCriterion::independence, AuditCriterion::separation,
                     AuditCriterion::sufficiency};
  for (int trial = 0; trial < 50; ++trial) {
    LoadedInput loaded;
    loaded.input = random_input(rng, true);
    loaded.source = "mem";
    loaded.digest = digest_bytes(to_csv(loaded.input));
    const std::string a = report_to_json(run_audit(config, loaded));
    const std::string b = report_to_json(run_audit(config, loaded));
    CHECK(a == b);
  }
}

TEST_CASE("the digest is stable and content-sensitive") {
  CHECK(digest_bytes("abc") == digest_bytes("abc"));
  CHECK(digest_bytes("abc") != digest_bytes("abd"));
  // FNV-1a 64 reference value for "abc".
  CHECK(digest_bytes("abc") == "fnv1a64:e71fa2190541574b");
}

TEST_CASE("trajectories walk the running frequencies") {
  AuditInput input;
  input.predictions = BitSequence::constant(64, true);
  input.groups.add("g", BitSequence::constant(64, true));
  const auto checkpoints = checkpoint_schedule(64, Rational(2));
  const std::string csv = trajectories_csv(input, checkpoints);

  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,group,p_hat_overall,p_hat_selected");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.find(",g,1,1") != std::string::npos);
    ++rows;
  }
  CHECK(rows == checkpoints.size());
}

TEST_CASE("trajectories of the alternating stream hover at one half") {
  AuditInput input;
  for (std::size_t i = 1; i <= 4096; ++i) input.predictions.push_back(i % 2 == 1);
  input.groups.add("g", BitSequence::constant(4096, true));
  const auto checkpoints = checkpoint_schedule(4096, Rational(2));
  const std::string csv = trajectories_csv(input, checkpoints);

  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  std::getline(lines, line);  // checkpoint 1 has p_hat = 1
  while (std::getline(lines, line)) {
    const auto first_comma = line.find(',');
    const auto second_comma = line.find(',', first_comma + 1);
    const auto third_comma = line.find(',', second_comma + 1);
    const double overall =
        std::stod(line.substr(second_comma + 1, third_comma - second_comma - 1));
    CHECK(overall == doctest::Approx(0.5).epsilon(0.5));  // in [0.25, 0.75]
  }
}

TEST_CASE("trajectories expose oscillating frequencies") {
  // Predictions indicate {i : floor(log2 i) even}; the running frequency
  // swings between bands forever, and the emitted rows show it.
  const std::size_t n = 1 << 16;
  AuditInput input;
  for (std::size_t i = 1; i <= n; ++i) {
    unsigned level = 0;
    for (std::size_t v = i; v > 1; v >>= 1) ++level;
    input.predictions.push_back(level % 2 == 0);
  }
  input.groups.add("g", BitSequence::constant(n, true));
  const std::string csv = trajectories_csv(input, checkpoint_schedule(n, Rational(2)));

  double lo = 1.0, hi = 0.0;
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  std::getline(lines, line);  // skip the n=1 row
  while (std::getline(lines, line)) {
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    const auto c = line.find(',', b + 1);
    const double overall = std::stod(line.substr(b + 1, c - b - 1));
    lo = std::min(lo, overall);
    hi = std::max(hi, overall);
  }
  CHECK(hi - lo > 0.2);
}

TEST_CASE("undefined selected frequencies leave the field empty") {
  AuditInput input;
  input.predictions = BitSequence{1, 0, 1, 0};
  input.groups.add("empty", BitSequence::constant(4, false));
  const std::string csv = trajectories_csv(input, {2, 4});
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  CHECK(line == "2,empty,0.5,");
}

TEST_CASE("run_audit embeds trajectories only when asked") {
  LoadedInput loaded = load("y_hat,g\n1,1\n0,1\n1,0\n0,0\n");
  AuditConfig config;
  config.criteria = {AuditCriterion::independence};
  CHECK(!run_audit(config, loaded).trajectories.has_value());
  config.with_trajectories = true;
  const auto doc = run_audit(config, loaded);
  REQUIRE(doc.trajectories.has_value());
  CHECK(doc.trajectories->rfind("n,group,", 0) == 0);
}

TEST_CASE("exit codes follow the fair/dependent/inconclusive contract") {
  auto doc_with = [](SummaryVerdict summary, Verdict cell) {
    ReportDocument doc;
    FairnessReport report;
    report.summary = summary;
    AuditCell c;
    c.verdict.verdict = cell;
    report.cells.push_back(c);
    doc.reports.push_back(report);
    return doc;
  };
  CHECK(exit_code_for(doc_with(SummaryVerdict::fair, Verdict::independent)) == 0);
  CHECK(exit_code_for(doc_with(SummaryVerdict::unfair, Verdict::dependent)) == 1);
  CHECK(exit_code_for(doc_with(SummaryVerdict::inconclusive, Verdict::inconclusive)) == 2);
}

TEST_CASE("config files supply defaults") {
  const std::string path = "freqfair_test_config.json";
  {
    std::ofstream out(path);
    out << R"({"tolerance": "1/50", "min_count": 10, "window": 3,
               "checkpoint_ratio": "3/2", "threshold": "0.02", "intersections": true})";
  }
  const AuditConfig config = config_from_json_file(path);
  CHECK(!config.tolerance.is_auto());
  CHECK(config.tolerance.value() == Rational(1, 50));
  CHECK(config.min_count == 10);
  CHECK(config.diagnostics.window == 3);
  CHECK(config.diagnostics.checkpoint_ratio == Rational(3, 2));
  CHECK(config.diagnostics.threshold == Rational(1, 50));
  CHECK(config.intersections);
  std::remove(path.c_str());

  CHECK_THROWS_AS(config_from_json_file("does_not_exist.json"), InputError);
}

TEST_CASE("report document carries schema, version and digest") {
  LoadedInput loaded = load("y_hat,g\n1,1\n0,0\n");
  AuditConfig config;
  config.criteria = {AuditCriterion::independence};
  const auto doc = run_audit(config, loaded);
  CHECK(doc.schema_version == 1);
  CHECK(doc.tool_name == "freqfair");
  CHECK(doc.input_digest == loaded.digest);
  const std::string json = report_to_json(doc);
  CHECK(json.find("\"schema_version\": 1") != std::string::npos);
  CHECK(json.find("fnv1a64:") != std::string::npos);
}
