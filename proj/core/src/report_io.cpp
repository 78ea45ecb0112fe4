#include "freqfair/report_io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "freqfair/version.hpp"

namespace freqfair {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

json rational_json(const std::optional<Rational>& r) {
  if (!r) return nullptr;
  return json{{"exact", to_fraction_string(*r)}, {"approx", to_double(*r)}};
}

json diagnostic_json(const ConvergenceDiagnostic& diag) {
  return json{
      {"conclusive", diag.conclusive},
      {"converged", diag.converged},
      {"oscillation", rational_json(diag.oscillation)},
      {"checkpoints", diag.checkpoints.size()},
  };
}

json verdict_json(const IndependenceVerdict& v) {
  return json{
      {"verdict", std::string(to_string(v.verdict))},
      {"p_overall", rational_json(v.p_overall)},
      {"p_selected", rational_json(v.p_selected)},
      {"delta", rational_json(v.delta)},
      {"selected_count", v.selected_count},
      {"tolerance", rational_json(v.tolerance)},
      {"convergence_overall", diagnostic_json(v.convergence_overall)},
      {"convergence_selected", diagnostic_json(v.convergence_selected)},
  };
}

json report_json(const FairnessReport& report) {
  json cells = json::array();
  for (const auto& cell : report.cells) {
    json c = verdict_json(cell.verdict);
    c["group"] = cell.group;
    c["stratum"] = cell.stratum;
    cells.push_back(std::move(c));
  }
  return json{
      {"criterion", std::string(to_string(report.criterion))},
      {"summary", std::string(to_string(report.summary))},
      {"cells", std::move(cells)},
      {"rules", report.rule_provenance},
  };
}

json config_json(const AuditConfig& config) {
  json criteria = json::array();
  for (auto c : config.criteria) criteria.push_back(std::string(to_string(c)));
  json j{
      {"criteria", std::move(criteria)},
      {"tolerance", config.tolerance.is_auto() ? json("auto")
                                               : json(to_fraction_string(config.tolerance.value()))},
      {"min_count", config.min_count},
      {"diagnostic",
       {{"checkpoint_ratio", to_fraction_string(config.diagnostics.checkpoint_ratio)},
        {"window", config.diagnostics.window},
        {"threshold", to_fraction_string(config.diagnostics.threshold)}}},
      {"intersections", config.intersections},
      {"trajectories", config.with_trajectories},
  };
  if (config.seed) {
    j["seed"] = {{"algorithm", config.seed->algorithm}, {"value", config.seed->value}};
  } else {
    j["seed"] = nullptr;
  }
  return j;
}

struct ParsedHeader {
  std::ptrdiff_t y_hat = -1;
  std::ptrdiff_t y = -1;
  std::vector<std::pair<std::string, std::size_t>> group_columns;  // name, column
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

void AuditConfig::validate() const {
  if (criteria.empty())
    throw InputError(ErrorCode::config_invalid, "at least one criterion must be requested");
  if (min_count == 0)
    throw InputError(ErrorCode::config_invalid, "min_count must be positive");
  if (diagnostics.checkpoint_ratio <= 1)
    throw InputError(ErrorCode::config_invalid, "checkpoint ratio must exceed 1");
  if (diagnostics.window == 0)
    throw InputError(ErrorCode::config_invalid, "diagnostic window must be positive");
  if (diagnostics.threshold <= 0)
    throw InputError(ErrorCode::config_invalid, "diagnostic threshold must be positive");
}

AuditConfig config_from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(ErrorCode::io_failure, "cannot read config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError(ErrorCode::config_invalid, "config parse error: " + std::string(e.what()));
  }
  AuditConfig config;
  if (j.contains("tolerance")) {
    const auto& t = j.at("tolerance");
    if (t.is_string() && t.get<std::string>() != "auto")
      config.tolerance = Tolerance::exact(rational_from_string(t.get<std::string>()));
  }
  if (j.contains("min_count")) config.min_count = j.at("min_count").get<std::uint64_t>();
  if (j.contains("checkpoint_ratio"))
    config.diagnostics.checkpoint_ratio =
        rational_from_string(j.at("checkpoint_ratio").get<std::string>());
  if (j.contains("window")) config.diagnostics.window = j.at("window").get<std::size_t>();
  if (j.contains("threshold"))
    config.diagnostics.threshold = rational_from_string(j.at("threshold").get<std::string>());
  if (j.contains("intersections")) config.intersections = j.at("intersections").get<bool>();
  return config;
}

LoadedInput ingest_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(ErrorCode::io_failure, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ingest_csv_text(buffer.str(), path.string());
}

LoadedInput ingest_csv_text(std::string_view bytes, std::string source_name) {
  LoadedInput loaded;
  loaded.source = std::move(source_name);
  loaded.digest = digest_bytes(bytes);

  std::istringstream stream{std::string(bytes)};
  std::string line;
  if (!std::getline(stream, line) || line.empty())
    throw InputError(ErrorCode::missing_header, "empty input: a header row is required");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  ParsedHeader header;
  const auto names = split_csv_line(line);
  for (std::size_t col = 0; col < names.size(); ++col) {
    const std::string& name = names[col];
    if (name == "y_hat") {
      if (header.y_hat >= 0)
        throw InputError(ErrorCode::duplicate_group, "duplicate column 'y_hat'");
      header.y_hat = static_cast<std::ptrdiff_t>(col);
    } else if (name == "y") {
      if (header.y >= 0) throw InputError(ErrorCode::duplicate_group, "duplicate column 'y'");
      header.y = static_cast<std::ptrdiff_t>(col);
    } else {
      for (const auto& [existing, _] : header.group_columns) {
        if (existing == name)
          throw InputError(ErrorCode::duplicate_group, "duplicate group column '" + name + "'");
      }
      if (name.empty())
        throw InputError(ErrorCode::missing_header, "empty column name in header");
      header.group_columns.emplace_back(name, col);
    }
  }
  if (header.y_hat < 0)
    throw InputError(ErrorCode::missing_column, "required column 'y_hat' not found in header");
  if (header.group_columns.empty())
    throw InputError(ErrorCode::missing_column, "at least one group column is required");

  BitSequence predictions;
  BitSequence labels;
  std::vector<BitSequence> group_streams(header.group_columns.size());

  auto parse_bit = [](const std::string& cell, std::size_t row, const std::string& col) {
    if (cell == "0") return false;
    if (cell == "1") return true;
    throw InputError(ErrorCode::nonbinary_cell, "row " + std::to_string(row) + ", column '" +
                                                    col + "': value '" + cell +
                                                    "' is not 0 or 1");
  };

  std::size_t row = 0;  // data rows are 1-based; header is row 0
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && stream.eof()) break;  // trailing newline
    ++row;
    const auto fields = split_csv_line(line);
    if (fields.size() != names.size())
      throw InputError(ErrorCode::ragged_row,
                       "row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                           " fields, expected " + std::to_string(names.size()));
    predictions.push_back(
        parse_bit(fields[static_cast<std::size_t>(header.y_hat)], row, "y_hat"));
    if (header.y >= 0)
      labels.push_back(parse_bit(fields[static_cast<std::size_t>(header.y)], row, "y"));
    for (std::size_t g = 0; g < header.group_columns.size(); ++g) {
      const auto& [name, col] = header.group_columns[g];
      group_streams[g].push_back(parse_bit(fields[col], row, name));
    }
  }

  loaded.input.predictions = std::move(predictions);
  if (header.y >= 0) loaded.input.labels = std::move(labels);
  for (std::size_t g = 0; g < header.group_columns.size(); ++g)
    loaded.input.groups.add(header.group_columns[g].first, std::move(group_streams[g]));
  return loaded;
}

std::string to_csv(const AuditInput& input) {
  std::ostringstream os;
  os << "y_hat";
  if (input.labels) os << ",y";
  for (const auto& [name, _] : input.groups.groups()) os << "," << name;
  os << "\n";
  for (std::size_t i = 1; i <= input.size(); ++i) {
    os << (input.predictions.at(i) ? '1' : '0');
    if (input.labels) os << ',' << (input.labels->at(i) ? '1' : '0');
    for (const auto& [_, stream] : input.groups.groups())
      os << ',' << (stream.at(i) ? '1' : '0');
    os << "\n";
  }
  return os.str();
}

std::string digest_bytes(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string trajectories_csv(const AuditInput& input,
                             const std::vector<std::uint64_t>& checkpoints) {
  std::ostringstream os;
  os << "n,group,p_hat_overall,p_hat_selected\n";
  const auto& groups = input.groups.groups();
  const auto pred = input.predictions.values();

  // Running counts; checkpoints are increasing prefix lengths.
  std::uint64_t overall_ones = 0;
  std::vector<std::uint64_t> selected_count(groups.size(), 0);
  std::vector<std::uint64_t> selected_ones(groups.size(), 0);
  std::size_t next = 0;
  for (std::uint64_t i = 1; i <= input.size() && next < checkpoints.size(); ++i) {
    overall_ones += pred[i - 1];
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (groups[g].second.at(i)) {
        ++selected_count[g];
        selected_ones[g] += pred[i - 1];
      }
    }
    while (next < checkpoints.size() && checkpoints[next] == i) {
      for (std::size_t g = 0; g < groups.size(); ++g) {
        os << i << ',' << groups[g].first << ',' << format_double(double(overall_ones) / double(i))
           << ',';
        if (selected_count[g] > 0)
          os << format_double(double(selected_ones[g]) / double(selected_count[g]));
        os << "\n";
      }
      ++next;
    }
  }
  return os.str();
}

ReportDocument run_audit(const AuditConfig& config, const LoadedInput& loaded) {
  config.validate();
  const AuditOptions options = config.options();

  ReportDocument doc;
  doc.schema_version = kReportSchemaVersion;
  doc.tool_name = std::string(kToolName);
  doc.tool_version = std::string(kToolVersion);
  doc.input_source = loaded.source;
  doc.input_digest = loaded.digest;
  doc.config = config;

  for (AuditCriterion criterion : config.criteria) {
    switch (criterion) {
      case AuditCriterion::independence:
        doc.reports.push_back(audit_independence(loaded.input, options));
        break;
      case AuditCriterion::separation:
        doc.reports.push_back(audit_separation(loaded.input, options));
        break;
      case AuditCriterion::sufficiency:
        doc.reports.push_back(audit_sufficiency(loaded.input, options));
        break;
    }
  }

  if (config.with_trajectories) {
    const auto schedule =
        checkpoint_schedule(loaded.input.size(), config.diagnostics.checkpoint_ratio);
    doc.trajectories = trajectories_csv(loaded.input, schedule);
  }
  return doc;
}

std::string report_to_json(const ReportDocument& doc) {
  json reports = json::array();
  for (const auto& r : doc.reports) reports.push_back(report_json(r));
  json j{
      {"schema_version", doc.schema_version},
      {"tool", {{"name", doc.tool_name}, {"version", doc.tool_version}}},
      {"input", {{"source", doc.input_source}, {"digest", doc.input_digest}}},
      {"config", config_json(doc.config)},
      {"reports", std::move(reports)},
      {"trajectories", doc.trajectories ? json(*doc.trajectories) : json(nullptr)},
  };
  return j.dump(2) + "\n";
}

int exit_code_for(const ReportDocument& doc) {
  bool any_dependent = false;
  bool all_fair = !doc.reports.empty();
  for (const auto& report : doc.reports) {
    if (report.summary != SummaryVerdict::fair) all_fair = false;
    for (const auto& cell : report.cells)
      if (cell.verdict.verdict == Verdict::dependent) any_dependent = true;
  }
  if (all_fair) return 0;
  if (any_dependent) return 1;
  return 2;
}

}  // namespace freqfair
