#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "freqfair/fairness.hpp"
#include "freqfair/generators.hpp"

namespace freqfair {

/// Audit run configuration, echoed verbatim into the report document.
struct AuditConfig {
  std::vector<AuditCriterion> criteria;
  Tolerance tolerance = Tolerance::automatic();
  std::uint64_t min_count = kDefaultMinCount;
  DiagnosticParams diagnostics;
  bool intersections = false;
  std::optional<Seed> seed;  // recorded for demo-produced inputs
  bool with_trajectories = false;

  /// Throws on an empty criterion set or inconsistent parameters.
  void validate() const;

  AuditOptions options() const {
    return AuditOptions{tolerance, min_count, diagnostics, intersections};
  }
};

/// Parses a JSON config file (the FREQFAIR_CONFIG env var points at one).
/// Recognized keys: tolerance, min_count, checkpoint_ratio, window,
/// threshold, intersections.
AuditConfig config_from_json_file(const std::filesystem::path& path);

struct LoadedInput {
  AuditInput input;
  std::string source;  // path or label
  std::string digest;  // fnv1a64 over the ingested bytes
};

/// CSV schema: header row with a `y_hat` column, an optional `y` column and
/// one or more group columns; every cell exactly `0` or `1`; row order is
/// individual order. Errors carry row/column locations.
LoadedInput ingest_csv(const std::filesystem::path& path);
LoadedInput ingest_csv_text(std::string_view bytes, std::string source_name);

/// Canonical CSV form of an input; ingest_csv_text(to_csv(x)) == x.
std::string to_csv(const AuditInput& input);

/// FNV-1a 64-bit digest, rendered as "fnv1a64:<16 hex digits>".
std::string digest_bytes(std::string_view bytes);

/// One row per (checkpoint, group): running overall frequency of the
/// predictions and the frequency inside the group up to that prefix.
std::string trajectories_csv(const AuditInput& input,
                             const std::vector<std::uint64_t>& checkpoints);

struct ReportDocument {
  int schema_version = 0;
  std::string tool_name;
  std::string tool_version;
  std::string input_source;
  std::string input_digest;
  AuditConfig config;
  std::vector<FairnessReport> reports;
  std::optional<std::string> trajectories;  // embedded CSV when requested
};

/// Runs every configured criterion. Deterministic: identical input, config
/// and tool version produce byte-identical JSON.
ReportDocument run_audit(const AuditConfig& config, const LoadedInput& loaded);

std::string report_to_json(const ReportDocument& doc);

/// Exit code contract: 0 all requested summaries fair, 1 any dependent
/// cell, 2 otherwise (inconclusive results), 3 reserved for input/config
/// errors.
int exit_code_for(const ReportDocument& doc);

}  // namespace freqfair
