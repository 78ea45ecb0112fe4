#pragma once

#include <string_view>

namespace freqfair {

inline constexpr std::string_view kToolName = "freqfair";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Frozen schema version of the JSON report document.
inline constexpr int kReportSchemaVersion = 1;

}  // namespace freqfair
