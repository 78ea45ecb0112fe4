#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace freqfair {

// Machine-readable error codes. Every InputError carries one of these in
// addition to the human-readable message.
enum class ErrorCode {
  length_mismatch,
  side_stream_too_short,
  arity_violation,
  invalid_bit_value,
  invalid_probability,
  empty_group_family,
  duplicate_group,
  labels_required,
  missing_header,
  missing_column,
  nonbinary_cell,
  ragged_row,
  config_invalid,
  unknown_algorithm,
  io_failure,
};

std::string_view to_string(ErrorCode code);

class InputError : public std::runtime_error {
 public:
  InputError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::length_mismatch: return "E_LENGTH_MISMATCH";
    case ErrorCode::side_stream_too_short: return "E_SIDE_STREAM_TOO_SHORT";
    case ErrorCode::arity_violation: return "E_ARITY_VIOLATION";
    case ErrorCode::invalid_bit_value: return "E_INVALID_BIT_VALUE";
    case ErrorCode::invalid_probability: return "E_INVALID_PROBABILITY";
    case ErrorCode::empty_group_family: return "E_EMPTY_GROUP_FAMILY";
    case ErrorCode::duplicate_group: return "E_DUPLICATE_GROUP";
    case ErrorCode::labels_required: return "E_LABELS_REQUIRED";
    case ErrorCode::missing_header: return "E_MISSING_HEADER";
    case ErrorCode::missing_column: return "E_MISSING_COLUMN";
    case ErrorCode::nonbinary_cell: return "E_NONBINARY_CELL";
    case ErrorCode::ragged_row: return "E_RAGGED_ROW";
    case ErrorCode::config_invalid: return "E_CONFIG_INVALID";
    case ErrorCode::unknown_algorithm: return "E_UNKNOWN_ALGORITHM";
    case ErrorCode::io_failure: return "E_IO_FAILURE";
  }
  return "E_UNKNOWN";
}

}  // namespace freqfair
