#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "freqfair/errors.hpp"

namespace freqfair {

/// Finite prefix of a binary stream. Indexing is 1-based throughout the
/// library so that periodic and explicit index rules read the same way as
/// the usual worked examples (index 1 is the first element).
class BitSequence {
 public:
  BitSequence() = default;

  explicit BitSequence(std::vector<std::uint8_t> values) : values_(std::move(values)) {
    for (std::uint8_t v : values_) {
      if (v > 1) throw InputError(ErrorCode::invalid_bit_value, "sequence element must be 0 or 1");
    }
  }

  BitSequence(std::initializer_list<int> bits) {
    values_.reserve(bits.size());
    for (int b : bits) push_back_checked(b);
  }

  /// Builds from a string of '0'/'1' characters, e.g. "10110".
  static BitSequence from_bits(std::string_view bits) {
    BitSequence seq;
    seq.values_.reserve(bits.size());
    for (char c : bits) {
      if (c != '0' && c != '1')
        throw InputError(ErrorCode::invalid_bit_value, "bit string may contain only '0' and '1'");
      seq.values_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return seq;
  }

  static BitSequence constant(std::size_t n, bool value) {
    BitSequence seq;
    seq.values_.assign(n, value ? 1 : 0);
    return seq;
  }

  void push_back(bool value) { values_.push_back(value ? 1 : 0); }

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  /// 1-based access; index must be in [1, size()].
  bool at(std::size_t index1) const {
    if (index1 == 0 || index1 > values_.size())
      throw std::out_of_range("BitSequence index out of range");
    return values_[index1 - 1] != 0;
  }

  std::span<const std::uint8_t> values() const { return values_; }

  std::uint64_t ones() const {
    std::uint64_t count = 0;
    for (std::uint8_t v : values_) count += v;
    return count;
  }

  friend bool operator==(const BitSequence&, const BitSequence&) = default;

 private:
  void push_back_checked(int b) {
    if (b != 0 && b != 1)
      throw InputError(ErrorCode::invalid_bit_value, "sequence element must be 0 or 1");
    values_.push_back(static_cast<std::uint8_t>(b));
  }

  std::vector<std::uint8_t> values_;
};

/// Pointwise AND of two equal-length sequences (set intersection of the
/// indicated subsets of indices).
inline BitSequence bit_and(const BitSequence& a, const BitSequence& b) {
  if (a.size() != b.size())
    throw InputError(ErrorCode::length_mismatch, "bit_and requires equal lengths");
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.values()[i] & b.values()[i];
  return BitSequence(std::move(out));
}

}  // namespace freqfair
