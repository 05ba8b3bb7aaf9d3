#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shbf/probe_stats.hpp"

namespace shbf {

/// Bit array of m logical bits plus a tail pad so that shifted positions
/// h % m + offset never wrap. Bit i of word j is global index 64*j + i.
///
/// Physical storage is always 64-bit words; `word_bits` is the machine word
/// size used for access accounting (a window of len bits costs
/// ceil(len / word_bits) reads).
class BitStore {
 public:
  static constexpr unsigned kMaxWindow = 64;

  BitStore() = default;
  BitStore(std::uint64_t logical_bits, std::uint64_t pad_bits, unsigned word_bits = 64);

  std::uint64_t size() const noexcept { return logical_bits_; }
  std::uint64_t pad() const noexcept { return pad_bits_; }
  std::uint64_t capacity() const noexcept { return logical_bits_ + pad_bits_; }
  unsigned word_bits() const noexcept { return word_bits_; }

  bool test(std::uint64_t index) const;
  void set(std::uint64_t index);
  void clear(std::uint64_t index);
  void reset() noexcept;

  /// Returns bits [start, start + len) packed little-endian into the low
  /// `len` bits of the result. 1 <= len <= 64.
  std::uint64_t read_window(std::uint64_t start, unsigned len,
                            ProbeStats* stats = nullptr) const;

  /// Reads bits [pos, pos + len) the way a byte-addressed load would: the
  /// window starts at the byte holding `pos`, so it spans (pos % 8) + len
  /// bits, which must not exceed 64. Result is shifted so bit 0 is `pos`.
  std::uint64_t read_from_byte(std::uint64_t pos, unsigned len, ProbeStats* stats = nullptr) const {
    const unsigned lead = static_cast<unsigned>(pos & 7);
    return read_window(pos - lead, lead + len, stats) >> lead;
  }

  /// Access cost of one window of `len` bits.
  std::uint64_t window_cost(unsigned len) const noexcept {
    return (len + word_bits_ - 1) / word_bits_;
  }

  std::uint64_t popcount() const noexcept;
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// Rebuilds a store from its serialized words. Bits beyond capacity()
  /// must be zero.
  static BitStore from_words(std::uint64_t logical_bits, std::uint64_t pad_bits,
                             unsigned word_bits, std::vector<std::uint64_t> words);

  friend bool operator==(const BitStore&, const BitStore&) = default;

 private:
  void check_index(std::uint64_t index) const;

  std::uint64_t logical_bits_ = 0;
  std::uint64_t pad_bits_ = 0;
  unsigned word_bits_ = 64;
  std::vector<std::uint64_t> words_;
};

}  // namespace shbf
