#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shbf/probe_stats.hpp"

namespace shbf {

/// Array of fixed-width saturating counters.
///
/// Incrementing a counter at 2^z - 1 clamps it, marks that counter stuck and
/// raises the store-wide overflow flag. Stuck counters ignore decrements, so
/// a saturated cell can only cause false positives, never false negatives.
class CounterStore {
 public:
  static constexpr unsigned kMaxCounterBits = 32;

  CounterStore() = default;
  CounterStore(std::uint64_t size, unsigned counter_bits = 4, unsigned word_bits = 64);

  std::uint64_t size() const noexcept { return counters_.size(); }
  unsigned counter_bits() const noexcept { return counter_bits_; }
  unsigned word_bits() const noexcept { return word_bits_; }
  std::uint32_t max_value() const noexcept { return max_value_; }

  std::uint32_t get(std::uint64_t index) const;
  bool stuck(std::uint64_t index) const;
  bool overflowed() const noexcept { return !stuck_.empty(); }

  /// Returns the new value.
  std::uint32_t increment(std::uint64_t index);
  /// Returns the new value. Throws CounterUnderflow on a zero counter.
  std::uint32_t decrement(std::uint64_t index);

  /// Decrements every listed counter once per occurrence. Either all
  /// decrements succeed or the store is left untouched and CounterUnderflow
  /// is thrown.
  void decrement_all(std::span<const std::uint64_t> indices);

  /// Counters [start, start + len); costs ceil(len * z / word_bits) reads.
  std::span<const std::uint32_t> read_window(std::uint64_t start, std::uint64_t len,
                                             ProbeStats* stats = nullptr) const;

  std::span<const std::uint32_t> values() const noexcept { return counters_; }
  void reset() noexcept;

  /// Counters packed at counter_bits each into little-endian 64-bit words.
  std::vector<std::uint64_t> packed_words() const;
  /// Indices of stuck counters, ascending.
  std::vector<std::uint64_t> stuck_indices() const;
  static CounterStore from_packed(std::uint64_t size, unsigned counter_bits, unsigned word_bits,
                                  std::span<const std::uint64_t> words,
                                  std::span<const std::uint64_t> stuck);

  friend bool operator==(const CounterStore&, const CounterStore&) = default;

 private:
  void check_index(std::uint64_t index) const;

  unsigned counter_bits_ = 4;
  unsigned word_bits_ = 64;
  std::uint32_t max_value_ = 15;
  std::vector<std::uint32_t> counters_;
  std::vector<bool> stuck_;  // empty until the first overflow
};

}  // namespace shbf
