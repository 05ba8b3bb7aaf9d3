#pragma once

#include <cstdint>
#include <vector>

#include "shbf/bit_store.hpp"
#include "shbf/counter_store.hpp"
#include "shbf/hashing.hpp"
#include "shbf/probe_stats.hpp"

namespace shbf {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed5eed2016ULL;

struct ShbfMConfig {
  std::uint64_t m = 0;          ///< logical bits
  unsigned k = 8;               ///< probed bits per element (even)
  unsigned max_offset = 57;     ///< offsets lie in [1, max_offset - 1]
  unsigned word_bits = 64;
  std::uint64_t seed = kDefaultSeed;

  /// Throws std::invalid_argument unless k is even, 2 <= max_offset <=
  /// word_bits - 7 and m >= k.
  void validate() const;
};

/// Shifting membership filter. Each element sets k/2 base bits h_i(e) % m
/// and their partners at + o(e), where o(e) = h_{k/2}(e) % (max_offset - 1) + 1.
/// A pair fits in one machine word, so a query costs at most k/2 reads and
/// k/2 + 1 hash computations.
class ShbfM {
 public:
  explicit ShbfM(const ShbfMConfig& config);

  void insert(Element e);
  bool contains(Element e, ProbeStats* stats = nullptr) const;

  std::uint64_t offset(Element e) const;
  /// All k positions: base_0, base_0 + o, base_1, base_1 + o, ...
  std::vector<std::uint64_t> positions(Element e) const;

  /// FPR model at the current load.
  double theoretical_fpr() const;

  const ShbfMConfig& config() const noexcept { return config_; }
  const BitStore& bits() const noexcept { return bits_; }
  const HashFamily& hashes() const noexcept { return hashes_; }
  std::uint64_t inserted() const noexcept { return inserted_; }

  bool same_state(const ShbfM& other) const {
    return bits_ == other.bits_ && inserted_ == other.inserted_ && hashes_ == other.hashes_;
  }

 private:
  friend class CShbfM;
  friend struct SerialAccess;

  ShbfMConfig config_;
  HashFamily hashes_;
  BitStore bits_;
  std::uint64_t inserted_ = 0;
};

/// Counting companion of ShbfM: a counter array C mirrors the bit array B.
/// Updates go to C first, then B is resynchronized (bit = counter >= 1).
class CShbfM {
 public:
  explicit CShbfM(const ShbfMConfig& config, unsigned counter_bits = 4);

  void insert(Element e, ProbeStats* stats = nullptr);
  /// Throws CounterUnderflow, leaving the filter untouched, if any of e's
  /// counters is already zero (e was never inserted).
  void remove(Element e, ProbeStats* stats = nullptr);
  bool contains(Element e, ProbeStats* stats = nullptr) const { return filter_.contains(e, stats); }

  const ShbfM& filter() const noexcept { return filter_; }
  const CounterStore& counters() const noexcept { return counters_; }
  const ShbfMConfig& config() const noexcept { return filter_.config(); }
  std::uint64_t inserted() const noexcept { return filter_.inserted(); }

  bool same_state(const CShbfM& other) const {
    return filter_.same_state(other.filter_) && counters_ == other.counters_;
  }

 private:
  friend struct SerialAccess;

  void charge_counter_windows(Element e, ProbeStats* stats) const;

  ShbfM filter_;
  CounterStore counters_;
};

struct GenShbfMConfig {
  std::uint64_t m = 0;
  unsigned k = 8;
  unsigned t = 1;             ///< shifted bits per group; (t + 1) must divide k
  unsigned max_offset = 57;
  unsigned word_bits = 64;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
  unsigned groups() const noexcept { return k / (t + 1); }
  /// Width of each offset's partition of [1, max_offset - 1].
  unsigned slice() const noexcept { return (max_offset - 1) / t; }
  /// Effective window: largest offset + 1.
  unsigned window() const noexcept { return t * slice() + 1; }
};

/// t-shift generalization: k / (t + 1) base hashes, each followed by t
/// shifted bits. The offset window [1, max_offset - 1] is split into t equal
/// slices and offset j hashes into slice j, so the t offsets are independent
/// and distinct.
class GenShbfM {
 public:
  explicit GenShbfM(const GenShbfMConfig& config);

  void insert(Element e);
  bool contains(Element e, ProbeStats* stats = nullptr) const;

  std::vector<std::uint64_t> offsets(Element e) const;
  std::vector<std::uint64_t> positions(Element e) const;
  double theoretical_fpr() const;

  const GenShbfMConfig& config() const noexcept { return config_; }
  const BitStore& bits() const noexcept { return bits_; }
  const HashFamily& hashes() const noexcept { return hashes_; }
  std::uint64_t inserted() const noexcept { return inserted_; }

  bool same_state(const GenShbfM& other) const {
    return bits_ == other.bits_ && inserted_ == other.inserted_ && hashes_ == other.hashes_;
  }

 private:
  friend struct SerialAccess;

  /// Mask of the base bit plus t shifted bits, relative to the base.
  std::uint64_t pattern(Element e, unsigned& span, ProbeStats* stats) const;

  GenShbfMConfig config_;
  HashFamily hashes_;
  BitStore bits_;
  std::uint64_t inserted_ = 0;
};

}  // namespace shbf
