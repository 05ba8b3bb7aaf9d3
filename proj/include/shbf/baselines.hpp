#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shbf/association.hpp"
#include "shbf/bit_store.hpp"
#include "shbf/counter_store.hpp"
#include "shbf/hashing.hpp"
#include "shbf/membership.hpp"
#include "shbf/probe_stats.hpp"

namespace shbf {

struct BfConfig {
  std::uint64_t m = 0;
  unsigned k = 8;
  unsigned word_bits = 64;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

/// Standard Bloom filter: k independent hashes, one read per probed bit.
class StandardBf {
 public:
  explicit StandardBf(const BfConfig& config);

  void insert(Element e);
  bool contains(Element e, ProbeStats* stats = nullptr) const;
  std::vector<std::uint64_t> positions(Element e) const;

  const BfConfig& config() const noexcept { return config_; }
  const BitStore& bits() const noexcept { return bits_; }
  const HashFamily& hashes() const noexcept { return hashes_; }
  std::uint64_t inserted() const noexcept { return inserted_; }

  bool same_state(const StandardBf& other) const {
    return bits_ == other.bits_ && hashes_ == other.hashes_ && inserted_ == other.inserted_;
  }

 private:
  friend class CountingBf;
  friend struct SerialAccess;

  BfConfig config_;
  HashFamily hashes_;
  BitStore bits_;
  std::uint64_t inserted_ = 0;
};

/// Counting Bloom filter: a counter per bit, deletions supported.
class CountingBf {
 public:
  explicit CountingBf(const BfConfig& config, unsigned counter_bits = 4);

  void insert(Element e);
  /// Throws CounterUnderflow, leaving the filter untouched, on a zero counter.
  void remove(Element e);
  bool contains(Element e, ProbeStats* stats = nullptr) const { return filter_.contains(e, stats); }

  const StandardBf& filter() const noexcept { return filter_; }
  const CounterStore& counters() const noexcept { return counters_; }
  const BfConfig& config() const noexcept { return filter_.config(); }

  bool same_state(const CountingBf& other) const {
    return filter_.same_state(other.filter_) && counters_ == other.counters_;
  }

 private:
  friend struct SerialAccess;

  StandardBf filter_;
  CounterStore counters_;
};

struct IbfAnswer {
  bool in_s1 = false;
  bool in_s2 = false;

  /// Clear iff exactly one filter says yes: then the element can only be in
  /// that set's exclusive part. Two yeses leave S1 - S2, S1 n S2 and S2 - S1
  /// all possible because either answer may be a false positive.
  bool is_clear() const noexcept { return in_s1 != in_s2; }
  RegionMask claimed() const noexcept;
};

/// Association baseline: one Bloom filter per set, queried independently.
/// Both filters use m1 + m2 = m bits in total.
class Ibf {
 public:
  Ibf(const BfConfig& s1_config, const BfConfig& s2_config);

  static Ibf build(std::span<const std::string> s1, std::span<const std::string> s2,
                   const BfConfig& s1_config, const BfConfig& s2_config);

  void insert(Element e, SetId set);
  IbfAnswer query(Element e, ProbeStats* stats = nullptr) const;

  const StandardBf& first() const noexcept { return first_; }
  const StandardBf& second() const noexcept { return second_; }

  bool same_state(const Ibf& other) const {
    return first_.same_state(other.first_) && second_.same_state(other.second_);
  }

 private:
  friend struct SerialAccess;

  StandardBf first_;
  StandardBf second_;
};

struct SpectralConfig {
  std::uint64_t m = 0;  ///< counters
  unsigned k = 8;
  unsigned counter_bits = 6;
  unsigned word_bits = 64;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

/// Spectral Bloom filter with minimum increase: an insertion raises only the
/// counters that hold the current minimum; a query returns that minimum.
class SpectralBf {
 public:
  explicit SpectralBf(const SpectralConfig& config);

  static SpectralBf build(std::span<const std::string> multiset, const SpectralConfig& config);

  void insert(Element e);
  std::uint32_t query(Element e, ProbeStats* stats = nullptr) const;

  const SpectralConfig& config() const noexcept { return config_; }
  const CounterStore& counters() const noexcept { return counters_; }
  const HashFamily& hashes() const noexcept { return hashes_; }

  bool same_state(const SpectralBf& other) const {
    return counters_ == other.counters_ && hashes_ == other.hashes_;
  }

 private:
  friend struct SerialAccess;

  SpectralConfig config_;
  HashFamily hashes_;
  CounterStore counters_;
};

}  // namespace shbf
