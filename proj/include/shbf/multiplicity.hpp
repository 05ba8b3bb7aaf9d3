#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "shbf/bit_store.hpp"
#include "shbf/counter_store.hpp"
#include "shbf/hashing.hpp"
#include "shbf/membership.hpp"
#include "shbf/probe_stats.hpp"

namespace shbf {

struct ShbfXConfig {
  std::uint64_t m = 0;
  unsigned k = 8;
  unsigned max_count = 57;  ///< c: largest representable multiplicity
  unsigned word_bits = 64;
  unsigned counter_bits = 4;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

/// Element -> exact multiplicity (separate chaining).
using CountTable = std::unordered_map<std::string, std::uint32_t>;

/// Shifting multiplicity filter. An element with multiplicity c(e) sets only
/// the k bits h_i(e) % m + c(e) - 1. A query ANDs the k windows of c bits
/// and reports the largest candidate, so it never under-reports.
///
/// Two update modes are offered. The `*_lossy` operations read the current
/// multiplicity back from B; a false-positive read moves the wrong bits and
/// can create false negatives. `insert` / `remove` take the multiplicity
/// from the exact count table and never introduce false negatives. The
/// lossy operations do not maintain the table and mark it stale.
class ShbfX {
 public:
  explicit ShbfX(const ShbfXConfig& config);

  /// Throws CapacityExceeded if any element occurs more than max_count times.
  static ShbfX build(std::span<const std::string> multiset, const ShbfXConfig& config);
  /// Same as build over a multiset with the given counts. Throws
  /// CapacityExceeded for counts above max_count and invalid_argument for 0.
  static ShbfX from_counts(const CountTable& counts, const ShbfXConfig& config);

  /// Largest candidate multiplicity, 0 if none.
  std::uint32_t query(Element e, ProbeStats* stats = nullptr) const;
  /// All j in [1, c] whose k shifted bits are set, ascending.
  std::vector<std::uint32_t> candidates(Element e, ProbeStats* stats = nullptr) const;

  void insert_lossy(Element e);
  void remove_lossy(Element e);

  void insert(Element e);
  /// Throws std::invalid_argument if e is absent.
  void remove(Element e);

  /// Exact multiplicity from the count table.
  std::uint32_t count(std::string_view e) const;
  bool counts_valid() const noexcept { return counts_valid_; }
  const CountTable& counts() const noexcept { return counts_; }

  std::vector<std::uint64_t> positions(Element e, std::uint32_t multiplicity) const;
  double f0() const;

  const ShbfXConfig& config() const noexcept { return config_; }
  const BitStore& bits() const noexcept { return bits_; }
  const CounterStore& counters() const noexcept { return counters_; }
  const HashFamily& hashes() const noexcept { return hashes_; }
  std::uint64_t distinct() const noexcept { return distinct_; }

  bool same_state(const ShbfX& other) const {
    return bits_ == other.bits_ && counters_ == other.counters_ && hashes_ == other.hashes_ &&
           distinct_ == other.distinct_ && counts_ == other.counts_ &&
           counts_valid_ == other.counts_valid_;
  }

 private:
  friend struct SerialAccess;

  /// Candidate mask, one bit per offset, split into 64-bit chunks.
  std::vector<std::uint64_t> candidate_mask(Element e, ProbeStats* stats) const;
  void place(Element e, std::uint32_t multiplicity);
  void unplace(Element e, std::uint32_t multiplicity);
  void move(Element e, std::uint32_t from, std::uint32_t to);
  void require_counts() const;

  ShbfXConfig config_;
  HashFamily hashes_;
  BitStore bits_;
  CounterStore counters_;
  CountTable counts_;
  bool counts_valid_ = true;
  std::uint64_t distinct_ = 0;
};

}  // namespace shbf
