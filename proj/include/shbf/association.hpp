#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>

#include "shbf/bit_store.hpp"
#include "shbf/counter_store.hpp"
#include "shbf/hashing.hpp"
#include "shbf/membership.hpp"
#include "shbf/probe_stats.hpp"

namespace shbf {

/// The three disjoint parts of S1 u S2.
enum class Region : std::uint8_t { kS1Only = 0, kBoth = 1, kS2Only = 2 };

/// Decision of an association query. The first seven values are the
/// outcomes for elements of S1 u S2; kNotPresent only arises for elements
/// outside both sets (no region matched).
enum class Outcome : std::uint8_t {
  kS1Only = 1,          ///< e in S1 - S2
  kBoth = 2,            ///< e in S1 n S2
  kS2Only = 3,          ///< e in S2 - S1
  kS1UnsureS2 = 4,      ///< e in S1, unknown whether in S2
  kS2UnsureS1 = 5,      ///< e in S2, unknown whether in S1
  kS1OnlyOrS2Only = 6,  ///< e in exactly one of the sets
  kUnknown = 7,         ///< e somewhere in S1 u S2
  kNotPresent = 8,
};

/// Bitmask over Region values (bit r set = region r possible).
using RegionMask = std::uint8_t;

constexpr RegionMask region_bit(Region r) noexcept {
  return static_cast<RegionMask>(1U << static_cast<unsigned>(r));
}

struct AssociationAnswer {
  Outcome outcome = Outcome::kNotPresent;

  /// Outcomes 1-3 name exactly one region.
  bool is_clear() const noexcept {
    return outcome == Outcome::kS1Only || outcome == Outcome::kBoth || outcome == Outcome::kS2Only;
  }
  RegionMask claimed() const noexcept;
  bool claims(Region r) const noexcept { return (claimed() & region_bit(r)) != 0; }

  static AssociationAnswer from_matches(RegionMask matches) noexcept;
  friend bool operator==(const AssociationAnswer&, const AssociationAnswer&) = default;
};

std::string_view to_string(Outcome outcome) noexcept;

struct ShbfAConfig {
  std::uint64_t m = 0;
  unsigned k = 8;
  unsigned max_offset = 57;  ///< both offsets lie in [1, max_offset - 1]
  unsigned word_bits = 64;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
  /// (max_offset - 1) / 2, floor.
  unsigned half_window() const noexcept { return (max_offset - 1) / 2; }
  /// Largest possible o2, which is also the pad length.
  unsigned max_shift() const noexcept { return 2 * half_window(); }
};

using ElementSet = std::unordered_set<std::string>;

/// Shifting association filter over two possibly overlapping sets. Elements
/// of S1 - S2 are stored at offset 0, S1 n S2 at o1(e), S2 - S1 at o2(e),
/// with 0 < o1(e) < o2(e) < max_offset. A query reads the three candidate
/// bits per hash in one window (k reads, k + 2 hash computations).
class ShbfA {
 public:
  explicit ShbfA(const ShbfAConfig& config);

  static ShbfA build(std::span<const std::string> s1, std::span<const std::string> s2,
                     const ShbfAConfig& config);

  /// Meaningful for e in S1 u S2 only; other elements get whatever the bits say.
  AssociationAnswer query(Element e, ProbeStats* stats = nullptr) const;

  struct Offsets {
    std::uint64_t o1;
    std::uint64_t o2;
  };
  Offsets offsets(Element e) const;
  std::uint64_t offset_for(Element e, Region r) const;
  std::vector<std::uint64_t> positions(Element e, Region r) const;

  /// Region of e according to the exact tables, if e is in S1 u S2.
  std::optional<Region> region_of(std::string_view e) const;

  const ShbfAConfig& config() const noexcept { return config_; }
  const BitStore& bits() const noexcept { return bits_; }
  const HashFamily& hashes() const noexcept { return hashes_; }
  const ElementSet& s1() const noexcept { return s1_; }
  const ElementSet& s2() const noexcept { return s2_; }
  /// Distinct elements of S1 u S2.
  std::uint64_t distinct() const noexcept;

  bool same_state(const ShbfA& other) const {
    return bits_ == other.bits_ && hashes_ == other.hashes_ && s1_ == other.s1_ && s2_ == other.s2_;
  }

 private:
  friend class CShbfA;
  friend struct SerialAccess;

  void store(Element e, Region r);

  ShbfAConfig config_;
  HashFamily hashes_;
  BitStore bits_;
  ElementSet s1_;
  ElementSet s2_;
};

enum class SetId : std::uint8_t { kS1 = 1, kS2 = 2 };

/// Counting association filter. Each element keeps its k counters at the
/// offset of its current region; membership changes move it (decrement at
/// the old offset, increment at the new one) and B follows C.
class CShbfA {
 public:
  explicit CShbfA(const ShbfAConfig& config, unsigned counter_bits = 4);

  static CShbfA build(std::span<const std::string> s1, std::span<const std::string> s2,
                      const ShbfAConfig& config, unsigned counter_bits = 4);

  /// Adds e to one set; a no-op if it is already there.
  void insert(Element e, SetId set);
  /// Removes e from one set; throws std::invalid_argument if it is not there.
  void remove(Element e, SetId set);

  AssociationAnswer query(Element e, ProbeStats* stats = nullptr) const {
    return filter_.query(e, stats);
  }

  const ShbfA& filter() const noexcept { return filter_; }
  const CounterStore& counters() const noexcept { return counters_; }

 private:
  void place(Element e, Region r);
  void unplace(Element e, Region r);

  ShbfA filter_;
  CounterStore counters_;
};

}  // namespace shbf
