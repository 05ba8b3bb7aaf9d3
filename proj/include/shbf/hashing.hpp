#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shbf {

/// Elements are arbitrary byte strings.
using Element = std::string_view;

/// 64-bit finalizer from SplitMix64; a bijection on 64-bit values.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

/// Keyed 64-bit hash of a byte string (MurmurHash64A core with a keyed
/// SplitMix finalizer).
std::uint64_t keyed_hash(std::uint64_t key, Element data) noexcept;

/// Range reduction h % m. For m <= 2^32 the per-bucket bias is below 2^-32.
constexpr std::uint64_t reduce(std::uint64_t hash, std::uint64_t m) noexcept { return hash % m; }

/// A family of `size()` independent hash functions h_0 .. h_{size-1},
/// simulated by one keyed mixer with distinct per-function keys derived
/// from a master seed.
class HashFamily {
 public:
  HashFamily() = default;
  HashFamily(std::uint64_t seed, std::size_t count);

  std::uint64_t operator()(std::size_t i, Element e) const;
  std::uint64_t hash(std::size_t i, Element e) const { return (*this)(i, e); }

  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t size() const noexcept { return keys_.size(); }
  std::span<const std::uint64_t> keys() const noexcept { return keys_; }

  friend bool operator==(const HashFamily&, const HashFamily&) = default;

 private:
  std::uint64_t seed_ = 0;
  std::vector<std::uint64_t> keys_;
};

using HashFunction = std::function<std::uint64_t(Element)>;

struct RandomnessReport {
  std::array<double, 64> one_frequency{};
  double tolerance = 0.01;
  double worst_deviation = 0.0;
  std::size_t samples = 0;
  bool passed = false;
};

/// One-counts per output bit over a set of hash values.
struct BitCounts {
  std::array<std::uint64_t, 64> ones{};
  std::size_t samples = 0;

  BitCounts& operator+=(const BitCounts& other) noexcept {
    for (std::size_t b = 0; b < 64; ++b) ones[b] += other.ones[b];
    samples += other.samples;
    return *this;
  }
  void add(std::uint64_t value) noexcept {
    for (std::size_t b = 0; b < 64; ++b) ones[b] += (value >> b) & 1U;
    ++samples;
  }
};

RandomnessReport make_randomness_report(const BitCounts& counts, double tolerance);

/// Empirical bit-balance test: passes iff P(bit = 1) is within
/// `tolerance` of 0.5 at every output bit.
RandomnessReport randomness_test(const HashFunction& fn, std::span<const std::string> corpus,
                                 double tolerance = 0.01);

}  // namespace shbf
