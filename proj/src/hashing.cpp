#include "shbf/hashing.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace shbf {

namespace {

constexpr std::uint64_t kMul = 0xc6a4a7935bd1e995ULL;
constexpr int kShift = 47;

std::uint64_t load_le64(const unsigned char* p) noexcept {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

std::uint64_t keyed_hash(std::uint64_t key, Element data) noexcept {
  const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
  const std::size_t len = data.size();
  std::uint64_t h = key ^ (len * kMul);

  const std::size_t blocks = len / 8;
  for (std::size_t i = 0; i < blocks; ++i) {
    std::uint64_t k = load_le64(bytes + 8 * i);
    k *= kMul;
    k ^= k >> kShift;
    k *= kMul;
    h ^= k;
    h *= kMul;
  }

  const unsigned char* tail = bytes + 8 * blocks;
  switch (len & 7) {
    case 7: h ^= std::uint64_t{tail[6]} << 48; [[fallthrough]];
    case 6: h ^= std::uint64_t{tail[5]} << 40; [[fallthrough]];
    case 5: h ^= std::uint64_t{tail[4]} << 32; [[fallthrough]];
    case 4: h ^= std::uint64_t{tail[3]} << 24; [[fallthrough]];
    case 3: h ^= std::uint64_t{tail[2]} << 16; [[fallthrough]];
    case 2: h ^= std::uint64_t{tail[1]} << 8; [[fallthrough]];
    case 1:
      h ^= std::uint64_t{tail[0]};
      h *= kMul;
  }

  h ^= h >> kShift;
  h *= kMul;
  h ^= h >> kShift;
  return mix64(h ^ mix64(key));
}

HashFamily::HashFamily(std::uint64_t seed, std::size_t count) : seed_(seed) {
  if (count == 0) throw std::invalid_argument("hash family needs at least one function");
  keys_.reserve(count);
  // SplitMix64 stream: mix64 is a bijection, so distinct states give distinct keys.
  for (std::size_t i = 0; i < count; ++i) {
    keys_.push_back(mix64(seed + (i + 1) * 0x9e3779b97f4a7c15ULL));
  }
}

std::uint64_t HashFamily::operator()(std::size_t i, Element e) const {
  if (i >= keys_.size()) {
    throw std::out_of_range("hash function index " + std::to_string(i) + " outside family of " +
                            std::to_string(keys_.size()));
  }
  return keyed_hash(keys_[i], e);
}

RandomnessReport make_randomness_report(const BitCounts& counts, double tolerance) {
  if (counts.samples == 0) throw std::invalid_argument("randomness test needs a non-empty corpus");
  RandomnessReport report;
  report.tolerance = tolerance;
  report.samples = counts.samples;
  for (std::size_t b = 0; b < 64; ++b) {
    const double freq = static_cast<double>(counts.ones[b]) / static_cast<double>(counts.samples);
    report.one_frequency[b] = freq;
    report.worst_deviation = std::max(report.worst_deviation, std::abs(freq - 0.5));
  }
  report.passed = report.worst_deviation <= tolerance;
  return report;
}

RandomnessReport randomness_test(const HashFunction& fn, std::span<const std::string> corpus,
                                 double tolerance) {
  if (corpus.empty()) throw std::invalid_argument("randomness test needs a non-empty corpus");
  BitCounts counts;
  for (const auto& element : corpus) counts.add(fn(element));
  return make_randomness_report(counts, tolerance);
}

}  // namespace shbf
