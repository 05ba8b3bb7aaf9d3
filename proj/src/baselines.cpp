#include "shbf/baselines.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace shbf {

void BfConfig::validate() const {
  if (m == 0) throw std::invalid_argument("filter size must be positive");
  if (k == 0) throw std::invalid_argument("k must be positive");
}

StandardBf::StandardBf(const BfConfig& config)
    : config_((config.validate(), config)),
      hashes_(config.seed, config.k),
      bits_(config.m, 0, config.word_bits) {}

std::vector<std::uint64_t> StandardBf::positions(Element e) const {
  std::vector<std::uint64_t> out(config_.k);
  for (unsigned i = 0; i < config_.k; ++i) out[i] = reduce(hashes_(i, e), config_.m);
  return out;
}

void StandardBf::insert(Element e) {
  for (unsigned i = 0; i < config_.k; ++i) bits_.set(reduce(hashes_(i, e), config_.m));
  ++inserted_;
}

bool StandardBf::contains(Element e, ProbeStats* stats) const {
  for (unsigned i = 0; i < config_.k; ++i) {
    count_hash(stats);
    if (bits_.read_window(reduce(hashes_(i, e), config_.m), 1, stats) == 0) return false;
  }
  return true;
}

CountingBf::CountingBf(const BfConfig& config, unsigned counter_bits)
    : filter_(config), counters_(config.m, counter_bits, config.word_bits) {}

void CountingBf::insert(Element e) {
  for (auto pos : filter_.positions(e)) {
    counters_.increment(pos);
    filter_.bits_.set(pos);
  }
  ++filter_.inserted_;
}

void CountingBf::remove(Element e) {
  const auto pos = filter_.positions(e);
  counters_.decrement_all(pos);
  for (auto p : pos) {
    if (counters_.get(p) == 0) filter_.bits_.clear(p);
  }
  if (filter_.inserted_ > 0) --filter_.inserted_;
}

RegionMask IbfAnswer::claimed() const noexcept {
  if (in_s1 && !in_s2) return region_bit(Region::kS1Only);
  if (in_s2 && !in_s1) return region_bit(Region::kS2Only);
  if (in_s1 && in_s2) {
    return region_bit(Region::kS1Only) | region_bit(Region::kBoth) | region_bit(Region::kS2Only);
  }
  return 0;
}

Ibf::Ibf(const BfConfig& s1_config, const BfConfig& s2_config)
    : first_(s1_config), second_(s2_config) {
  if (s1_config.seed == s2_config.seed) {
    throw std::invalid_argument("the two filters need distinct seeds");
  }
}

Ibf Ibf::build(std::span<const std::string> s1, std::span<const std::string> s2,
               const BfConfig& s1_config, const BfConfig& s2_config) {
  Ibf out(s1_config, s2_config);
  for (const auto& e : s1) out.first_.insert(e);
  for (const auto& e : s2) out.second_.insert(e);
  return out;
}

void Ibf::insert(Element e, SetId set) {
  (set == SetId::kS1 ? first_ : second_).insert(e);
}

IbfAnswer Ibf::query(Element e, ProbeStats* stats) const {
  return IbfAnswer{first_.contains(e, stats), second_.contains(e, stats)};
}

void SpectralConfig::validate() const {
  if (m == 0) throw std::invalid_argument("filter size must be positive");
  if (k == 0) throw std::invalid_argument("k must be positive");
}

SpectralBf::SpectralBf(const SpectralConfig& config)
    : config_((config.validate(), config)),
      hashes_(config.seed, config.k),
      counters_(config.m, config.counter_bits, config.word_bits) {}

SpectralBf SpectralBf::build(std::span<const std::string> multiset, const SpectralConfig& config) {
  SpectralBf out(config);
  for (const auto& e : multiset) out.insert(e);
  return out;
}

void SpectralBf::insert(Element e) {
  std::vector<std::uint64_t> cells(config_.k);
  std::uint32_t low = std::numeric_limits<std::uint32_t>::max();
  for (unsigned i = 0; i < config_.k; ++i) {
    cells[i] = reduce(hashes_(i, e), config_.m);
    low = std::min(low, counters_.get(cells[i]));
  }
  // Repeated cells are raised once.
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  for (auto c : cells) {
    if (counters_.get(c) == low) counters_.increment(c);
  }
}

std::uint32_t SpectralBf::query(Element e, ProbeStats* stats) const {
  std::uint32_t low = std::numeric_limits<std::uint32_t>::max();
  for (unsigned i = 0; i < config_.k; ++i) {
    count_hash(stats);
    low = std::min(low, counters_.read_window(reduce(hashes_(i, e), config_.m), 1, stats)[0]);
  }
  return low;
}

}  // namespace shbf
