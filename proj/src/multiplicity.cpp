#include "shbf/multiplicity.hpp"

#include <bit>
#include <stdexcept>

#include "shbf/errors.hpp"
#include "shbf/theory.hpp"

namespace shbf {

void ShbfXConfig::validate() const {
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (max_count == 0) throw std::invalid_argument("max count must be positive");
  if (m == 0) throw std::invalid_argument("m must be positive");
  if (word_bits != 32 && word_bits != 64) throw std::invalid_argument("word size must be 32 or 64");
}

ShbfX::ShbfX(const ShbfXConfig& config)
    : config_((config.validate(), config)),
      hashes_(config.seed, config.k),
      bits_(config.m, config.max_count - 1, config.word_bits),
      counters_(config.m + config.max_count - 1, config.counter_bits, config.word_bits) {}

ShbfX ShbfX::build(std::span<const std::string> multiset, const ShbfXConfig& config) {
  ShbfX filter(config);
  for (const auto& e : multiset) {
    auto& c = filter.counts_[e];
    if (c == config.max_count) {
      throw CapacityExceeded("element occurs more than " + std::to_string(config.max_count) +
                             " times");
    }
    ++c;
  }
  for (const auto& [e, c] : filter.counts_) filter.place(e, c);
  filter.distinct_ = filter.counts_.size();
  return filter;
}

ShbfX ShbfX::from_counts(const CountTable& counts, const ShbfXConfig& config) {
  ShbfX filter(config);
  for (const auto& [e, c] : counts) {
    if (c == 0) throw std::invalid_argument("element count must be positive");
    if (c > config.max_count) {
      throw CapacityExceeded("element occurs more than " + std::to_string(config.max_count) +
                             " times");
    }
  }
  filter.counts_ = counts;
  for (const auto& [e, c] : filter.counts_) filter.place(e, c);
  filter.distinct_ = filter.counts_.size();
  return filter;
}

std::vector<std::uint64_t> ShbfX::positions(Element e, std::uint32_t multiplicity) const {
  std::vector<std::uint64_t> out;
  out.reserve(config_.k);
  for (unsigned i = 0; i < config_.k; ++i) {
    out.push_back(reduce(hashes_(i, e), config_.m) + multiplicity - 1);
  }
  return out;
}

std::vector<std::uint64_t> ShbfX::candidate_mask(Element e, ProbeStats* stats) const {
  const unsigned c = config_.max_count;
  const std::size_t chunks = (c + 63) / 64;
  std::vector<std::uint64_t> mask(chunks, ~std::uint64_t{0});
  if (c % 64 != 0) mask.back() = (std::uint64_t{1} << (c % 64)) - 1;

  for (unsigned i = 0; i < config_.k; ++i) {
    const auto base = reduce(hashes_(i, e), config_.m);
    count_hash(stats);
    bool any = false;
    for (std::size_t chunk = 0; chunk < chunks; ++chunk) {
      const unsigned len = chunk + 1 == chunks ? c - 64 * static_cast<unsigned>(chunk) : 64;
      mask[chunk] &= bits_.read_window(base + 64 * chunk, len, stats);
      any = any || mask[chunk] != 0;
    }
    if (!any) break;
  }
  return mask;
}

std::uint32_t ShbfX::query(Element e, ProbeStats* stats) const {
  const auto mask = candidate_mask(e, stats);
  for (std::size_t chunk = mask.size(); chunk-- > 0;) {
    if (mask[chunk] != 0) {
      return static_cast<std::uint32_t>(64 * chunk + std::bit_width(mask[chunk]));
    }
  }
  return 0;
}

std::vector<std::uint32_t> ShbfX::candidates(Element e, ProbeStats* stats) const {
  const auto mask = candidate_mask(e, stats);
  std::vector<std::uint32_t> out;
  for (std::size_t chunk = 0; chunk < mask.size(); ++chunk) {
    for (auto bits = mask[chunk]; bits != 0; bits &= bits - 1) {
      out.push_back(static_cast<std::uint32_t>(64 * chunk + std::countr_zero(bits) + 1));
    }
  }
  return out;
}

void ShbfX::place(Element e, std::uint32_t multiplicity) {
  for (auto pos : positions(e, multiplicity)) {
    counters_.increment(pos);
    bits_.set(pos);
  }
}

void ShbfX::unplace(Element e, std::uint32_t multiplicity) {
  const auto pos = positions(e, multiplicity);
  counters_.decrement_all(pos);
  for (auto p : pos) {
    if (counters_.get(p) == 0) bits_.clear(p);
  }
}

void ShbfX::move(Element e, std::uint32_t from, std::uint32_t to) {
  if (from > 0) unplace(e, from);
  if (to > 0) place(e, to);
  if (from == 0 && to > 0) ++distinct_;
  if (from > 0 && to == 0 && distinct_ > 0) --distinct_;
}

void ShbfX::insert_lossy(Element e) {
  const auto z = query(e);
  if (z == config_.max_count) throw CapacityExceeded("multiplicity already at maximum");
  move(e, z, z + 1);
  counts_valid_ = false;
}

void ShbfX::remove_lossy(Element e) {
  const auto z = query(e);
  if (z == 0) throw std::invalid_argument("element not present");
  move(e, z, z - 1);
  counts_valid_ = false;
}

void ShbfX::require_counts() const {
  if (!counts_valid_) throw std::logic_error("count table is stale after lossy updates");
}

void ShbfX::insert(Element e) {
  require_counts();
  const std::string key(e);
  const auto it = counts_.find(key);
  const std::uint32_t z = it == counts_.end() ? 0 : it->second;
  if (z == config_.max_count) throw CapacityExceeded("multiplicity already at maximum");
  move(e, z, z + 1);
  counts_[key] = z + 1;
}

void ShbfX::remove(Element e) {
  require_counts();
  const auto it = counts_.find(std::string(e));
  if (it == counts_.end()) throw std::invalid_argument("element not present");
  const auto z = it->second;
  move(e, z, z - 1);
  if (z == 1) {
    counts_.erase(it);
  } else {
    it->second = z - 1;
  }
}

std::uint32_t ShbfX::count(std::string_view e) const {
  require_counts();
  const auto it = counts_.find(std::string(e));
  return it == counts_.end() ? 0 : it->second;
}

double ShbfX::f0() const {
  return theory::multiplicity_f0(static_cast<double>(config_.m), static_cast<double>(distinct_),
                                 config_.k);
}

}  // namespace shbf
