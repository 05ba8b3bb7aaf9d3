#include "shbf/membership.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "shbf/theory.hpp"

namespace shbf {

void ShbfMConfig::validate() const {
  if (k == 0 || k % 2 != 0) throw std::invalid_argument("k must be a positive even number");
  if (word_bits != 32 && word_bits != 64) throw std::invalid_argument("word size must be 32 or 64");
  if (max_offset < 2 || max_offset > word_bits - 7) {
    throw std::invalid_argument("max offset must lie in [2, " + std::to_string(word_bits - 7) +
                                "], got " + std::to_string(max_offset));
  }
  if (m < k) throw std::invalid_argument("m must be at least k");
}

ShbfM::ShbfM(const ShbfMConfig& config)
    : config_((config.validate(), config)),
      hashes_(config.seed, config.k / 2 + 1),
      bits_(config.m, config.max_offset - 1, config.word_bits) {}

std::uint64_t ShbfM::offset(Element e) const {
  return reduce(hashes_(config_.k / 2, e), config_.max_offset - 1) + 1;
}

std::vector<std::uint64_t> ShbfM::positions(Element e) const {
  const auto o = offset(e);
  std::vector<std::uint64_t> out;
  out.reserve(config_.k);
  for (unsigned i = 0; i < config_.k / 2; ++i) {
    const auto base = reduce(hashes_(i, e), config_.m);
    out.push_back(base);
    out.push_back(base + o);
  }
  return out;
}

void ShbfM::insert(Element e) {
  for (auto pos : positions(e)) bits_.set(pos);
  ++inserted_;
}

bool ShbfM::contains(Element e, ProbeStats* stats) const {
  const auto o = offset(e);
  count_hash(stats);
  const std::uint64_t pair = 1U | (std::uint64_t{1} << o);
  const auto span = static_cast<unsigned>(o + 1);
  for (unsigned i = 0; i < config_.k / 2; ++i) {
    const auto base = reduce(hashes_(i, e), config_.m);
    count_hash(stats);
    if ((bits_.read_from_byte(base, span, stats) & pair) != pair) return false;
  }
  return true;
}

double ShbfM::theoretical_fpr() const {
  return theory::fpr_shbf_m(static_cast<double>(config_.m), static_cast<double>(inserted_),
                            config_.k, config_.max_offset);
}

CShbfM::CShbfM(const ShbfMConfig& config, unsigned counter_bits)
    : filter_(config), counters_(filter_.bits().capacity(), counter_bits, config.word_bits) {}

void CShbfM::charge_counter_windows(Element e, ProbeStats* stats) const {
  if (stats == nullptr) return;
  const auto o = filter_.offset(e);
  count_hash(stats, filter_.config().k / 2 + 1);
  for (unsigned i = 0; i < filter_.config().k / 2; ++i) {
    const auto base = reduce(filter_.hashes_(i, e), filter_.config().m);
    counters_.read_window(base, o + 1, stats);
  }
}

void CShbfM::insert(Element e, ProbeStats* stats) {
  charge_counter_windows(e, stats);
  for (auto pos : filter_.positions(e)) {
    counters_.increment(pos);
    filter_.bits_.set(pos);
  }
  ++filter_.inserted_;
}

void CShbfM::remove(Element e, ProbeStats* stats) {
  charge_counter_windows(e, stats);
  const auto positions = filter_.positions(e);
  counters_.decrement_all(positions);
  for (auto pos : positions) {
    if (counters_.get(pos) == 0) filter_.bits_.clear(pos);
  }
  if (filter_.inserted_ > 0) --filter_.inserted_;
}

void GenShbfMConfig::validate() const {
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (t < 1 || t > k - 1) throw std::invalid_argument("t must lie in [1, k - 1]");
  if (k % (t + 1) != 0) throw std::invalid_argument("t + 1 must divide k");
  if (word_bits != 32 && word_bits != 64) throw std::invalid_argument("word size must be 32 or 64");
  if (max_offset > word_bits - 7) throw std::invalid_argument("max offset exceeds word size - 7");
  if (max_offset < t + 1) throw std::invalid_argument("offset window too small for t shifts");
  if (m < k) throw std::invalid_argument("m must be at least k");
}

GenShbfM::GenShbfM(const GenShbfMConfig& config)
    : config_((config.validate(), config)),
      hashes_(config.seed, config.groups() + config.t),
      bits_(config.m, config.window() - 1, config.word_bits) {}

std::vector<std::uint64_t> GenShbfM::offsets(Element e) const {
  const unsigned slice = config_.slice();
  std::vector<std::uint64_t> out;
  out.reserve(config_.t);
  for (unsigned j = 0; j < config_.t; ++j) {
    out.push_back(std::uint64_t{j} * slice + reduce(hashes_(config_.groups() + j, e), slice) + 1);
  }
  return out;
}

std::vector<std::uint64_t> GenShbfM::positions(Element e) const {
  const auto offs = offsets(e);
  std::vector<std::uint64_t> out;
  out.reserve(config_.k);
  for (unsigned g = 0; g < config_.groups(); ++g) {
    const auto base = reduce(hashes_(g, e), config_.m);
    out.push_back(base);
    for (auto o : offs) out.push_back(base + o);
  }
  return out;
}

std::uint64_t GenShbfM::pattern(Element e, unsigned& span, ProbeStats* stats) const {
  std::uint64_t mask = 1;
  const auto offs = offsets(e);
  count_hash(stats, offs.size());
  for (auto o : offs) mask |= std::uint64_t{1} << o;
  span = static_cast<unsigned>(std::bit_width(mask));
  return mask;
}

void GenShbfM::insert(Element e) {
  for (auto pos : positions(e)) bits_.set(pos);
  ++inserted_;
}

bool GenShbfM::contains(Element e, ProbeStats* stats) const {
  unsigned span = 0;
  const auto mask = pattern(e, span, stats);
  for (unsigned g = 0; g < config_.groups(); ++g) {
    const auto base = reduce(hashes_(g, e), config_.m);
    count_hash(stats);
    if ((bits_.read_from_byte(base, span, stats) & mask) != mask) return false;
  }
  return true;
}

double GenShbfM::theoretical_fpr() const {
  return theory::gen_fpr(static_cast<double>(config_.m), static_cast<double>(inserted_), config_.k,
                         config_.t, config_.window());
}

}  // namespace shbf
