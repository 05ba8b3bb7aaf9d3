#include "shbf/sketches.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace shbf {

void CmConfig::validate() const {
  if (depth == 0) throw std::invalid_argument("sketch depth must be positive");
  if (width == 0) throw std::invalid_argument("sketch width must be positive");
}

CmSketch::CmSketch(const CmConfig& config)
    : config_((config.validate(), config)),
      hashes_(config.seed, config.depth),
      counters_(config.depth * config.width, config.counter_bits, config.word_bits) {}

void CmSketch::insert(Element e) {
  for (unsigned i = 0; i < config_.depth; ++i) {
    counters_.increment(i * config_.width + reduce(hashes_(i, e), config_.width));
  }
  ++inserted_;
}

std::uint32_t CmSketch::estimate(Element e, ProbeStats* stats) const {
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  for (unsigned i = 0; i < config_.depth; ++i) {
    count_hash(stats);
    const auto cell = i * config_.width + reduce(hashes_(i, e), config_.width);
    best = std::min(best, counters_.read_window(cell, 1, stats)[0]);
  }
  return best;
}

void ScmConfig::validate() const {
  if (depth == 0 || depth % 2 != 0) throw std::invalid_argument("SCM depth must be positive and even");
  if (width == 0) throw std::invalid_argument("sketch width must be positive");
  if (max_offset < 2) throw std::invalid_argument("max offset must be at least 2");
  if (word_bits < 8 || max_offset * counter_bits > word_bits - 7) {
    throw std::invalid_argument("max offset * counter width must not exceed word size - 7");
  }
}

ScmSketch::ScmSketch(const ScmConfig& config)
    : config_((config.validate(), config)),
      hashes_(config.seed, config.rows() + 1),
      counters_(config.rows() * config.row_length(), config.counter_bits, config.word_bits) {}

std::uint64_t ScmSketch::offset(Element e) const {
  return reduce(hashes_(config_.rows(), e), config_.max_offset - 1) + 1;
}

void ScmSketch::insert(Element e) {
  const auto o = offset(e);
  for (unsigned i = 0; i < config_.rows(); ++i) {
    const auto cell = i * config_.row_length() + reduce(hashes_(i, e), 2 * config_.width);
    counters_.increment(cell);
    counters_.increment(cell + o);
  }
  ++inserted_;
}

std::uint32_t ScmSketch::estimate(Element e, ProbeStats* stats) const {
  const auto o = offset(e);
  count_hash(stats);
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  for (unsigned i = 0; i < config_.rows(); ++i) {
    count_hash(stats);
    const auto cell = i * config_.row_length() + reduce(hashes_(i, e), 2 * config_.width);
    const auto window = counters_.read_window(cell, o + 1, stats);
    best = std::min({best, window.front(), window.back()});
  }
  return best;
}

}  // namespace shbf
