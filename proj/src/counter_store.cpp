#include "shbf/counter_store.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "shbf/errors.hpp"

namespace shbf {

CounterStore::CounterStore(std::uint64_t size, unsigned counter_bits, unsigned word_bits)
    : counter_bits_(counter_bits), word_bits_(word_bits) {
  if (size == 0) throw std::invalid_argument("counter store size must be positive");
  if (counter_bits == 0 || counter_bits > kMaxCounterBits) {
    throw std::invalid_argument("counter width must be in [1, 32] bits, got " +
                                std::to_string(counter_bits));
  }
  if (word_bits != 32 && word_bits != 64) {
    throw std::invalid_argument("word size must be 32 or 64 bits");
  }
  max_value_ = counter_bits == 32 ? 0xFFFFFFFFu : (std::uint32_t{1} << counter_bits) - 1;
  counters_.assign(static_cast<std::size_t>(size), 0);
}

void CounterStore::check_index(std::uint64_t index) const {
  if (index >= counters_.size()) {
    throw std::out_of_range("counter index " + std::to_string(index) + " outside store of " +
                            std::to_string(counters_.size()));
  }
}

std::uint32_t CounterStore::get(std::uint64_t index) const {
  check_index(index);
  return counters_[index];
}

bool CounterStore::stuck(std::uint64_t index) const {
  check_index(index);
  return !stuck_.empty() && stuck_[index];
}

std::uint32_t CounterStore::increment(std::uint64_t index) {
  check_index(index);
  auto& c = counters_[index];
  if (c == max_value_) {
    if (stuck_.empty()) stuck_.assign(counters_.size(), false);
    stuck_[index] = true;
    return c;
  }
  return ++c;
}

std::uint32_t CounterStore::decrement(std::uint64_t index) {
  check_index(index);
  auto& c = counters_[index];
  if (!stuck_.empty() && stuck_[index]) return c;
  if (c == 0) throw CounterUnderflow("decrement of zero counter at " + std::to_string(index));
  return --c;
}

void CounterStore::decrement_all(std::span<const std::uint64_t> indices) {
  std::vector<std::uint64_t> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const auto index = sorted[i];
    check_index(index);
    if (!stuck(index) && counters_[index] < j - i) {
      throw CounterUnderflow("decrement of counter " + std::to_string(index) + " below zero");
    }
    i = j;
  }
  for (auto index : indices) decrement(index);
}

std::span<const std::uint32_t> CounterStore::read_window(std::uint64_t start, std::uint64_t len,
                                                         ProbeStats* stats) const {
  if (len == 0) throw std::invalid_argument("counter window must be non-empty");
  if (start > counters_.size() || counters_.size() - start < len) {
    throw std::out_of_range("counter window exceeds store");
  }
  if (stats != nullptr) stats->window_reads += (len * counter_bits_ + word_bits_ - 1) / word_bits_;
  return std::span<const std::uint32_t>(counters_).subspan(static_cast<std::size_t>(start),
                                                           static_cast<std::size_t>(len));
}

void CounterStore::reset() noexcept {
  std::fill(counters_.begin(), counters_.end(), 0);
  stuck_.clear();
}

std::vector<std::uint64_t> CounterStore::packed_words() const {
  const std::uint64_t total_bits = counters_.size() * counter_bits_;
  std::vector<std::uint64_t> words(static_cast<std::size_t>((total_bits + 63) / 64), 0);
  std::uint64_t bit = 0;
  for (auto value : counters_) {
    const std::size_t w = static_cast<std::size_t>(bit >> 6);
    const unsigned shift = static_cast<unsigned>(bit & 63);
    words[w] |= std::uint64_t{value} << shift;
    if (shift + counter_bits_ > 64) words[w + 1] |= std::uint64_t{value} >> (64 - shift);
    bit += counter_bits_;
  }
  return words;
}

std::vector<std::uint64_t> CounterStore::stuck_indices() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < stuck_.size(); ++i) {
    if (stuck_[i]) out.push_back(i);
  }
  return out;
}

CounterStore CounterStore::from_packed(std::uint64_t size, unsigned counter_bits,
                                       unsigned word_bits, std::span<const std::uint64_t> words,
                                       std::span<const std::uint64_t> stuck) {
  CounterStore store(size, counter_bits, word_bits);
  const std::uint64_t total_bits = size * counter_bits;
  if (words.size() != (total_bits + 63) / 64) {
    throw FormatError("counter store word count mismatch");
  }
  const std::uint64_t mask = store.max_value_;
  std::uint64_t bit = 0;
  for (auto& value : store.counters_) {
    const std::size_t w = static_cast<std::size_t>(bit >> 6);
    const unsigned shift = static_cast<unsigned>(bit & 63);
    std::uint64_t raw = words[w] >> shift;
    if (shift + counter_bits > 64) raw |= words[w + 1] << (64 - shift);
    value = static_cast<std::uint32_t>(raw & mask);
    bit += counter_bits;
  }
  for (auto index : stuck) {
    if (index >= size) throw FormatError("stuck counter index out of range");
    if (store.stuck_.empty()) store.stuck_.assign(static_cast<std::size_t>(size), false);
    store.stuck_[index] = true;
  }
  return store;
}

}  // namespace shbf
