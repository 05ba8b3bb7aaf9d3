#include "shbf/bit_store.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include "shbf/errors.hpp"

namespace shbf {

namespace {

std::size_t words_for(std::uint64_t bits) { return static_cast<std::size_t>((bits + 63) / 64); }

void check_word_bits(unsigned word_bits) {
  if (word_bits != 32 && word_bits != 64) {
    throw std::invalid_argument("word size must be 32 or 64 bits, got " +
                                std::to_string(word_bits));
  }
}

}  // namespace

BitStore::BitStore(std::uint64_t logical_bits, std::uint64_t pad_bits, unsigned word_bits)
    : logical_bits_(logical_bits), pad_bits_(pad_bits), word_bits_(word_bits) {
  if (logical_bits == 0) throw std::invalid_argument("bit store size must be positive");
  check_word_bits(word_bits);
  words_.assign(words_for(capacity()), 0);
}

void BitStore::check_index(std::uint64_t index) const {
  if (index >= capacity()) {
    throw std::out_of_range("bit index " + std::to_string(index) + " outside store of " +
                            std::to_string(capacity()) + " bits");
  }
}

bool BitStore::test(std::uint64_t index) const {
  check_index(index);
  return (words_[index >> 6] >> (index & 63)) & 1U;
}

void BitStore::set(std::uint64_t index) {
  check_index(index);
  words_[index >> 6] |= std::uint64_t{1} << (index & 63);
}

void BitStore::clear(std::uint64_t index) {
  check_index(index);
  words_[index >> 6] &= ~(std::uint64_t{1} << (index & 63));
}

void BitStore::reset() noexcept { std::fill(words_.begin(), words_.end(), 0); }

std::uint64_t BitStore::read_window(std::uint64_t start, unsigned len, ProbeStats* stats) const {
  if (len == 0 || len > kMaxWindow) {
    throw std::invalid_argument("window length must be in [1, 64], got " + std::to_string(len));
  }
  if (start > capacity() || capacity() - start < len) {
    throw std::out_of_range("window [" + std::to_string(start) + ", " +
                            std::to_string(start + len) + ") exceeds store of " +
                            std::to_string(capacity()) + " bits");
  }
  if (stats != nullptr) stats->window_reads += window_cost(len);

  const std::size_t word = static_cast<std::size_t>(start >> 6);
  const unsigned shift = static_cast<unsigned>(start & 63);
  std::uint64_t value = words_[word] >> shift;
  if (shift != 0 && shift + len > 64) value |= words_[word + 1] << (64 - shift);
  return len == 64 ? value : value & ((std::uint64_t{1} << len) - 1);
}

std::uint64_t BitStore::popcount() const noexcept {
  return std::accumulate(words_.begin(), words_.end(), std::uint64_t{0},
                         [](std::uint64_t acc, std::uint64_t w) { return acc + std::popcount(w); });
}

BitStore BitStore::from_words(std::uint64_t logical_bits, std::uint64_t pad_bits,
                              unsigned word_bits, std::vector<std::uint64_t> words) {
  BitStore store(logical_bits, pad_bits, word_bits);
  if (words.size() != store.words_.size()) {
    throw FormatError("bit store expects " + std::to_string(store.words_.size()) +
                      " words, got " + std::to_string(words.size()));
  }
  const unsigned tail = static_cast<unsigned>(store.capacity() & 63);
  if (tail != 0 && (words.back() >> tail) != 0) {
    throw FormatError("bit store has bits set beyond its capacity");
  }
  store.words_ = std::move(words);
  return store;
}

}  // namespace shbf
