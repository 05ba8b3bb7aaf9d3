#include "shbf/counter_store.hpp"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "shbf/errors.hpp"

namespace shbf {
namespace {

TEST(CounterStore, IncrementDecrement) {
  CounterStore c(10);
  EXPECT_EQ(c.max_value(), 15u);
  EXPECT_EQ(c.increment(3), 1u);
  EXPECT_EQ(c.increment(3), 2u);
  EXPECT_EQ(c.decrement(3), 1u);
  EXPECT_EQ(c.get(3), 1u);
  EXPECT_FALSE(c.overflowed());
}

TEST(CounterStore, UnderflowThrows) {
  CounterStore c(4);
  EXPECT_THROW(c.decrement(0), CounterUnderflow);
  EXPECT_THROW(c.increment(4), std::out_of_range);
  EXPECT_THROW(CounterStore(4, 0), std::invalid_argument);
  EXPECT_THROW(CounterStore(4, 33), std::invalid_argument);
  EXPECT_THROW(CounterStore(0), std::invalid_argument);
}

TEST(CounterStore, SaturationIsSticky) {
  CounterStore c(4, 2);
  for (int i = 0; i < 5; ++i) c.increment(1);
  EXPECT_EQ(c.get(1), 3u);
  EXPECT_TRUE(c.overflowed());
  EXPECT_TRUE(c.stuck(1));
  EXPECT_FALSE(c.stuck(0));
  // A stuck counter ignores decrements, so it can never reach zero.
  for (int i = 0; i < 10; ++i) c.decrement(1);
  EXPECT_EQ(c.get(1), 3u);
}

TEST(CounterStore, DecrementAllIsAtomic) {
  CounterStore c(8);
  c.increment(1);
  c.increment(2);
  const std::vector<std::uint64_t> bad = {1, 2, 3};
  EXPECT_THROW(c.decrement_all(bad), CounterUnderflow);
  EXPECT_EQ(c.get(1), 1u);
  EXPECT_EQ(c.get(2), 1u);
  // A repeated index needs enough headroom for every occurrence.
  const std::vector<std::uint64_t> twice = {1, 1};
  EXPECT_THROW(c.decrement_all(twice), CounterUnderflow);
  EXPECT_EQ(c.get(1), 1u);
  const std::vector<std::uint64_t> ok = {1, 2};
  c.decrement_all(ok);
  EXPECT_EQ(c.get(1), 0u);
  EXPECT_EQ(c.get(2), 0u);
}

TEST(CounterStore, WindowCost) {
  CounterStore c(64, 4, 64);
  ProbeStats s;
  auto w = c.read_window(10, 16, &s);
  EXPECT_EQ(w.size(), 16u);
  EXPECT_EQ(s.window_reads, 1u);
  (void)c.read_window(10, 17, &s);
  EXPECT_EQ(s.window_reads, 3u);
  EXPECT_THROW((void)c.read_window(60, 5), std::out_of_range);
  EXPECT_THROW((void)c.read_window(0, 0), std::invalid_argument);
}

class CounterPacking : public ::testing::TestWithParam<unsigned> {};

TEST_P(CounterPacking, PackedRoundTrip) {
  const unsigned bits = GetParam();
  CounterStore c(157, bits);
  std::mt19937_64 rng(bits);
  for (int i = 0; i < 2000; ++i) c.increment(rng() % 157);
  const auto words = c.packed_words();
  EXPECT_EQ(words.size(), (157 * bits + 63) / 64);
  const auto stuck = c.stuck_indices();
  const auto copy = CounterStore::from_packed(157, bits, 64, words, stuck);
  EXPECT_EQ(copy, c);
}

INSTANTIATE_TEST_SUITE_P(Widths, CounterPacking, ::testing::Values(1u, 3u, 4u, 6u, 7u, 13u, 32u));

TEST(CounterStore, FromPackedRejectsBadInput) {
  EXPECT_THROW(CounterStore::from_packed(10, 4, 64, std::vector<std::uint64_t>{}, {}), FormatError);
  const std::vector<std::uint64_t> one(1, 0);
  const std::vector<std::uint64_t> stuck = {10};
  EXPECT_THROW(CounterStore::from_packed(10, 4, 64, one, stuck), FormatError);
}

}  // namespace
}  // namespace shbf
