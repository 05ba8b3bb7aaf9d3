#include "oracles.hpp"

#include <gtest/gtest.h>

namespace shbf::oracle {
namespace {

void expect_exact(const Result& r) {
  EXPECT_EQ(r.probes, 1U << 16) << r.filter;
  EXPECT_EQ(r.mismatches, 0u) << r.filter;
  EXPECT_EQ(r.positives, r.model_positives) << r.filter;
  // Non-trivial load: some probes on each side.
  EXPECT_GT(r.positives, 0u) << r.filter;
  EXPECT_LT(r.positives, r.probes) << r.filter;
}

class ShbfMOracle : public ::testing::TestWithParam<MembershipCase> {};

TEST_P(ShbfMOracle, MatchesModelOnEveryProbe) { expect_exact(shbf_m(GetParam())); }

INSTANTIATE_TEST_SUITE_P(Sizes, ShbfMOracle, ::testing::ValuesIn(shbf_m_cases()));

TEST(Oracle, CShbfMCountersAndBits) { expect_exact(cshbf_m()); }
TEST(Oracle, GenShbfM) { expect_exact(gen_shbf_m()); }
TEST(Oracle, ShbfA) { expect_exact(shbf_a()); }
TEST(Oracle, ShbfXSingleChunk) { expect_exact(shbf_x(20)); }
TEST(Oracle, ShbfXTwoChunks) { expect_exact(shbf_x(70)); }
TEST(Oracle, StandardBf) { expect_exact(standard_bf()); }
TEST(Oracle, CountingBf) { expect_exact(counting_bf()); }
TEST(Oracle, Ibf) { expect_exact(ibf()); }
TEST(Oracle, Spectral) { expect_exact(spectral()); }

TEST(Oracle, Sketches) {
  for (const auto& r : sketches()) {
    EXPECT_EQ(r.mismatches, 0u) << r.filter;
    EXPECT_EQ(r.positives, r.model_positives) << r.filter;
  }
}

}  // namespace
}  // namespace shbf::oracle
