#include "shbf/bench/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "shbf/bench/trace.hpp"

namespace shbf::bench {
namespace {

FprSpec small_fpr(const std::string& filter) {
  FprSpec s;
  s.filter = filter;
  s.m = 4000;
  s.n_start = 0;
  s.n_end = 400;
  s.n_step = 100;
  s.queries = 20000;
  return s;
}

TEST(Csv, QuotesAndFormatsCells) {
  Table t({"a", "b"});
  t.add_row({cell(0.5), cell("x,y")});
  t.add_row({cell(std::nan("")), cell(std::uint64_t{7})});
  EXPECT_EQ(t.to_csv(), "a,b\n0.5,\"x,y\"\nnan,7\n");
  EXPECT_THROW(t.add_row({"1"}), std::invalid_argument);
}

TEST(FprExperiment, EmptyFilterHasNoFalsePositives) {
  const auto rows = run_fpr_membership(small_fpr("shbf-m"));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].n, 0u);
  EXPECT_EQ(rows[0].false_positives, 0u);
  EXPECT_EQ(rows[0].fpr_theory, 0.0);
  EXPECT_EQ(rows[0].relative_error, 0.0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GE(rows[i].fpr_theory, rows[i - 1].fpr_theory);
    EXPECT_GE(rows[i].false_positives, rows[i - 1].false_positives);
  }
}

TEST(FprExperiment, SameSeedGivesIdenticalCsv) {
  for (const auto* name : {"shbf-m", "gen-shbf-m", "bf"}) {
    auto spec = small_fpr(name);
    if (spec.filter == "gen-shbf-m") {
      spec.k = 9;
      spec.t = 2;
    }
    EXPECT_EQ(fpr_table(run_fpr_membership(spec)).to_csv(),
              fpr_table(run_fpr_membership(spec)).to_csv())
        << name;
  }
}

TEST(FprExperiment, TraceMembersAreUsed) {
  auto spec = small_fpr("bf");
  spec.members = synthetic_corpus(11, 400).records;
  const auto rows = run_fpr_membership(spec);
  EXPECT_EQ(rows.back().n, 400u);
  spec.members.resize(100);
  EXPECT_THROW(run_fpr_membership(spec), std::invalid_argument);
}

TEST(FprExperiment, RejectsBadSpecs) {
  auto spec = small_fpr("shbf-m");
  spec.filter = "cuckoo";
  EXPECT_THROW(run_fpr_membership(spec), std::invalid_argument);
  spec = small_fpr("shbf-m");
  spec.n_step = 0;
  EXPECT_THROW(run_fpr_membership(spec), std::invalid_argument);
}

TEST(AccessExperiment, ReadAndHashCounts) {
  AccessSpec spec;
  spec.n = 2000;
  spec.measure_throughput = false;
  const auto rows = run_access_and_throughput(spec);
  bool saw_bf_member = false;
  bool saw_shbf_member = false;
  for (const auto& r : rows) {
    EXPECT_EQ(r.queries_per_sec, 0.0);
    if (r.filter == "bf" && r.mix == "member") {
      EXPECT_DOUBLE_EQ(r.mean_reads, spec.k);
      EXPECT_DOUBLE_EQ(r.mean_hashes, spec.k);
      saw_bf_member = true;
    }
    if (r.filter == "shbf-m" && r.mix == "member") {
      EXPECT_DOUBLE_EQ(r.mean_reads, spec.k / 2.0);
      EXPECT_DOUBLE_EQ(r.mean_hashes, spec.k / 2.0 + 1);
      saw_shbf_member = true;
    }
    if (r.filter == "shbf-a") {
      EXPECT_DOUBLE_EQ(r.mean_reads, spec.k);
      EXPECT_DOUBLE_EQ(r.mean_hashes, spec.k + 2.0);
    }
  }
  EXPECT_TRUE(saw_bf_member);
  EXPECT_TRUE(saw_shbf_member);
  EXPECT_EQ(access_table(rows).rows().size(), rows.size());
}

TEST(AssociationExperiment, ClearFractionGrowsWithK) {
  AssociationSpec spec;
  spec.set_size = 4000;
  spec.ks = {2, 4, 8};
  spec.trials = 2;
  const auto rows = run_association_clear(spec);
  double prev = 0;
  for (const auto& r : rows) {
    EXPECT_EQ(r.wrong_clear, 0u) << r.filter << " k=" << r.k;
    if (r.filter != "shbf-a") continue;
    EXPECT_GT(r.clear_fraction, prev);
    prev = r.clear_fraction;
  }
  EXPECT_GT(prev, 0.95);
  EXPECT_EQ(association_table(rows).to_csv(), association_table(run_association_clear(spec)).to_csv());
}

TEST(MultiplicityExperiment, ShbfXNeverUnderReports) {
  MultiplicitySpec spec;
  spec.n = 3000;
  spec.ks = {8, 12};
  spec.queries = 5000;
  const auto rows = run_multiplicity_cr(spec);
  ASSERT_EQ(rows.size(), 8u);
  for (const auto& r : rows) {
    if (r.filter == "shbf-x") {
      EXPECT_EQ(r.under_reports, 0u);
      EXPECT_FALSE(std::isnan(r.cr_theory));
    } else {
      EXPECT_TRUE(std::isnan(r.cr_theory));
    }
    EXPECT_GE(r.cr_empirical, 0.0);
    EXPECT_LE(r.cr_empirical, 1.0);
  }
  EXPECT_EQ(multiplicity_table(rows).to_csv(), multiplicity_table(run_multiplicity_cr(spec)).to_csv());
}

}  // namespace
}  // namespace shbf::bench
