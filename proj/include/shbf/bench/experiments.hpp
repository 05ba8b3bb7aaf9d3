#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shbf/bench/csv.hpp"
#include "shbf/membership.hpp"

/// Desk-scale experiment runners. Every runner is deterministic for a fixed
/// seed except for the wall-clock throughput column of the access runner.
namespace shbf::bench {

// ---------------------------------------------------------------------------
// Membership false positive rate under incremental insertion.

struct FprSpec {
  std::string filter = "shbf-m";  ///< shbf-m, gen-shbf-m or bf
  std::uint64_t m = 22008;
  unsigned k = 8;
  unsigned max_offset = 57;
  unsigned t = 1;                 ///< gen-shbf-m only
  std::uint64_t n_start = 1000;
  std::uint64_t n_end = 1500;
  std::uint64_t n_step = 20;
  std::uint64_t queries = 1'000'000;  ///< non-member probes per point
  std::uint64_t seed = kDefaultSeed;
  /// Members are taken from here in order when non-empty (a trace);
  /// otherwise they are synthetic.
  std::vector<std::string> members;

  void validate() const;
};

struct FprRow {
  std::uint64_t n = 0;
  std::uint64_t queries = 0;
  std::uint64_t false_positives = 0;
  double fpr_empirical = 0;
  double fpr_theory = 0;
  double relative_error = 0;  ///< |empirical - theory| / theory, 0 when theory is 0
};

/// Builds the filter with n_start members, then adds n_step members at a
/// time up to n_end, probing `queries` fresh non-members at every point.
std::vector<FprRow> run_fpr_membership(const FprSpec& spec);
Table fpr_table(const std::vector<FprRow>& rows);
double mean_relative_error(const std::vector<FprRow>& rows);

// ---------------------------------------------------------------------------
// Window reads, hash computations and throughput per query.

struct AccessSpec {
  std::uint64_t n = 10'000;
  unsigned k = 8;
  unsigned max_offset = 57;
  double bits_per_element = 0;   ///< 0 picks k / ln 2
  std::uint64_t seed = kDefaultSeed;
  bool measure_throughput = true;
  unsigned repeats = 3;          ///< timing passes; the fastest is kept
  std::vector<std::string> members;
};

struct AccessRow {
  std::string filter;
  std::string mix;  ///< member, non-member, mixed, or association
  std::uint64_t queries = 0;
  double mean_reads = 0;
  double mean_hashes = 0;
  double queries_per_sec = 0;  ///< 0 when not measured
};

/// Membership: BF and ShbfM over 2n queries (half members). Association:
/// iBF and ShbfA over a balanced three-region mix on sets of n elements
/// with n / 4 shared.
std::vector<AccessRow> run_access_and_throughput(const AccessSpec& spec);
Table access_table(const std::vector<AccessRow>& rows);

// ---------------------------------------------------------------------------
// Association clear-answer rates.

struct AssociationSpec {
  std::uint64_t set_size = 100'000;  ///< |S1| = |S2|; overlap is a quarter of each
  std::vector<unsigned> ks = {8};
  unsigned max_offset = 57;
  unsigned trials = 4;               ///< independent filters per k
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

struct AssociationRow {
  unsigned k = 0;
  std::string filter;  ///< shbf-a or ibf
  std::uint64_t m = 0; ///< total bits
  std::uint64_t queries = 0;
  std::uint64_t wrong_clear = 0;
  double clear_fraction = 0;
  double clear_theory = 0;
  double clear_abs_error = 0;
  /// Per-region rates, averaged over the three regions. A two-way rate is
  /// per specific two-way outcome.
  double p_two_way = 0;
  double p_unknown = 0;
  double p_two_way_theory = 0;
  double p_unknown_theory = 0;
  double mean_reads = 0;
};

/// Queries every element of the three regions of each trial equally often.
/// ShbfA is sized for a zero fraction of 1/2; iBF gets |S_i| k / ln 2 bits
/// per set.
std::vector<AssociationRow> run_association_clear(const AssociationSpec& spec);
Table association_table(const std::vector<AssociationRow>& rows);

// ---------------------------------------------------------------------------
// Multiplicity correctness rate.

struct MultiplicitySpec {
  std::uint64_t n = 100'000;       ///< distinct elements
  unsigned max_count = 57;
  std::vector<unsigned> ks = {8, 10, 12, 14, 16};
  double memory_factor = 1.5;      ///< memory = factor * n k / ln 2 bits
  unsigned spectral_counter_bits = 6;
  std::uint64_t queries = 100'000; ///< non-member probes
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

struct MultiplicityRow {
  unsigned k = 0;
  std::string filter;  ///< shbf-x or spectral
  std::string mix;     ///< non-member or member
  std::uint64_t memory_bits = 0;
  std::uint64_t queries = 0;
  std::uint64_t under_reports = 0;
  double cr_empirical = 0;
  double cr_theory = 0;      ///< nan where no closed form applies
  double relative_error = 0; ///< nan where no closed form applies
  double mean_reads = 0;
};

/// Multiplicities are uniform in [1, max_count]. Spectral BF counters are
/// spectral_counter_bits wide and share the same memory budget.
std::vector<MultiplicityRow> run_multiplicity_cr(const MultiplicitySpec& spec);
Table multiplicity_table(const std::vector<MultiplicityRow>& rows);

}  // namespace shbf::bench
