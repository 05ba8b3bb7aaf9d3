#include "shbf/bench/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "shbf/association.hpp"
#include "shbf/baselines.hpp"
#include "shbf/kernels.hpp"
#include "shbf/keys.hpp"
#include "shbf/multiplicity.hpp"
#include "shbf/theory.hpp"

namespace shbf::bench {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string key_string(std::uint64_t seed, KeyStream stream, std::uint64_t index) {
  return std::string(as_element(synthetic_key(seed, stream, index)));
}

std::vector<std::string> synthetic_keys(std::uint64_t seed, KeyStream stream, std::uint64_t first,
                                        std::uint64_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(key_string(seed, stream, first + i));
  return out;
}

double relative_error(double empirical, double theory) {
  if (theory == 0) return empirical == 0 ? 0.0 : kNan;
  return std::abs(empirical - theory) / theory;
}

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

/// Counts positives over `count` on-the-fly non-member probes.
template <typename Filter>
BatchCounts probe_non_members(const Filter& f, std::uint64_t seed, std::uint64_t first,
                              std::uint64_t count,
                              const std::unordered_set<std::string>* exclude) {
  return Parallel::map_reduce<BatchCounts>(
      static_cast<std::size_t>(count), [&](std::size_t i, BatchCounts& acc) {
        const Key13 key = synthetic_key(seed, KeyStream::kProbes, first + i);
        const Element e = as_element(key);
        if (exclude != nullptr && exclude->count(std::string(e)) != 0) return;
        ++acc.queries;
        if (f.contains(e, &acc.stats)) ++acc.positives;
      });
}

template <typename Filter, typename Theory>
std::vector<FprRow> fpr_sweep(Filter& filter, const FprSpec& spec, Theory theory) {
  std::unordered_set<std::string> exclude;
  if (!spec.members.empty()) exclude.insert(spec.members.begin(), spec.members.end());
  const auto member = [&](std::uint64_t i) {
    return spec.members.empty() ? key_string(spec.seed, KeyStream::kMembers, i) : spec.members[i];
  };

  std::vector<FprRow> rows;
  std::uint64_t inserted = 0;
  std::uint64_t point = 0;
  for (std::uint64_t n = spec.n_start; n <= spec.n_end; n += spec.n_step, ++point) {
    for (; inserted < n; ++inserted) filter.insert(member(inserted));
    const auto counts = probe_non_members(filter, spec.seed, point * spec.queries, spec.queries,
                                          exclude.empty() ? nullptr : &exclude);
    FprRow row;
    row.n = n;
    row.queries = counts.queries;
    row.false_positives = counts.positives;
    row.fpr_empirical = ratio(counts.positives, counts.queries);
    row.fpr_theory = n == 0 ? 0.0 : theory(static_cast<double>(n));
    row.relative_error = relative_error(row.fpr_empirical, row.fpr_theory);
    rows.push_back(row);
  }
  return rows;
}

template <typename Body>
double best_seconds(unsigned repeats, Body body) {
  double best = std::numeric_limits<double>::infinity();
  for (unsigned r = 0; r < std::max(1u, repeats); ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    best = std::min(best, elapsed.count());
  }
  return best;
}

struct AssociationSets {
  std::vector<std::string> s1_only;
  std::vector<std::string> shared;
  std::vector<std::string> s2_only;

  std::vector<std::string> s1() const {
    auto out = s1_only;
    out.insert(out.end(), shared.begin(), shared.end());
    return out;
  }
  std::vector<std::string> s2() const {
    auto out = shared;
    out.insert(out.end(), s2_only.begin(), s2_only.end());
    return out;
  }
};

AssociationSets make_sets(std::uint64_t seed, std::uint64_t set_size) {
  const std::uint64_t shared = set_size / 4;
  const std::uint64_t own = set_size - shared;
  return {synthetic_keys(seed, KeyStream::kMembers, 0, own),
          synthetic_keys(seed, KeyStream::kShared, 0, shared),
          synthetic_keys(seed, KeyStream::kSecondSet, 0, own)};
}

/// Smallest m whose expected zero fraction (1 - 1/m)^{k n'} is at least 1/2.
std::uint64_t half_load_bits(double distinct, unsigned k) {
  const double m = 1.0 / (1.0 - std::exp2(-1.0 / (distinct * k)));
  return static_cast<std::uint64_t>(std::ceil(m));
}

std::uint64_t bf_bits(double n, unsigned k) {
  return static_cast<std::uint64_t>(std::llround(n * k / std::numbers::ln2));
}

std::uint64_t trial_seed(std::uint64_t seed, unsigned k, unsigned trial) {
  return mix64(seed ^ (std::uint64_t{k} << 32) ^ trial);
}

}  // namespace

void FprSpec::validate() const {
  if (n_step == 0) throw std::invalid_argument("n step must be positive");
  if (n_start > n_end) throw std::invalid_argument("n start exceeds n end");
  if (queries == 0) throw std::invalid_argument("query count must be positive");
  if (!members.empty() && members.size() < n_end) {
    throw std::invalid_argument("member list has fewer than n_end elements");
  }
  if (filter != "shbf-m" && filter != "gen-shbf-m" && filter != "bf") {
    throw std::invalid_argument("fpr experiment supports shbf-m, gen-shbf-m and bf");
  }
}

std::vector<FprRow> run_fpr_membership(const FprSpec& spec) {
  spec.validate();
  const double m = static_cast<double>(spec.m);
  if (spec.filter == "bf") {
    StandardBf f(BfConfig{spec.m, spec.k, 64, spec.seed});
    return fpr_sweep(f, spec, [&](double n) { return theory::fpr_bf(m, n, spec.k); });
  }
  if (spec.filter == "gen-shbf-m") {
    GenShbfMConfig cfg{spec.m, spec.k, spec.t, spec.max_offset, 64, spec.seed};
    GenShbfM f(cfg);
    return fpr_sweep(f, spec,
                     [&](double n) { return theory::gen_fpr(m, n, spec.k, spec.t, cfg.window()); });
  }
  ShbfM f(ShbfMConfig{spec.m, spec.k, spec.max_offset, 64, spec.seed});
  return fpr_sweep(f, spec,
                   [&](double n) { return theory::fpr_shbf_m(m, n, spec.k, spec.max_offset); });
}

Table fpr_table(const std::vector<FprRow>& rows) {
  Table t({"n", "queries", "false_positives", "fpr_empirical", "fpr_theory", "relative_error"});
  for (const auto& r : rows) {
    t.add_row({cell(r.n), cell(r.queries), cell(r.false_positives), cell(r.fpr_empirical),
               cell(r.fpr_theory), cell(r.relative_error)});
  }
  return t;
}

double mean_relative_error(const std::vector<FprRow>& rows) {
  double sum = 0;
  std::size_t count = 0;
  for (const auto& r : rows) {
    if (r.fpr_theory > 0) {
      sum += r.relative_error;
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

std::vector<AccessRow> run_access_and_throughput(const AccessSpec& spec) {
  if (spec.n == 0) throw std::invalid_argument("n must be positive");
  if (!spec.members.empty() && spec.members.size() < spec.n) {
    throw std::invalid_argument("member list has fewer than n elements");
  }
  const double bpe = spec.bits_per_element > 0 ? spec.bits_per_element : spec.k / std::numbers::ln2;
  const auto m = static_cast<std::uint64_t>(std::llround(bpe * static_cast<double>(spec.n)));

  std::vector<std::string> members =
      spec.members.empty() ? synthetic_keys(spec.seed, KeyStream::kMembers, 0, spec.n)
                           : std::vector<std::string>(spec.members.begin(),
                                                      spec.members.begin() + spec.n);
  std::unordered_set<std::string> member_set(members.begin(), members.end());
  std::vector<std::string> non_members;
  for (std::uint64_t i = 0; non_members.size() < spec.n; ++i) {
    auto key = key_string(spec.seed, KeyStream::kProbes, i);
    if (member_set.count(key) == 0) non_members.push_back(std::move(key));
  }
  std::vector<std::string> mixed;
  mixed.reserve(2 * spec.n);
  for (std::uint64_t i = 0; i < spec.n; ++i) {
    mixed.push_back(members[i]);
    mixed.push_back(non_members[i]);
  }

  StandardBf bf(BfConfig{m, spec.k, 64, spec.seed});
  ShbfM shbf(ShbfMConfig{m, spec.k, spec.max_offset, 64, spec.seed});
  for (const auto& e : members) {
    bf.insert(e);
    shbf.insert(e);
  }

  std::vector<AccessRow> rows;
  const auto membership_rows = [&](const auto& filter, const std::string& name) {
    const std::pair<const char*, const std::vector<std::string>*> mixes[] = {
        {"member", &members}, {"non-member", &non_members}, {"mixed", &mixed}};
    for (const auto& [mix, queries] : mixes) {
      const auto counts = contains_batch<Serial>(filter, *queries);
      AccessRow row{name, mix, counts.queries, ratio(counts.stats.window_reads, counts.queries),
                    ratio(counts.stats.hash_calls, counts.queries), 0.0};
      if (spec.measure_throughput) {
        const double secs = best_seconds(spec.repeats, [&] {
          std::uint64_t hits = 0;
          for (const auto& q : *queries) hits += filter.contains(q) ? 1 : 0;
          volatile std::uint64_t sink = hits;
          (void)sink;
        });
        row.queries_per_sec = secs > 0 ? static_cast<double>(queries->size()) / secs : 0.0;
      }
      rows.push_back(row);
    }
  };
  membership_rows(bf, "bf");
  membership_rows(shbf, "shbf-m");

  // Association: three regions of equal query weight.
  const auto sets = make_sets(spec.seed, spec.n);
  const auto s1 = sets.s1();
  const auto s2 = sets.s2();
  const double distinct = static_cast<double>(sets.s1_only.size() + sets.shared.size() +
                                              sets.s2_only.size());
  const auto shbf_a = ShbfA::build(
      s1, s2, ShbfAConfig{half_load_bits(distinct, spec.k), spec.k, spec.max_offset, 64, spec.seed});
  const auto ibf = Ibf::build(s1, s2, BfConfig{bf_bits(s1.size(), spec.k), spec.k, 64, spec.seed},
                              BfConfig{bf_bits(s2.size(), spec.k), spec.k, 64, mix64(spec.seed)});
  std::vector<std::string> assoc;
  std::vector<Region> truth;
  const std::size_t per_region = sets.shared.size();
  for (std::size_t i = 0; i < per_region; ++i) {
    assoc.push_back(sets.s1_only[i]);
    truth.push_back(Region::kS1Only);
    assoc.push_back(sets.shared[i]);
    truth.push_back(Region::kBoth);
    assoc.push_back(sets.s2_only[i]);
    truth.push_back(Region::kS2Only);
  }
  const auto association_row = [&](const auto& filter, const std::string& name) {
    const auto counts = association_batch<Serial>(filter, assoc, truth);
    AccessRow row{name, "association", counts.queries,
                  ratio(counts.stats.window_reads, counts.queries),
                  ratio(counts.stats.hash_calls, counts.queries), 0.0};
    if (spec.measure_throughput) {
      const double secs = best_seconds(spec.repeats, [&] {
        std::uint64_t clear = 0;
        for (const auto& q : assoc) clear += filter.query(q).is_clear() ? 1 : 0;
        volatile std::uint64_t sink = clear;
        (void)sink;
      });
      row.queries_per_sec = secs > 0 ? static_cast<double>(assoc.size()) / secs : 0.0;
    }
    rows.push_back(row);
  };
  association_row(ibf, "ibf");
  association_row(shbf_a, "shbf-a");
  return rows;
}

Table access_table(const std::vector<AccessRow>& rows) {
  Table t({"filter", "mix", "queries", "mean_reads", "mean_hashes", "queries_per_sec"});
  for (const auto& r : rows) {
    t.add_row({r.filter, r.mix, cell(r.queries), cell(r.mean_reads), cell(r.mean_hashes),
               cell(r.queries_per_sec)});
  }
  return t;
}

void AssociationSpec::validate() const {
  if (set_size < 4) throw std::invalid_argument("set size must be at least 4");
  if (ks.empty()) throw std::invalid_argument("k list must not be empty");
  if (trials == 0) throw std::invalid_argument("trial count must be positive");
}

std::vector<AssociationRow> run_association_clear(const AssociationSpec& spec) {
  spec.validate();
  std::vector<AssociationRow> rows;
  for (unsigned k : spec.ks) {
    AssociationRow a{k, "shbf-a"};
    AssociationRow b{k, "ibf"};
    std::uint64_t a_two_way = 0;
    std::uint64_t a_unknown = 0;
    std::uint64_t a_reads = 0;
    std::uint64_t b_reads = 0;
    std::uint64_t b_clear = 0;
    std::uint64_t a_clear = 0;
    for (unsigned trial = 0; trial < spec.trials; ++trial) {
      const auto seed = trial_seed(spec.seed, k, trial);
      const auto sets = make_sets(seed, spec.set_size);
      const auto s1 = sets.s1();
      const auto s2 = sets.s2();
      const double distinct = static_cast<double>(sets.s1_only.size() + sets.shared.size() +
                                                  sets.s2_only.size());
      const ShbfAConfig cfg{half_load_bits(distinct, k), k, spec.max_offset, 64, seed};
      const auto shbf_a = ShbfA::build(s1, s2, cfg);
      const BfConfig c1{bf_bits(s1.size(), k), k, 64, seed};
      const BfConfig c2{bf_bits(s2.size(), k), k, 64, mix64(seed)};
      const auto ibf = Ibf::build(s1, s2, c1, c2);
      a.m = cfg.m;
      b.m = c1.m + c2.m;

      const std::size_t per_region = sets.shared.size();
      const std::pair<const std::vector<std::string>*, Region> regions[] = {
          {&sets.s1_only, Region::kS1Only}, {&sets.shared, Region::kBoth},
          {&sets.s2_only, Region::kS2Only}};
      for (const auto& [elements, region] : regions) {
        const std::span<const std::string> queries(elements->data(), per_region);
        const std::vector<Region> truth(per_region, region);
        const auto ca = association_batch(shbf_a, queries, truth);
        a.queries += ca.queries;
        a.wrong_clear += ca.wrong_clear;
        a_clear += ca.clear;
        a_two_way += ca.outcomes[4] + ca.outcomes[5] + ca.outcomes[6];
        a_unknown += ca.outcomes[7];
        a_reads += ca.stats.window_reads;
        const auto cb = association_batch(ibf, queries, truth);
        b.queries += cb.queries;
        b.wrong_clear += cb.wrong_clear;
        b_clear += cb.clear;
        b_reads += cb.stats.window_reads;
      }
    }
    const auto p = theory::outcome_probabilities(k);
    a.clear_fraction = ratio(a_clear, a.queries);
    a.clear_theory = theory::shbf_a_clear_probability(k);
    a.clear_abs_error = std::abs(a.clear_fraction - a.clear_theory);
    a.p_two_way = ratio(a_two_way, 2 * a.queries);
    a.p_unknown = ratio(a_unknown, a.queries);
    a.p_two_way_theory = p[3];
    a.p_unknown_theory = p[6];
    a.mean_reads = ratio(a_reads, a.queries);

    b.clear_fraction = ratio(b_clear, b.queries);
    b.clear_theory = theory::ibf_clear_probability(k);
    b.clear_abs_error = std::abs(b.clear_fraction - b.clear_theory);
    b.p_two_way = b.p_unknown = b.p_two_way_theory = b.p_unknown_theory = kNan;
    b.mean_reads = ratio(b_reads, b.queries);
    rows.push_back(a);
    rows.push_back(b);
  }
  return rows;
}

Table association_table(const std::vector<AssociationRow>& rows) {
  Table t({"k", "filter", "m", "queries", "wrong_clear", "clear_fraction", "clear_theory",
           "clear_abs_error", "p_two_way", "p_two_way_theory", "p_unknown", "p_unknown_theory",
           "mean_reads"});
  for (const auto& r : rows) {
    t.add_row({cell(r.k), r.filter, cell(r.m), cell(r.queries), cell(r.wrong_clear),
               cell(r.clear_fraction), cell(r.clear_theory), cell(r.clear_abs_error),
               cell(r.p_two_way), cell(r.p_two_way_theory), cell(r.p_unknown),
               cell(r.p_unknown_theory), cell(r.mean_reads)});
  }
  return t;
}

void MultiplicitySpec::validate() const {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (max_count == 0) throw std::invalid_argument("max count must be positive");
  if (ks.empty()) throw std::invalid_argument("k list must not be empty");
  if (memory_factor <= 0) throw std::invalid_argument("memory factor must be positive");
  if (queries == 0) throw std::invalid_argument("query count must be positive");
}

std::vector<MultiplicityRow> run_multiplicity_cr(const MultiplicitySpec& spec) {
  spec.validate();
  const auto elements = synthetic_keys(spec.seed, KeyStream::kMembers, 0, spec.n);
  std::vector<std::uint32_t> truth(spec.n);
  CountTable counts;
  for (std::uint64_t i = 0; i < spec.n; ++i) {
    truth[i] = static_cast<std::uint32_t>(mix64(spec.seed ^ mix64(i)) % spec.max_count) + 1;
    counts.emplace(elements[i], truth[i]);
  }
  const auto probes = synthetic_keys(spec.seed, KeyStream::kProbes, 0, spec.queries);
  const std::vector<std::uint32_t> zeros(probes.size(), 0);

  std::vector<MultiplicityRow> rows;
  for (unsigned k : spec.ks) {
    const auto memory = static_cast<std::uint64_t>(
        std::llround(spec.memory_factor * static_cast<double>(spec.n) * k / std::numbers::ln2));
    const auto seed = trial_seed(spec.seed, k, 0);
    const auto x = ShbfX::from_counts(counts, ShbfXConfig{memory, k, spec.max_count, 64, 4, seed});

    SpectralBf spectral(
        SpectralConfig{memory / spec.spectral_counter_bits, k, spec.spectral_counter_bits, 64, seed});
    // Round-robin insertion so repeats of one element are interleaved with others.
    for (std::uint32_t round = 1; round <= spec.max_count; ++round) {
      for (std::uint64_t i = 0; i < spec.n; ++i) {
        if (truth[i] >= round) spectral.insert(elements[i]);
      }
    }

    const double f0 = x.f0();
    double member_theory = 0;
    for (auto j : truth) member_theory += theory::correctness_rate(f0, spec.max_count, j);
    member_theory /= static_cast<double>(truth.size());
    const double non_member_theory = theory::correctness_rate(f0, spec.max_count, 0);

    const auto add = [&](const std::string& filter, const std::string& mix,
                         const MultiplicityCounts& c, double cr_theory) {
      MultiplicityRow row{k, filter, mix, memory, c.queries, c.under};
      row.cr_empirical = ratio(c.correct, c.queries);
      row.cr_theory = cr_theory;
      row.relative_error = std::isnan(cr_theory) ? kNan : relative_error(row.cr_empirical, cr_theory);
      row.mean_reads = ratio(c.stats.window_reads, c.queries);
      rows.push_back(row);
    };
    add("shbf-x", "non-member", multiplicity_batch(x, probes, zeros), non_member_theory);
    add("shbf-x", "member", multiplicity_batch(x, elements, truth), member_theory);
    add("spectral", "non-member", multiplicity_batch(spectral, probes, zeros), kNan);
    add("spectral", "member", multiplicity_batch(spectral, elements, truth), kNan);
  }
  return rows;
}

Table multiplicity_table(const std::vector<MultiplicityRow>& rows) {
  Table t({"k", "filter", "mix", "memory_bits", "queries", "under_reports", "cr_empirical",
           "cr_theory", "relative_error", "mean_reads"});
  for (const auto& r : rows) {
    t.add_row({cell(r.k), r.filter, r.mix, cell(r.memory_bits), cell(r.queries),
               cell(r.under_reports), cell(r.cr_empirical), cell(r.cr_theory),
               cell(r.relative_error), cell(r.mean_reads)});
  }
  return t;
}

}  // namespace shbf::bench
