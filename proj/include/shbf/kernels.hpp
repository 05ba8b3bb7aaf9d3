#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <omp.h>

#include "shbf/association.hpp"
#include "shbf/hashing.hpp"
#include "shbf/probe_stats.hpp"
#include "shbf/baselines.hpp"
#include "shbf/multiplicity.hpp"
#include "shbf/sketches.hpp"

/// Batch query kernels, parameterized on an execution policy. Serial is the
/// reference; Parallel must return identical results. Filters are only
/// read, which is safe while no writer is active.
namespace shbf {

/// Per-run totals of a batch query.
struct BatchCounts {
  std::uint64_t queries = 0;
  std::uint64_t positives = 0;
  ProbeStats stats;

  BatchCounts& operator+=(const BatchCounts& o) noexcept {
    queries += o.queries;
    positives += o.positives;
    stats += o.stats;
    return *this;
  }
  friend bool operator==(const BatchCounts&, const BatchCounts&) = default;
};

/// Outcome counts are indexed by Outcome value (1..8); slot 0 is unused.
struct AssociationCounts {
  std::array<std::uint64_t, 9> outcomes{};
  std::uint64_t queries = 0;
  std::uint64_t clear = 0;
  std::uint64_t wrong_clear = 0;
  ProbeStats stats;

  AssociationCounts& operator+=(const AssociationCounts& o) noexcept {
    for (std::size_t i = 0; i < outcomes.size(); ++i) outcomes[i] += o.outcomes[i];
    queries += o.queries;
    clear += o.clear;
    wrong_clear += o.wrong_clear;
    stats += o.stats;
    return *this;
  }
  friend bool operator==(const AssociationCounts&, const AssociationCounts&) = default;
};

struct MultiplicityCounts {
  std::uint64_t queries = 0;
  std::uint64_t correct = 0;
  std::uint64_t under = 0;  ///< reported below the truth
  ProbeStats stats;

  MultiplicityCounts& operator+=(const MultiplicityCounts& o) noexcept {
    queries += o.queries;
    correct += o.correct;
    under += o.under;
    stats += o.stats;
    return *this;
  }
  friend bool operator==(const MultiplicityCounts&, const MultiplicityCounts&) = default;
};

inline std::uint32_t query_count(const ShbfX& f, Element e, ProbeStats* s) { return f.query(e, s); }
inline std::uint32_t query_count(const SpectralBf& f, Element e, ProbeStats* s) {
  return f.query(e, s);
}
inline std::uint32_t query_count(const CmSketch& f, Element e, ProbeStats* s) {
  return f.estimate(e, s);
}
inline std::uint32_t query_count(const ScmSketch& f, Element e, ProbeStats* s) {
  return f.estimate(e, s);
}

/// Runs body(i, acc) for i in [0, n) on one thread.
struct Serial {
  template <typename Acc, typename Body>
  static Acc map_reduce(std::size_t n, Body&& body) {
    Acc acc{};
    for (std::size_t i = 0; i < n; ++i) body(i, acc);
    return acc;
  }
};

/// Same contract as Serial. Each thread takes a contiguous block and keeps
/// its own accumulator; the blocks are merged in thread order.
struct Parallel {
  template <typename Acc, typename Body>
  static Acc map_reduce(std::size_t n, Body&& body) {
    std::vector<Acc> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
    {
      const auto t = static_cast<std::size_t>(omp_get_thread_num());
      const auto nt = static_cast<std::size_t>(omp_get_num_threads());
      Acc& acc = partial[t];
      for (std::size_t i = n * t / nt, end = n * (t + 1) / nt; i < end; ++i) body(i, acc);
    }
    Acc acc{};
    for (auto& p : partial) acc += p;
    return acc;
  }
};

/// Membership queries over a batch; `positives` counts true answers.
template <typename Exec = Parallel, typename Filter>
BatchCounts contains_batch(const Filter& f, std::span<const std::string> probes) {
  return Exec::template map_reduce<BatchCounts>(probes.size(), [&](std::size_t i, BatchCounts& acc) {
    ++acc.queries;
    if (f.contains(probes[i], &acc.stats)) ++acc.positives;
  });
}

/// Per-output-bit one counts of `fn` over the corpus.
template <typename Exec = Parallel, typename Fn>
BitCounts bit_frequencies(const Fn& fn, std::span<const std::string> corpus) {
  return Exec::template map_reduce<BitCounts>(
      corpus.size(), [&](std::size_t i, BitCounts& acc) { acc.add(fn(corpus[i])); });
}

/// Association queries against the true region of each query.
template <typename Exec = Parallel, typename Filter>
AssociationCounts association_batch(const Filter& f, std::span<const std::string> queries,
                                    std::span<const Region> truth) {
  return Exec::template map_reduce<AssociationCounts>(
      queries.size(), [&](std::size_t i, AssociationCounts& acc) {
        const auto a = f.query(queries[i], &acc.stats);
        ++acc.queries;
        if (a.is_clear()) {
          ++acc.clear;
          if ((a.claimed() & region_bit(truth[i])) == 0) ++acc.wrong_clear;
        }
        if constexpr (requires { a.outcome; }) ++acc.outcomes[static_cast<std::size_t>(a.outcome)];
      });
}

/// Multiplicity or frequency queries against true counts.
template <typename Exec = Parallel, typename Filter>
MultiplicityCounts multiplicity_batch(const Filter& f, std::span<const std::string> queries,
                                      std::span<const std::uint32_t> truth) {
  return Exec::template map_reduce<MultiplicityCounts>(
      queries.size(), [&](std::size_t i, MultiplicityCounts& acc) {
        const std::uint32_t got = query_count(f, queries[i], &acc.stats);
        ++acc.queries;
        if (got == truth[i]) ++acc.correct;
        if (got < truth[i]) ++acc.under;
      });
}

}  // namespace shbf
