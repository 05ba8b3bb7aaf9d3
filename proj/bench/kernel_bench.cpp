// Serial reference vs OpenMP kernels on the same batches.

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "shbf/kernels.hpp"
#include "shbf/keys.hpp"
#include "shbf/membership.hpp"

namespace {

using namespace shbf;

std::vector<std::string> keys(KeyStream stream, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(as_element(synthetic_key(1, stream, i)));
  return out;
}

const ShbfM& filter() {
  static const ShbfM f = [] {
    ShbfM x(ShbfMConfig{1'442'695, 8, 57});
    for (const auto& e : keys(KeyStream::kMembers, 100'000)) x.insert(e);
    return x;
  }();
  return f;
}

const std::vector<std::string>& probes() {
  static const auto p = keys(KeyStream::kProbes, 1'000'000);
  return p;
}

template <typename Exec>
void BM_ContainsBatch(benchmark::State& state) {
  const auto& f = filter();
  const auto& p = probes();
  for (auto _ : state) benchmark::DoNotOptimize(contains_batch<Exec>(f, p));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * p.size()));
}

template <typename Exec>
void BM_BitFrequencies(benchmark::State& state) {
  const auto& p = probes();
  const auto fn = [](Element e) { return keyed_hash(0x1234, e); };
  for (auto _ : state) benchmark::DoNotOptimize(bit_frequencies<Exec>(fn, p));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * p.size()));
}

BENCHMARK(BM_ContainsBatch<Serial>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ContainsBatch<Parallel>)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BitFrequencies<Serial>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BitFrequencies<Parallel>)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
