#pragma once

#include <cstdint>

namespace shbf {

/// Per-handle instrumentation for queries and updates. Callers own one of
/// these and pass it by pointer; filters never share a counter.
struct ProbeStats {
  std::uint64_t window_reads = 0;
  std::uint64_t hash_calls = 0;

  ProbeStats& operator+=(const ProbeStats& other) noexcept {
    window_reads += other.window_reads;
    hash_calls += other.hash_calls;
    return *this;
  }

  friend bool operator==(const ProbeStats&, const ProbeStats&) = default;
};

inline void count_hash(ProbeStats* stats, std::uint64_t n = 1) noexcept {
  if (stats != nullptr) stats->hash_calls += n;
}

}  // namespace shbf
