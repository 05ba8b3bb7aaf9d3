#pragma once

#include <cstdint>

#include "shbf/counter_store.hpp"
#include "shbf/hashing.hpp"
#include "shbf/membership.hpp"
#include "shbf/probe_stats.hpp"

namespace shbf {

struct CmConfig {
  unsigned depth = 8;          ///< d vectors
  std::uint64_t width = 1024;  ///< r counters per vector
  unsigned counter_bits = 6;
  unsigned word_bits = 64;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

/// Count-Min sketch: d rows of r saturating counters.
class CmSketch {
 public:
  explicit CmSketch(const CmConfig& config);

  void insert(Element e);
  /// min_i v_i[h_i(e) % r]; d hash computations and d reads.
  std::uint32_t estimate(Element e, ProbeStats* stats = nullptr) const;

  const CmConfig& config() const noexcept { return config_; }
  const CounterStore& counters() const noexcept { return counters_; }
  const HashFamily& hashes() const noexcept { return hashes_; }
  std::uint64_t inserted() const noexcept { return inserted_; }

  bool same_state(const CmSketch& other) const {
    return counters_ == other.counters_ && hashes_ == other.hashes_ && inserted_ == other.inserted_;
  }

 private:
  friend struct SerialAccess;

  CmConfig config_;
  HashFamily hashes_;
  CounterStore counters_;
  std::uint64_t inserted_ = 0;
};

struct ScmConfig {
  unsigned depth = 8;          ///< d: the sketch keeps d / 2 vectors
  std::uint64_t width = 1024;  ///< r: each vector has 2r counters
  unsigned max_offset = 9;     ///< offsets in [1, max_offset - 1]
  unsigned counter_bits = 6;
  unsigned word_bits = 64;
  std::uint64_t seed = kDefaultSeed;

  /// Requires even d, and max_offset * counter_bits <= word_bits - 7 so
  /// both counters of a vector come from one read.
  void validate() const;
  unsigned rows() const noexcept { return depth / 2; }
  std::uint64_t row_length() const noexcept { return 2 * width + max_offset - 1; }
};

/// Shifting Count-Min sketch: d / 2 vectors of 2r counters; each element
/// bumps v_i[h_i(e)] and v_i[h_i(e) + o(e)]. Same d probed counters as CM
/// from d / 2 + 1 hash computations and d / 2 reads.
class ScmSketch {
 public:
  explicit ScmSketch(const ScmConfig& config);

  void insert(Element e);
  std::uint32_t estimate(Element e, ProbeStats* stats = nullptr) const;
  std::uint64_t offset(Element e) const;

  const ScmConfig& config() const noexcept { return config_; }
  const CounterStore& counters() const noexcept { return counters_; }
  const HashFamily& hashes() const noexcept { return hashes_; }
  std::uint64_t inserted() const noexcept { return inserted_; }

  bool same_state(const ScmSketch& other) const {
    return counters_ == other.counters_ && hashes_ == other.hashes_ && inserted_ == other.inserted_;
  }

 private:
  friend struct SerialAccess;

  ScmConfig config_;
  HashFamily hashes_;
  CounterStore counters_;
  std::uint64_t inserted_ = 0;
};

}  // namespace shbf
