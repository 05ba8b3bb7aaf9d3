#include "shbf/association.hpp"

#include <stdexcept>

namespace shbf {

RegionMask AssociationAnswer::claimed() const noexcept {
  constexpr RegionMask s1 = region_bit(Region::kS1Only);
  constexpr RegionMask both = region_bit(Region::kBoth);
  constexpr RegionMask s2 = region_bit(Region::kS2Only);
  switch (outcome) {
    case Outcome::kS1Only: return s1;
    case Outcome::kBoth: return both;
    case Outcome::kS2Only: return s2;
    case Outcome::kS1UnsureS2: return s1 | both;
    case Outcome::kS2UnsureS1: return s2 | both;
    case Outcome::kS1OnlyOrS2Only: return s1 | s2;
    case Outcome::kUnknown: return s1 | both | s2;
    case Outcome::kNotPresent: return 0;
  }
  return 0;
}

AssociationAnswer AssociationAnswer::from_matches(RegionMask matches) noexcept {
  // Bits: 1 = offset 0 matched, 2 = o1 matched, 4 = o2 matched.
  static constexpr Outcome kTable[8] = {
      Outcome::kNotPresent,     Outcome::kS1Only,     Outcome::kBoth,       Outcome::kS1UnsureS2,
      Outcome::kS2Only,         Outcome::kS1OnlyOrS2Only, Outcome::kS2UnsureS1, Outcome::kUnknown};
  return {kTable[matches & 7]};
}

std::string_view to_string(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::kS1Only: return "S1_only";
    case Outcome::kBoth: return "Both";
    case Outcome::kS2Only: return "S2_only";
    case Outcome::kS1UnsureS2: return "S1_unsure_S2";
    case Outcome::kS2UnsureS1: return "S2_unsure_S1";
    case Outcome::kS1OnlyOrS2Only: return "S1only_or_S2only";
    case Outcome::kUnknown: return "Unknown";
    case Outcome::kNotPresent: return "NotPresent";
  }
  return "?";
}

void ShbfAConfig::validate() const {
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (word_bits != 32 && word_bits != 64) throw std::invalid_argument("word size must be 32 or 64");
  if (max_offset < 5) throw std::invalid_argument("max offset must be at least 5");
  if (max_offset > word_bits - 7) throw std::invalid_argument("max offset exceeds word size - 7");
  if (m == 0) throw std::invalid_argument("m must be positive");
}

ShbfA::ShbfA(const ShbfAConfig& config)
    : config_((config.validate(), config)),
      hashes_(config.seed, config.k + 2),
      bits_(config.m, config.max_shift(), config.word_bits) {}

ShbfA ShbfA::build(std::span<const std::string> s1, std::span<const std::string> s2,
                   const ShbfAConfig& config) {
  ShbfA filter(config);
  filter.s1_.insert(s1.begin(), s1.end());
  filter.s2_.insert(s2.begin(), s2.end());
  for (const auto& e : filter.s1_) {
    filter.store(e, filter.s2_.contains(e) ? Region::kBoth : Region::kS1Only);
  }
  for (const auto& e : filter.s2_) {
    if (!filter.s1_.contains(e)) filter.store(e, Region::kS2Only);
  }
  return filter;
}

ShbfA::Offsets ShbfA::offsets(Element e) const {
  const unsigned half = config_.half_window();
  const auto o1 = reduce(hashes_(config_.k, e), half) + 1;
  const auto o2 = o1 + reduce(hashes_(config_.k + 1, e), half) + 1;
  return {o1, o2};
}

std::uint64_t ShbfA::offset_for(Element e, Region r) const {
  switch (r) {
    case Region::kS1Only: return 0;
    case Region::kBoth: return offsets(e).o1;
    case Region::kS2Only: return offsets(e).o2;
  }
  return 0;
}

std::vector<std::uint64_t> ShbfA::positions(Element e, Region r) const {
  const auto o = offset_for(e, r);
  std::vector<std::uint64_t> out;
  out.reserve(config_.k);
  for (unsigned i = 0; i < config_.k; ++i) out.push_back(reduce(hashes_(i, e), config_.m) + o);
  return out;
}

void ShbfA::store(Element e, Region r) {
  for (auto pos : positions(e, r)) bits_.set(pos);
}

std::optional<Region> ShbfA::region_of(std::string_view e) const {
  const std::string key(e);
  const bool in1 = s1_.contains(key);
  const bool in2 = s2_.contains(key);
  if (in1 && in2) return Region::kBoth;
  if (in1) return Region::kS1Only;
  if (in2) return Region::kS2Only;
  return std::nullopt;
}

std::uint64_t ShbfA::distinct() const noexcept {
  std::uint64_t n = s1_.size();
  for (const auto& e : s2_) {
    if (!s1_.contains(e)) ++n;
  }
  return n;
}

AssociationAnswer ShbfA::query(Element e, ProbeStats* stats) const {
  const auto [o1, o2] = offsets(e);
  count_hash(stats, 2);
  const auto span = static_cast<unsigned>(o2 + 1);
  bool base = true;
  bool mid = true;
  bool far = true;
  for (unsigned i = 0; i < config_.k && (base || mid || far); ++i) {
    const auto pos = reduce(hashes_(i, e), config_.m);
    count_hash(stats);
    const auto window = bits_.read_from_byte(pos, span, stats);
    base = base && (window & 1U);
    mid = mid && ((window >> o1) & 1U);
    far = far && ((window >> o2) & 1U);
  }
  const RegionMask matches = static_cast<RegionMask>((base ? 1U : 0U) | (mid ? 2U : 0U) |
                                                     (far ? 4U : 0U));
  return AssociationAnswer::from_matches(matches);
}

CShbfA::CShbfA(const ShbfAConfig& config, unsigned counter_bits)
    : filter_(config), counters_(filter_.bits().capacity(), counter_bits, config.word_bits) {}

CShbfA CShbfA::build(std::span<const std::string> s1, std::span<const std::string> s2,
                     const ShbfAConfig& config, unsigned counter_bits) {
  CShbfA out(config, counter_bits);
  for (const auto& e : s1) out.insert(e, SetId::kS1);
  for (const auto& e : s2) out.insert(e, SetId::kS2);
  return out;
}

void CShbfA::place(Element e, Region r) {
  for (auto pos : filter_.positions(e, r)) {
    counters_.increment(pos);
    filter_.bits_.set(pos);
  }
}

void CShbfA::unplace(Element e, Region r) {
  const auto positions = filter_.positions(e, r);
  counters_.decrement_all(positions);
  for (auto pos : positions) {
    if (counters_.get(pos) == 0) filter_.bits_.clear(pos);
  }
}

void CShbfA::insert(Element e, SetId set) {
  const std::string key(e);
  auto& target = set == SetId::kS1 ? filter_.s1_ : filter_.s2_;
  if (target.contains(key)) return;
  const auto before = filter_.region_of(e);
  if (before) unplace(e, *before);
  target.insert(key);
  place(e, *filter_.region_of(e));
}

void CShbfA::remove(Element e, SetId set) {
  const std::string key(e);
  auto& target = set == SetId::kS1 ? filter_.s1_ : filter_.s2_;
  if (!target.contains(key)) {
    throw std::invalid_argument(set == SetId::kS1 ? "element not in S1" : "element not in S2");
  }
  unplace(e, *filter_.region_of(e));
  target.erase(key);
  if (const auto after = filter_.region_of(e)) place(e, *after);
}

}  // namespace shbf
