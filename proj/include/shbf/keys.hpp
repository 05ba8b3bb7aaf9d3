#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace shbf {

/// A 13-byte flow key: src IP (4), src port (2), dst IP (4), dst port (2),
/// protocol (1), as captured from a packet header 5-tuple.
inline constexpr std::size_t kKeyBytes = 13;
using Key13 = std::array<std::uint8_t, kKeyBytes>;

inline std::string_view as_element(const Key13& key) noexcept {
  return {reinterpret_cast<const char*>(key.data()), key.size()};
}

/// Deterministic synthetic keys. Byte 0 carries the stream id and bytes
/// 1..8 a bijective mix of the index, so keys from different streams or
/// different indices are always distinct.
Key13 synthetic_key(std::uint64_t seed, std::uint8_t stream, std::uint64_t index) noexcept;

/// Stream ids used by the experiment harness.
enum class KeyStream : std::uint8_t {
  kMembers = 0,
  kProbes = 1,
  kSecondSet = 2,
  kShared = 3,
};

inline Key13 synthetic_key(std::uint64_t seed, KeyStream stream, std::uint64_t index) noexcept {
  return synthetic_key(seed, static_cast<std::uint8_t>(stream), index);
}

std::string to_hex(const Key13& key);

}  // namespace shbf
