#include "shbf/keys.hpp"

#include "shbf/hashing.hpp"

namespace shbf {

Key13 synthetic_key(std::uint64_t seed, std::uint8_t stream, std::uint64_t index) noexcept {
  const std::uint64_t salt = mix64(seed ^ (std::uint64_t{stream} << 56));
  const std::uint64_t body = mix64(index ^ salt);
  const std::uint64_t tail = mix64(body + salt);
  Key13 key{};
  key[0] = stream;
  for (int i = 0; i < 8; ++i) key[1 + i] = static_cast<std::uint8_t>(body >> (8 * i));
  for (int i = 0; i < 4; ++i) key[9 + i] = static_cast<std::uint8_t>(tail >> (8 * i));
  return key;
}

std::string to_hex(const Key13& key) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * key.size());
  for (auto b : key) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

}  // namespace shbf
