#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include "shbf/association.hpp"
#include "shbf/baselines.hpp"
#include "shbf/errors.hpp"
#include "shbf/membership.hpp"
#include "shbf/multiplicity.hpp"
#include "shbf/sketches.hpp"

/// Binary filter format.
///
/// Every file starts with a fixed header
///   magic "SHBF" | version u16 | variant u8 | m u64 | k u16 | w̄ u16 | extra u64
/// followed by a body holding the hash seed, the word size, the insertion
/// count and the stores' words. All integers are little-endian. Bit i of
/// word j is global bit 64 j + i; counters are packed back to back at
/// counter_bits each in the same order.
///
/// The exact tables of ShbfA (T1, T2) and ShbfX (counts) live in companion
/// files of length-prefixed element records.
namespace shbf {

inline constexpr std::uint16_t kFormatVersion = 1;

enum class Variant : std::uint8_t {
  kShbfM = 1,
  kCShbfM = 2,
  kGenShbfM = 3,
  kShbfA = 4,
  kShbfX = 5,
  kCm = 6,
  kScm = 7,
  kBf = 8,
  kCbf = 9,
  kIbf = 10,
  kSpectral = 11,
};

std::string_view to_string(Variant v) noexcept;

struct Header {
  Variant variant = Variant::kShbfM;
  std::uint64_t m = 0;
  std::uint16_t k = 0;
  std::uint16_t max_offset = 0;
  std::uint64_t extra = 0;
};

/// Reads and checks the header; throws FormatError.
Header read_header(std::istream& in);

using AnyFilter = std::variant<ShbfM, CShbfM, GenShbfM, ShbfA, ShbfX, CmSketch, ScmSketch,
                               StandardBf, CountingBf, Ibf, SpectralBf>;

void save(std::ostream& out, const ShbfM& f);
void save(std::ostream& out, const CShbfM& f);
void save(std::ostream& out, const GenShbfM& f);
void save(std::ostream& out, const ShbfA& f);
void save(std::ostream& out, const ShbfX& f);
void save(std::ostream& out, const CmSketch& f);
void save(std::ostream& out, const ScmSketch& f);
void save(std::ostream& out, const StandardBf& f);
void save(std::ostream& out, const CountingBf& f);
void save(std::ostream& out, const Ibf& f);
void save(std::ostream& out, const SpectralBf& f);
void save(std::ostream& out, const AnyFilter& f);

/// Throws FormatError on a malformed or truncated stream. A loaded ShbfA has
/// empty T1 / T2 and a loaded ShbfX has a stale count table until the
/// companion file is loaded.
AnyFilter load_any(std::istream& in);

template <typename T>
T load(std::istream& in) {
  AnyFilter any = load_any(in);
  if (T* f = std::get_if<T>(&any)) return std::move(*f);
  throw FormatError("stream holds a different filter variant");
}

std::string to_bytes(const AnyFilter& f);
AnyFilter from_bytes(std::string_view bytes);

void save_file(const std::filesystem::path& path, const AnyFilter& f);
AnyFilter load_file(const std::filesystem::path& path);

/// T1 and T2 as two length-prefixed record lists.
void save_sets(std::ostream& out, const ShbfA& f);
void load_sets(std::istream& in, ShbfA& f);

/// Count table as {len u32, bytes, count u32} records.
void save_counts(std::ostream& out, const ShbfX& f);
void load_counts(std::istream& in, ShbfX& f);

}  // namespace shbf
