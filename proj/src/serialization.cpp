#include "shbf/serialization.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace shbf {

namespace {

constexpr std::array<char, 4> kMagic = {'S', 'H', 'B', 'F'};
// Stores above this many cells are rejected before allocation.
constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 40;
constexpr std::uint32_t kMaxRecord = 1U << 24;

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  template <typename T>
  void put(T value) {
    static_assert(std::is_unsigned_v<T>);
    char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      buf[i] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff);
    }
    out_.write(buf, sizeof(T));
  }
  void bytes(std::string_view s) { out_.write(s.data(), static_cast<std::streamsize>(s.size())); }
  void record(std::string_view s) {
    put(static_cast<std::uint32_t>(s.size()));
    bytes(s);
  }
  void words(std::span<const std::uint64_t> w) {
    put(static_cast<std::uint64_t>(w.size()));
    for (auto x : w) put(x);
  }
  void finish() {
    if (!out_) throw std::runtime_error("write failed");
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  template <typename T>
  T get() {
    unsigned char buf[sizeof(T)];
    raw(reinterpret_cast<char*>(buf), sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{buf[i]} << (8 * i);
    return static_cast<T>(v);
  }
  std::string record() {
    const auto len = get<std::uint32_t>();
    if (len > kMaxRecord) throw FormatError("record length out of range");
    std::string s(len, '\0');
    raw(s.data(), len);
    return s;
  }
  std::vector<std::uint64_t> words(std::uint64_t expected) {
    const auto n = get<std::uint64_t>();
    if (n != expected) {
      throw FormatError("expected " + std::to_string(expected) + " words, got " +
                        std::to_string(n));
    }
    std::vector<std::uint64_t> out(static_cast<std::size_t>(n));
    for (auto& w : out) w = get<std::uint64_t>();
    return out;
  }
  void raw(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) throw FormatError("truncated stream");
  }

 private:
  std::istream& in_;
};

void write_header(Writer& w, Variant v, std::uint64_t m, unsigned k, unsigned max_offset,
                  std::uint64_t extra) {
  w.bytes(std::string_view(kMagic.data(), kMagic.size()));
  w.put(kFormatVersion);
  w.put(static_cast<std::uint8_t>(v));
  w.put(m);
  w.put(static_cast<std::uint16_t>(k));
  w.put(static_cast<std::uint16_t>(max_offset));
  w.put(extra);
}

void write_prelude(Writer& w, std::uint64_t seed, unsigned word_bits, std::uint64_t inserted) {
  w.put(seed);
  w.put(static_cast<std::uint8_t>(word_bits));
  w.put(inserted);
}

struct Prelude {
  std::uint64_t seed;
  unsigned word_bits;
  std::uint64_t inserted;
};

Prelude read_prelude(Reader& r) {
  Prelude p{};
  p.seed = r.get<std::uint64_t>();
  p.word_bits = r.get<std::uint8_t>();
  p.inserted = r.get<std::uint64_t>();
  return p;
}

void write_bits(Writer& w, const BitStore& b) {
  w.put(b.size());
  w.put(b.pad());
  w.words(b.words());
}

void check_cells(std::uint64_t cells) {
  if (cells == 0 || cells > kMaxCells) throw FormatError("store size out of range");
}

BitStore read_bits(Reader& r, unsigned word_bits) {
  const auto m = r.get<std::uint64_t>();
  const auto pad = r.get<std::uint64_t>();
  check_cells(m);
  if (pad > kMaxCells) throw FormatError("pad out of range");
  auto words = r.words((m + pad + 63) / 64);
  return BitStore::from_words(m, pad, word_bits, std::move(words));
}

void write_counters(Writer& w, const CounterStore& c) {
  w.put(c.size());
  w.put(static_cast<std::uint8_t>(c.counter_bits()));
  w.put(static_cast<std::uint8_t>(c.overflowed() ? 1 : 0));
  w.words(c.packed_words());
  w.words(c.stuck_indices());
}

CounterStore read_counters(Reader& r, unsigned word_bits) {
  const auto size = r.get<std::uint64_t>();
  const unsigned bits = r.get<std::uint8_t>();
  const bool saturated = r.get<std::uint8_t>() != 0;
  check_cells(size);
  if (bits == 0 || bits > CounterStore::kMaxCounterBits) {
    throw FormatError("counter width out of range");
  }
  auto words = r.words((size * bits + 63) / 64);
  const auto n_stuck = r.get<std::uint64_t>();
  if (n_stuck > size) throw FormatError("too many stuck counters");
  std::vector<std::uint64_t> stuck(static_cast<std::size_t>(n_stuck));
  for (auto& s : stuck) s = r.get<std::uint64_t>();
  if (saturated != !stuck.empty()) throw FormatError("overflow flag disagrees with stuck list");
  return CounterStore::from_packed(size, bits, word_bits, words, stuck);
}

template <typename Store>
void assign(Store& dst, Store src) {
  if (src.size() != dst.size()) throw FormatError("store size disagrees with header");
  if constexpr (std::is_same_v<Store, BitStore>) {
    if (src.pad() != dst.pad()) throw FormatError("store pad disagrees with header");
  } else {
    if (src.counter_bits() != dst.counter_bits()) {
      throw FormatError("counter width disagrees with header");
    }
  }
  dst = std::move(src);
}

}  // namespace

struct SerialAccess {
  static void save(Writer& w, const ShbfM& f) {
    const auto& c = f.config_;
    write_header(w, Variant::kShbfM, c.m, c.k, c.max_offset, 0);
    write_prelude(w, c.seed, c.word_bits, f.inserted_);
    write_bits(w, f.bits_);
  }
  static void save(Writer& w, const CShbfM& f) {
    const auto& c = f.filter_.config_;
    write_header(w, Variant::kCShbfM, c.m, c.k, c.max_offset, f.counters_.counter_bits());
    write_prelude(w, c.seed, c.word_bits, f.filter_.inserted_);
    write_bits(w, f.filter_.bits_);
    write_counters(w, f.counters_);
  }
  static void save(Writer& w, const GenShbfM& f) {
    const auto& c = f.config_;
    write_header(w, Variant::kGenShbfM, c.m, c.k, c.max_offset, c.t);
    write_prelude(w, c.seed, c.word_bits, f.inserted_);
    write_bits(w, f.bits_);
  }
  static void save(Writer& w, const ShbfA& f) {
    const auto& c = f.config_;
    write_header(w, Variant::kShbfA, c.m, c.k, c.max_offset, f.distinct());
    write_prelude(w, c.seed, c.word_bits, f.distinct());
    write_bits(w, f.bits_);
  }
  static void save(Writer& w, const ShbfX& f) {
    const auto& c = f.config_;
    write_header(w, Variant::kShbfX, c.m, c.k, 0, c.max_count);
    write_prelude(w, c.seed, c.word_bits, f.distinct_);
    write_bits(w, f.bits_);
    write_counters(w, f.counters_);
  }
  static void save(Writer& w, const CmSketch& f) {
    const auto& c = f.config_;
    write_header(w, Variant::kCm, c.width, c.depth, 0, c.counter_bits);
    write_prelude(w, c.seed, c.word_bits, f.inserted_);
    write_counters(w, f.counters_);
  }
  static void save(Writer& w, const ScmSketch& f) {
    const auto& c = f.config_;
    write_header(w, Variant::kScm, c.width, c.depth, c.max_offset, c.counter_bits);
    write_prelude(w, c.seed, c.word_bits, f.inserted_);
    write_counters(w, f.counters_);
  }
  static void save(Writer& w, const StandardBf& f) {
    const auto& c = f.config_;
    write_header(w, Variant::kBf, c.m, c.k, 0, 0);
    write_prelude(w, c.seed, c.word_bits, f.inserted_);
    write_bits(w, f.bits_);
  }
  static void save(Writer& w, const CountingBf& f) {
    const auto& c = f.filter_.config_;
    write_header(w, Variant::kCbf, c.m, c.k, 0, f.counters_.counter_bits());
    write_prelude(w, c.seed, c.word_bits, f.filter_.inserted_);
    write_bits(w, f.filter_.bits_);
    write_counters(w, f.counters_);
  }
  static void save(Writer& w, const Ibf& f) {
    const auto& a = f.first_.config_;
    const auto& b = f.second_.config_;
    write_header(w, Variant::kIbf, a.m, a.k, 0, b.m);
    write_prelude(w, a.seed, a.word_bits, f.first_.inserted_);
    w.put(b.seed);
    w.put(f.second_.inserted_);
    write_bits(w, f.first_.bits_);
    write_bits(w, f.second_.bits_);
  }
  static void save(Writer& w, const SpectralBf& f) {
    const auto& c = f.config_;
    write_header(w, Variant::kSpectral, c.m, c.k, 0, c.counter_bits);
    write_prelude(w, c.seed, c.word_bits, 0);
    write_counters(w, f.counters_);
  }

  static AnyFilter load(Reader& r, const Header& h);

  static void set_tables(ShbfA& f, ElementSet s1, ElementSet s2) {
    f.s1_ = std::move(s1);
    f.s2_ = std::move(s2);
  }
  static void set_counts(ShbfX& f, CountTable counts, bool valid) {
    f.counts_ = std::move(counts);
    f.counts_valid_ = valid;
  }
};

AnyFilter SerialAccess::load(Reader& r, const Header& h) {
  const Prelude p = read_prelude(r);
  const unsigned wb = p.word_bits;
  const auto small = [](std::uint64_t v, const char* what) {
    if (v > 0xffffU) throw FormatError(std::string(what) + " out of range");
    return static_cast<unsigned>(v);
  };
  check_cells(h.m);
  switch (h.variant) {
    case Variant::kShbfM: {
      ShbfM f(ShbfMConfig{h.m, h.k, h.max_offset, wb, p.seed});
      assign(f.bits_, read_bits(r, wb));
      f.inserted_ = p.inserted;
      return f;
    }
    case Variant::kCShbfM: {
      CShbfM f(ShbfMConfig{h.m, h.k, h.max_offset, wb, p.seed}, small(h.extra, "counter width"));
      assign(f.filter_.bits_, read_bits(r, wb));
      assign(f.counters_, read_counters(r, wb));
      f.filter_.inserted_ = p.inserted;
      return f;
    }
    case Variant::kGenShbfM: {
      GenShbfM f(GenShbfMConfig{h.m, h.k, small(h.extra, "t"), h.max_offset, wb, p.seed});
      assign(f.bits_, read_bits(r, wb));
      f.inserted_ = p.inserted;
      return f;
    }
    case Variant::kShbfA: {
      ShbfA f(ShbfAConfig{h.m, h.k, h.max_offset, wb, p.seed});
      assign(f.bits_, read_bits(r, wb));
      return f;
    }
    case Variant::kShbfX: {
      auto bits = read_bits(r, wb);
      auto counters = read_counters(r, wb);
      ShbfX f(ShbfXConfig{h.m, h.k, small(h.extra, "max count"), wb, counters.counter_bits(),
                          p.seed});
      assign(f.bits_, std::move(bits));
      assign(f.counters_, std::move(counters));
      f.distinct_ = p.inserted;
      f.counts_valid_ = false;
      return f;
    }
    case Variant::kCm: {
      CmSketch f(CmConfig{h.k, h.m, small(h.extra, "counter width"), wb, p.seed});
      assign(f.counters_, read_counters(r, wb));
      f.inserted_ = p.inserted;
      return f;
    }
    case Variant::kScm: {
      ScmSketch f(
          ScmConfig{h.k, h.m, h.max_offset, small(h.extra, "counter width"), wb, p.seed});
      assign(f.counters_, read_counters(r, wb));
      f.inserted_ = p.inserted;
      return f;
    }
    case Variant::kBf: {
      StandardBf f(BfConfig{h.m, h.k, wb, p.seed});
      assign(f.bits_, read_bits(r, wb));
      f.inserted_ = p.inserted;
      return f;
    }
    case Variant::kCbf: {
      CountingBf f(BfConfig{h.m, h.k, wb, p.seed}, small(h.extra, "counter width"));
      assign(f.filter_.bits_, read_bits(r, wb));
      assign(f.counters_, read_counters(r, wb));
      f.filter_.inserted_ = p.inserted;
      return f;
    }
    case Variant::kIbf: {
      check_cells(h.extra);
      const auto seed2 = r.get<std::uint64_t>();
      const auto inserted2 = r.get<std::uint64_t>();
      Ibf f(BfConfig{h.m, h.k, wb, p.seed}, BfConfig{h.extra, h.k, wb, seed2});
      assign(f.first_.bits_, read_bits(r, wb));
      assign(f.second_.bits_, read_bits(r, wb));
      f.first_.inserted_ = p.inserted;
      f.second_.inserted_ = inserted2;
      return f;
    }
    case Variant::kSpectral: {
      SpectralBf f(SpectralConfig{h.m, h.k, small(h.extra, "counter width"), wb, p.seed});
      assign(f.counters_, read_counters(r, wb));
      return f;
    }
  }
  throw FormatError("unknown filter variant");
}

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::kShbfM: return "shbf-m";
    case Variant::kCShbfM: return "cshbf-m";
    case Variant::kGenShbfM: return "gen-shbf-m";
    case Variant::kShbfA: return "shbf-a";
    case Variant::kShbfX: return "shbf-x";
    case Variant::kCm: return "cm";
    case Variant::kScm: return "scm";
    case Variant::kBf: return "bf";
    case Variant::kCbf: return "cbf";
    case Variant::kIbf: return "ibf";
    case Variant::kSpectral: return "spectral";
  }
  return "unknown";
}

Header read_header(std::istream& in) {
  Reader r(in);
  std::array<char, 4> magic{};
  r.raw(magic.data(), magic.size());
  if (magic != kMagic) throw FormatError("bad magic");
  const auto version = r.get<std::uint16_t>();
  if (version != kFormatVersion) {
    throw FormatError("unsupported format version " + std::to_string(version));
  }
  Header h;
  const auto v = r.get<std::uint8_t>();
  if (v < 1 || v > 11) throw FormatError("unknown filter variant " + std::to_string(v));
  h.variant = static_cast<Variant>(v);
  h.m = r.get<std::uint64_t>();
  h.k = r.get<std::uint16_t>();
  h.max_offset = r.get<std::uint16_t>();
  h.extra = r.get<std::uint64_t>();
  return h;
}

#define SHBF_SAVE(T)                          \
  void save(std::ostream& out, const T& f) { \
    Writer w(out);                            \
    SerialAccess::save(w, f);                 \
    w.finish();                               \
  }
SHBF_SAVE(ShbfM)
SHBF_SAVE(CShbfM)
SHBF_SAVE(GenShbfM)
SHBF_SAVE(ShbfA)
SHBF_SAVE(ShbfX)
SHBF_SAVE(CmSketch)
SHBF_SAVE(ScmSketch)
SHBF_SAVE(StandardBf)
SHBF_SAVE(CountingBf)
SHBF_SAVE(Ibf)
SHBF_SAVE(SpectralBf)
#undef SHBF_SAVE

void save(std::ostream& out, const AnyFilter& f) {
  std::visit([&out](const auto& x) { save(out, x); }, f);
}

AnyFilter load_any(std::istream& in) {
  const Header h = read_header(in);
  Reader r(in);
  try {
    return SerialAccess::load(r, h);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid parameters: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw FormatError(std::string("invalid parameters: ") + e.what());
  }
}

std::string to_bytes(const AnyFilter& f) {
  std::ostringstream out(std::ios::binary);
  save(out, f);
  return std::move(out).str();
}

AnyFilter from_bytes(std::string_view bytes) {
  std::istringstream in(std::string(bytes), std::ios::binary);
  AnyFilter f = load_any(in);
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes");
  return f;
}

void save_file(const std::filesystem::path& path, const AnyFilter& f) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  save(out, f);
}

AnyFilter load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load_any(in);
}

namespace {

void write_set(Writer& w, const ElementSet& set) {
  // Sorted so identical sets give identical files.
  std::vector<std::string_view> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  w.put(static_cast<std::uint64_t>(sorted.size()));
  for (auto e : sorted) w.record(e);
}

ElementSet read_set(Reader& r) {
  const auto n = r.get<std::uint64_t>();
  if (n > kMaxCells) throw FormatError("set size out of range");
  ElementSet out;
  for (std::uint64_t i = 0; i < n; ++i) out.insert(r.record());
  return out;
}

}  // namespace

void save_sets(std::ostream& out, const ShbfA& f) {
  Writer w(out);
  write_set(w, f.s1());
  write_set(w, f.s2());
  w.finish();
}

void load_sets(std::istream& in, ShbfA& f) {
  Reader r(in);
  auto s1 = read_set(r);
  auto s2 = read_set(r);
  SerialAccess::set_tables(f, std::move(s1), std::move(s2));
}

void save_counts(std::ostream& out, const ShbfX& f) {
  Writer w(out);
  std::vector<std::pair<std::string_view, std::uint32_t>> sorted(f.counts().begin(),
                                                                 f.counts().end());
  std::sort(sorted.begin(), sorted.end());
  w.put(static_cast<std::uint8_t>(f.counts_valid() ? 1 : 0));
  w.put(static_cast<std::uint64_t>(sorted.size()));
  for (const auto& [e, c] : sorted) {
    w.record(e);
    w.put(c);
  }
  w.finish();
}

void load_counts(std::istream& in, ShbfX& f) {
  Reader r(in);
  const bool valid = r.get<std::uint8_t>() != 0;
  const auto n = r.get<std::uint64_t>();
  if (n > kMaxCells) throw FormatError("table size out of range");
  CountTable counts;
  for (std::uint64_t i = 0; i < n; ++i) {
    auto e = r.record();
    const auto c = r.get<std::uint32_t>();
    if (c == 0 || c > f.config().max_count) throw FormatError("count out of range");
    counts.emplace(std::move(e), c);
  }
  SerialAccess::set_counts(f, std::move(counts), valid);
}

}  // namespace shbf
