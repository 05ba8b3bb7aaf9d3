#include "shbf/bench/trace.hpp"

#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace shbf::bench {

namespace {

std::string describe(const std::string& source, const std::vector<TraceIssue>& issues) {
  std::ostringstream out;
  out << source << ": " << issues.size() << " malformed record(s)";
  for (const auto& issue : issues) {
    out << "\n  ";
    if (issue.line != 0) out << "line " << issue.line << ": ";
    out << issue.message;
  }
  return out.str();
}

int hex_value(char c) noexcept {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string_view trim(std::string_view s) noexcept {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::size_t count_distinct(const std::vector<std::string>& records) {
  std::unordered_set<std::string_view> seen(records.begin(), records.end());
  return seen.size();
}

}  // namespace

TraceFormat parse_trace_format(std::string_view name) {
  if (name == "raw13") return TraceFormat::kRaw13;
  if (name == "hexline") return TraceFormat::kHexLine;
  throw std::invalid_argument("unknown trace format '" + std::string(name) +
                              "' (expected raw13 or hexline)");
}

std::string_view to_string(TraceFormat format) noexcept {
  return format == TraceFormat::kRaw13 ? "raw13" : "hexline";
}

TraceParseError::TraceParseError(std::string source, std::vector<TraceIssue> issues)
    : FormatError(describe(source, issues)), issues_(std::move(issues)) {}

std::vector<std::string> TraceCorpus::distinct() const {
  std::unordered_set<std::string_view> seen;
  std::vector<std::string> out;
  for (const auto& r : records) {
    if (seen.insert(r).second) out.push_back(r);
  }
  return out;
}

TraceCorpus ingest(std::istream& in, TraceFormat format, std::string source) {
  TraceCorpus corpus;
  corpus.source = std::move(source);
  std::vector<TraceIssue> issues;

  if (format == TraceFormat::kRaw13) {
    const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (data.size() % kKeyBytes != 0) {
      issues.push_back({0, "length " + std::to_string(data.size()) + " is not a multiple of " +
                               std::to_string(kKeyBytes)});
    } else {
      corpus.records.reserve(data.size() / kKeyBytes);
      for (std::size_t off = 0; off < data.size(); off += kKeyBytes) {
        corpus.records.push_back(data.substr(off, kKeyBytes));
      }
    }
  } else {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      const auto text = trim(line);
      if (text.empty() || text.front() == '#') continue;
      if (text.size() != 2 * kKeyBytes) {
        issues.push_back({number, "expected " + std::to_string(2 * kKeyBytes) +
                                      " hex digits, got " + std::to_string(text.size())});
        continue;
      }
      std::string record(kKeyBytes, '\0');
      bool ok = true;
      for (std::size_t i = 0; i < kKeyBytes && ok; ++i) {
        const int hi = hex_value(text[2 * i]);
        const int lo = hex_value(text[2 * i + 1]);
        ok = hi >= 0 && lo >= 0;
        record[i] = static_cast<char>(hi * 16 + lo);
      }
      if (!ok) {
        issues.push_back({number, "non-hex character"});
        continue;
      }
      corpus.records.push_back(std::move(record));
    }
  }

  if (!issues.empty()) throw TraceParseError(corpus.source, std::move(issues));
  if (corpus.records.empty()) throw TraceParseError(corpus.source, {{0, "no records"}});
  corpus.distinct_count = count_distinct(corpus.records);
  return corpus;
}

TraceCorpus ingest(const std::filesystem::path& path, TraceFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open trace " + path.string());
  return ingest(in, format, path.string());
}

TraceCorpus synthetic_corpus(std::uint64_t seed, std::size_t n, KeyStream stream) {
  TraceCorpus corpus;
  corpus.source = "synthetic:" + std::to_string(seed);
  corpus.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    corpus.records.emplace_back(as_element(synthetic_key(seed, stream, i)));
  }
  corpus.distinct_count = n;
  return corpus;
}

void write_trace(std::ostream& out, const TraceCorpus& corpus, TraceFormat format) {
  static constexpr char kDigits[] = "0123456789abcdef";
  for (const auto& r : corpus.records) {
    if (format == TraceFormat::kRaw13) {
      out.write(r.data(), static_cast<std::streamsize>(r.size()));
      continue;
    }
    for (unsigned char c : r) out << kDigits[c >> 4] << kDigits[c & 15];
    out << '\n';
  }
}

}  // namespace shbf::bench
