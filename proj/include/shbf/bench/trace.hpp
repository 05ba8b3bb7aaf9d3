#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "shbf/errors.hpp"
#include "shbf/keys.hpp"

namespace shbf::bench {

/// raw13: back-to-back 13-byte records. hexline: one record per line as
/// 26 hex digits; blank lines and lines starting with '#' are skipped.
enum class TraceFormat { kRaw13, kHexLine };

/// Throws std::invalid_argument for names other than "raw13" / "hexline".
TraceFormat parse_trace_format(std::string_view name);
std::string_view to_string(TraceFormat format) noexcept;

struct TraceIssue {
  std::size_t line = 0;  ///< 1-based; 0 for whole-file problems
  std::string message;
};

/// Thrown by ingest; lists every malformed line.
class TraceParseError : public FormatError {
 public:
  TraceParseError(std::string source, std::vector<TraceIssue> issues);
  const std::vector<TraceIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<TraceIssue> issues_;
};

struct TraceCorpus {
  std::vector<std::string> records;  ///< each exactly kKeyBytes long
  std::size_t distinct_count = 0;
  std::string source;                ///< file path, or "synthetic:<seed>"

  bool empty() const noexcept { return records.empty(); }
  std::size_t size() const noexcept { return records.size(); }
  /// Records in first-occurrence order with repeats dropped.
  std::vector<std::string> distinct() const;
};

TraceCorpus ingest(const std::filesystem::path& path, TraceFormat format);
TraceCorpus ingest(std::istream& in, TraceFormat format, std::string source);

/// n synthetic 13-byte keys from one stream; identical for identical arguments.
TraceCorpus synthetic_corpus(std::uint64_t seed, std::size_t n,
                             KeyStream stream = KeyStream::kMembers);

void write_trace(std::ostream& out, const TraceCorpus& corpus, TraceFormat format);

}  // namespace shbf::bench
