#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace shbf::bench {

/// A result table with a fixed column list. Cells are stored as text so
/// output is byte-identical for identical inputs.
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  Table& add_row(std::vector<std::string> cells);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

  /// RFC 4180 quoting; rows end with '\n'.
  void write_csv(std::ostream& out) const;
  std::string to_csv() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Shortest round-trippable decimal for finite values, "nan" / "inf" otherwise.
std::string cell(double value);
std::string cell(std::uint64_t value);
std::string cell(unsigned value);
std::string cell(std::string value);
std::string cell(const char* value);

}  // namespace shbf::bench
