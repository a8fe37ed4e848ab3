#pragma once

// Internal text helpers shared by the CSV and key-value readers.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace freight::detail {

std::string_view trim(std::string_view text);
std::string to_lower(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char sep);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

double parse_double(std::string_view text, std::string_view what);
std::int64_t parse_int(std::string_view text, std::string_view what);
std::uint64_t parse_uint64(std::string_view text, std::string_view what);
bool parse_bool(std::string_view text, std::string_view what);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Header-addressed CSV table. Fields are split on ',' and trimmed; quoting
/// is not supported. Blank lines are skipped.
class CsvTable {
 public:
  static CsvTable read(const std::filesystem::path& path,
                       const std::vector<std::string_view>& required_columns);

  std::size_t rows() const { return rows_.size(); }
  std::string_view field(std::size_t row, std::string_view column) const;
  /// 1-based source line of a data row, for error messages.
  std::size_t line_of(std::size_t row) const { return lines_[row]; }
  const std::string& source() const { return source_; }
  /// "file:line" prefix for a row.
  std::string where(std::size_t row) const;

 private:
  std::string source_;
  std::unordered_map<std::string, std::size_t> columns_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::size_t> lines_;
};

}  // namespace freight::detail
