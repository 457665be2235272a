#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace trilat::csv {

/// Shortest round-trip decimal form; parsing it back recovers the exact
/// double, which the aggregate-recomputation guarantees rely on.
std::string format_double(double v);

double parse_double(std::string_view sv);
std::uint64_t parse_u64(std::string_view sv);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Index of a named column; throws std::out_of_range when absent.
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::size_t col) const;
};

/// Parses CSV text: '#' lines are comments, the first data line is the
/// header. Throws std::runtime_error on ragged rows.
Table parse(std::string_view text);
Table read_file(const std::string& path);

}  // namespace trilat::csv
