#pragma once

// Minimal tabular output: CSV for machines, aligned text for people. Numbers
// are written in shortest round-trip form so reruns are byte-identical and
// parsing a CSV back yields the same doubles.

#include <iosfwd>
#include <string>
#include <vector>

namespace prorata {

std::string format_number(double value);
std::string format_number(long long value);
inline std::string format_number(int value) { return format_number(static_cast<long long>(value)); }
inline std::string format_bool(bool value) { return value ? "true" : "false"; }

/// Parses a double written by format_number (or any decimal/exponent form,
/// plus "nan", "inf", "-inf"). Throws DomainError on trailing garbage.
double parse_number(const std::string& text);

class Table {
 public:
  Table() = default;
  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<std::string> cells);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }
  std::size_t column_index(const std::string& name) const;

  void write_csv(std::ostream& out) const;
  void write_pretty(std::ostream& out) const;

  /// Reads a header line and comma-separated rows. Fields may be quoted with
  /// double quotes; blank lines are skipped.
  static Table read_csv(std::istream& in);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace prorata
