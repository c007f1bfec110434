#include "prorata/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "prorata/error.hpp"

namespace prorata {
namespace {

std::string quote_if_needed(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  if (quoted) throw DomainError("csv: unterminated quoted field");
  cells.push_back(std::move(cell));
  return cells;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_number(long long value) { return std::to_string(value); }

double parse_number(const std::string& text) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw DomainError("not a number: '" + text + "'");
  }
  return value;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw DomainError("table: row has " + std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(cells));
}

std::size_t Table::column_index(const std::string& name) const {
  auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw DomainError("table: no column '" + name + "'");
  return static_cast<std::size_t>(it - columns_.begin());
}

void Table::write_csv(std::ostream& out) const {
  auto write_line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ',';
      out << quote_if_needed(cells[i]);
    }
    out << '\n';
  };
  write_line(columns_);
  for (const auto& row : rows_) write_line(row);
}

void Table::write_pretty(std::ostream& out) const {
  std::vector<std::size_t> width(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    width[c] = columns_[c].size();
    for (const auto& row : rows_) width[c] = std::max(width[c], row[c].size());
  }
  auto write_line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out << "  ";
      out << cells[c];
      if (c + 1 < cells.size()) out << std::string(width[c] - cells[c].size(), ' ');
    }
    out << '\n';
  };
  write_line(columns_);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.emplace_back(w, '-');
  write_line(rule);
  for (const auto& row : rows_) write_line(row);
}

Table Table::read_csv(std::istream& in) {
  std::string line;
  Table table;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (header) {
      table.columns_ = std::move(cells);
      header = false;
    } else {
      table.add_row(std::move(cells));
    }
  }
  if (header) throw DomainError("csv: missing header line");
  return table;
}

}  // namespace prorata
