// Small CSV utilities shared by the command-line tool and its tests:
// locale-independent parsing and round-trip-safe numeric formatting.

#pragma once

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace levytail {

class CsvError : public std::runtime_error {
 public:
  explicit CsvError(const std::string& what) : std::runtime_error(what) {}
};

// 17 significant digits: parses back to the identical double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (ch != '\r') {
      cell.push_back(ch);
    }
  }
  cells.push_back(cell);
  return cells;
}

inline bool parse_double_strict(const std::string& text, double& out) {
  if (text.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || errno == ERANGE) return false;
  while (*end == ' ' || *end == '\t') ++end;
  return *end == '\0';
}

struct CsvColumn {
  std::vector<double> values;
  std::size_t dropped_rows = 0;  // rows with an empty cell in the column
  std::string column_name;
  bool had_header = false;
};

// Reads one numeric column.  A header row is detected by a non-numeric first
// line; `column` selects by name (headered files) or 0-based index.  Rows with
// an empty cell are dropped and counted; any other non-numeric cell is an
// error that reports the 1-based row number.
inline CsvColumn read_csv_column(const std::string& path,
                                 const std::string& column = "") {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open input file: " + path);
  CsvColumn out;
  std::string line;
  std::size_t row = 0;
  std::size_t col_index = 0;
  bool col_resolved = false;

  auto resolve_index = [&](const std::vector<std::string>& cells, bool header) {
    if (column.empty()) {
      col_index = 0;
      return true;
    }
    if (header) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c] == column) {
          col_index = c;
          out.column_name = column;
          return true;
        }
      }
    }
    double ignored;
    char* end = nullptr;
    const long idx = std::strtol(column.c_str(), &end, 10);
    if (end != column.c_str() && *end == '\0' && idx >= 0) {
      col_index = static_cast<std::size_t>(idx);
      (void)ignored;
      return true;
    }
    return false;
  };

  while (std::getline(in, line)) {
    ++row;
    if (line.empty() && in.eof()) break;
    const auto cells = split_csv_line(line);
    if (row == 1) {
      double probe;
      bool numeric_first = false;
      for (const auto& c : cells) {
        if (parse_double_strict(c, probe)) {
          numeric_first = true;
          break;
        }
      }
      const bool all_empty = [&] {
        for (const auto& c : cells)
          if (!c.empty()) return false;
        return true;
      }();
      if (!numeric_first && !all_empty) {
        out.had_header = true;
        if (!resolve_index(cells, true))
          throw CsvError("column '" + column + "' not found in header");
        col_resolved = true;
        continue;
      }
    }
    if (!col_resolved) {
      if (!resolve_index(cells, false))
        throw CsvError("column '" + column + "' is not a valid index");
      col_resolved = true;
    }
    if (col_index >= cells.size()) {
      ++out.dropped_rows;
      continue;
    }
    const std::string& cell = cells[col_index];
    if (cell.empty()) {
      ++out.dropped_rows;
      continue;
    }
    double value;
    if (!parse_double_strict(cell, value))
      throw CsvError("row " + std::to_string(row) + ": non-numeric value '" + cell +
                     "'");
    out.values.push_back(value);
  }
  if (out.values.empty()) throw CsvError("no numeric data in " + path);
  return out;
}

}  // namespace levytail
