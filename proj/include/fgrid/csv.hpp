#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fgrid/common.hpp"

namespace fgrid {
namespace csv {

// A CSV file with '#'-prefixed comment lines ahead of the header row.
struct Table {
  std::vector<std::string> comments; // stored without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::string quoted_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string fmt_cell(double x) { return detail::fmt17(x); }

// Complex values travel as a single token: "re" when purely real, else "re<+/->imi".
inline std::string fmt_cell(cd z) {
  if (z.imag() == 0.0) return detail::fmt17(z.real());
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

inline std::optional<cd> parse_complex(const std::string& token) {
  const char* s = token.c_str();
  char* end = nullptr;
  const double re = std::strtod(s, &end);
  if (end == s) return std::nullopt;
  if (*end == '\0') return cd(re, 0.0);
  char* end2 = nullptr;
  const double im = std::strtod(end, &end2);
  if (end2 == end || *end2 != 'i' || *(end2 + 1) != '\0') return std::nullopt;
  return cd(re, im);
}

inline void write(const Table& t, std::ostream& os) {
  for (const auto& c : t.comments) os << "# " << c << "\n";
  for (std::size_t i = 0; i < t.header.size(); ++i)
    os << (i ? "," : "") << quoted_if_needed(t.header[i]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << quoted_if_needed(row[i]);
    os << "\n";
  }
}

inline void write_file(const Table& t, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("csv: cannot open for writing: " + path);
  write(t, os);
  if (!os) throw std::runtime_error("csv: write failed: " + path);
}

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

inline Table read(std::istream& is) {
  Table t;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string c = line.substr(1);
      if (!c.empty() && c[0] == ' ') c.erase(0, 1);
      t.comments.push_back(c);
      continue;
    }
    if (!have_header) {
      t.header = split_line(line);
      have_header = true;
    } else {
      t.rows.push_back(split_line(line));
    }
  }
  return t;
}

inline Table read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("csv: cannot open: " + path);
  return read(is);
}

} // namespace csv
} // namespace fgrid
