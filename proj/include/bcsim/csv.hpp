#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "bcsim/errors.hpp"

namespace bcsim::csv {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

struct Row {
  std::vector<std::string> fields;
  int line_number = 0;
};

// Reads a CSV with a mandatory header row. Blank lines are skipped.
inline std::vector<Row> read_file(const std::string& path, std::vector<std::string>* header) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::vector<Row> rows;
  std::string line;
  int line_number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    if (!have_header) {
      if (header) *header = split(line);
      have_header = true;
      continue;
    }
    rows.push_back({split(line), line_number});
  }
  if (!have_header) throw ConfigError(path + ": missing header row");
  return rows;
}

inline double parse_double(const std::string& text, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": not a number: '" + text + "'");
  }
}

inline long long parse_int(const std::string& text, const std::string& where) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": not an integer: '" + text + "'");
  }
}

}  // namespace bcsim::csv
