// Copyright 2026 The bipexp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal reader for the numeric CSV files the library consumes. Fields are
// unquoted; blank lines are skipped; errors carry source:line.

#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bipexp/error.hpp"

namespace bipexp::csv {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Row {
  std::size_t line;
  std::vector<std::string_view> fields;
};

/// Splits text into the header row and the data rows. The text must outlive
/// the returned views.
struct Table {
  Row header;
  std::vector<Row> rows;
};

inline Table parse(std::string_view text, const std::string& source) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  Table t;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = trim(text.substr(pos, nl - pos));
    ++line_no;
    pos = nl + 1;
    if (line.empty()) continue;
    if (!have_header) {
      t.header = {line_no, split(line)};
      have_header = true;
    } else {
      t.rows.push_back({line_no, split(line)});
    }
  }
  if (!have_header) fail(ErrorCode::kParseError, source + ": empty file, header expected");
  return t;
}

[[noreturn]] inline void row_error(const std::string& source, std::size_t line, const std::string& what) {
  fail(ErrorCode::kParseError, source + ":" + std::to_string(line) + ": " + what);
}

inline long long to_int(std::string_view f, const std::string& source, std::size_t line) {
  long long v = 0;
  auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || p != f.data() + f.size()) {
    row_error(source, line, "expected integer, got '" + std::string(f) + "'");
  }
  return v;
}

inline double to_double(std::string_view f, const std::string& source, std::size_t line) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || p != f.data() + f.size() || !std::isfinite(v)) {
    row_error(source, line, "expected finite number, got '" + std::string(f) + "'");
  }
  return v;
}

inline std::size_t column(const Table& t, std::string_view name, const std::string& source) {
  for (std::size_t c = 0; c < t.header.fields.size(); ++c) {
    if (t.header.fields[c] == name) return c;
  }
  fail(ErrorCode::kParseError, source + ":" + std::to_string(t.header.line) + ": missing column '" +
                                   std::string(name) + "'");
}

}  // namespace bipexp::csv
