// Copyright 2026 The EcoDiag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Text helpers shared by the file-format readers and renderers: a small
// RFC-4180 style CSV reader, strict number parsing and stable formatting.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ecodiag/error.hpp"

namespace ecodiag::text {

inline std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

inline std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

inline bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

// One physical-or-logical CSV record. `line` is the 1-based line the record
// starts on; `columns[i]` is the 1-based character column of field i.
struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
  std::vector<std::size_t> columns;
};

struct CsvOptions {
  char delimiter = ',';
  // Lines whose first character is '#' are skipped, as are blank lines.
  bool skip_comments = true;
};

// Splits `content` into records. Quoted fields may contain the delimiter,
// doubled quotes and newlines. Throws ParseError on an unterminated quote or
// on characters following a closing quote.
inline std::vector<CsvRecord> read_csv(std::string_view content, CsvOptions options = {}) {
  std::vector<CsvRecord> records;
  std::size_t pos = 0;
  std::size_t line = 1;
  if (starts_with(content, "\xEF\xBB\xBF")) pos = 3;  // UTF-8 BOM

  while (pos < content.size()) {
    const std::size_t eol = content.find('\n', pos);
    std::string_view raw = content.substr(pos, eol == std::string_view::npos ? content.npos : eol - pos);
    if (trim(raw).empty() || (options.skip_comments && !raw.empty() && raw.front() == '#')) {
      pos = eol == std::string_view::npos ? content.size() : eol + 1;
      ++line;
      continue;
    }

    CsvRecord rec;
    rec.line = line;
    std::string field;
    std::size_t field_col = 1;
    std::size_t col = 1;
    bool in_quotes = false;
    bool after_quote = false;
    std::size_t quote_line = line;
    std::size_t quote_col = 1;

    auto finish_field = [&] {
      rec.fields.push_back(std::move(field));
      rec.columns.push_back(field_col);
      field.clear();
      after_quote = false;
    };

    bool done = false;
    while (!done) {
      if (pos >= content.size()) {
        if (in_quotes) throw ParseError("unterminated quoted field", quote_line, quote_col);
        finish_field();
        done = true;
        break;
      }
      const char c = content[pos];
      if (in_quotes) {
        if (c == '"') {
          if (pos + 1 < content.size() && content[pos + 1] == '"') {
            field.push_back('"');
            pos += 2;
            col += 2;
            continue;
          }
          in_quotes = false;
          after_quote = true;
        } else {
          field.push_back(c);
          if (c == '\n') {
            ++line;
            col = 0;
          }
        }
        ++pos;
        ++col;
        continue;
      }
      if (c == '\n' || c == '\r') {
        finish_field();
        if (c == '\r' && pos + 1 < content.size() && content[pos + 1] == '\n') ++pos;
        ++pos;
        ++line;
        done = true;
        break;
      }
      if (c == options.delimiter) {
        finish_field();
        ++pos;
        ++col;
        field_col = col;
        continue;
      }
      if (after_quote) throw ParseError("unexpected character after closing quote", line, col);
      if (c == '"' && field.empty()) {
        in_quotes = true;
        quote_line = line;
        quote_col = col;
      } else {
        field.push_back(c);
      }
      ++pos;
      ++col;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

inline std::string csv_escape(std::string_view field, char delimiter = ',') {
  const bool needs_quotes = field.find_first_of(std::string{delimiter} + "\"\n\r") != std::string_view::npos ||
                            (!field.empty() && field.front() == '#');
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Strict decimal parse: the whole (trimmed) field must be consumed and the
// value must be finite. Returns nullopt otherwise.
inline std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, std::chars_format::general);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

inline std::optional<long long> to_integer(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Shortest representation that parses back to the same double.
inline std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

// Fixed-point with `decimals` digits, "-0.0" normalised to "0.0".
inline std::string format_fixed(double value, int decimals = 1) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string out(buf);
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

// `key=value;key=value` lists used in the fleet CSV `extra` column.
inline std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view s) {
  std::vector<std::pair<std::string, std::string>> out;
  while (!s.empty()) {
    const std::size_t semi = s.find(';');
    std::string_view item = trim(s.substr(0, semi));
    s = semi == std::string_view::npos ? std::string_view{} : s.substr(semi + 1);
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      out.emplace_back(std::string(item), std::string{});
    } else {
      out.emplace_back(std::string(trim(item.substr(0, eq))), std::string(trim(item.substr(eq + 1))));
    }
  }
  return out;
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace ecodiag::text
