#pragma once

// Minimal RFC-4180 CSV reading/writing. Quoted fields may contain commas,
// doubled quotes, and embedded newlines.

#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "kwgraph/error.hpp"

namespace kwgraph::csv {

// Reads one logical record (possibly spanning physical lines inside quotes).
// Returns false at end of input. CRLF line endings are accepted.
inline bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  int c = in.get();
  if (c == EOF) return false;

  std::string field;
  bool quoted = false;
  bool any = false;
  while (true) {
    if (quoted) {
      if (c == EOF) throw DataError("csv: unterminated quoted field");
      if (c == '"') {
        int next = in.get();
        if (next == '"') {
          field.push_back('"');
        } else {
          quoted = false;
          c = next;
          continue;
        }
      } else {
        field.push_back(static_cast<char>(c));
      }
    } else {
      if (c == EOF || c == '\n') {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        fields.push_back(std::move(field));
        any = true;
        break;
      }
      if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else if (c == '"' && field.empty()) {
        quoted = true;
      } else {
        field.push_back(static_cast<char>(c));
      }
    }
    c = in.get();
  }
  return any;
}

inline bool needs_quoting(std::string_view s) {
  if (!s.empty() && (s.front() == ' ' || s.back() == ' ')) return true;
  for (char c : s)
    if (c == ',' || c == '"' || c == '\n' || c == '\r') return true;
  return false;
}

inline void write_field(std::ostream& out, std::string_view s) {
  if (!needs_quoting(s)) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

inline void write_record(std::ostream& out, const std::vector<std::string_view>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    write_field(out, fields[i]);
  }
  out << '\n';
}

// Numeric output helper: up to `digits` significant digits, trailing zeros trimmed.
inline std::string format_significant(double value, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

}  // namespace kwgraph::csv
