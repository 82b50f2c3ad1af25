// Internal CSV field helpers shared by the readers/writers in src/. The
// format is line-oriented: fields may carry commas and quotes (RFC4180-style
// quoting) but never newlines.
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nftcycles::csv {

// Splits one line; a field starting with '"' is quoted, "" escapes a quote.
// Returns false on an unterminated quote or junk after a closing quote.
inline bool split_fields(std::string_view line, std::vector<std::string>& out) {
  out.clear();
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (true) {
    std::string field;
    if (i < n && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < n) {
        char c = line[i];
        if (c == '"') {
          if (i + 1 < n && line[i + 1] == '"') {
            field.push_back('"');
            i += 2;
          } else {
            ++i;
            closed = true;
            break;
          }
        } else {
          field.push_back(c);
          ++i;
        }
      }
      if (!closed) return false;
      if (i < n && line[i] != ',') return false;
    } else {
      std::size_t comma = line.find(',', i);
      if (comma == std::string_view::npos) comma = n;
      field.assign(line, i, comma - i);
      i = comma;
    }
    out.push_back(std::move(field));
    if (i >= n) return true;
    ++i;  // skip comma; a trailing comma yields a final empty field
  }
}

// Appends with minimal quoting, so already-canonical fields pass through
// byte-identically.
inline void append_field(std::string& out, std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    out.append(field);
    return;
  }
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace nftcycles::csv
