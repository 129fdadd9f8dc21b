#include "panelkit/detail/strings.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace panelkit::detail {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n'))
    ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' ||
                   s[e - 1] == '\n'))
    --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) pos = s.size();
    std::string piece = trim(s.substr(start, pos - start));
    if (!piece.empty()) out.push_back(std::move(piece));
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (c == '\r' && i + 1 == line.size()) {
      // drop
    } else {
      field += c;
    }
  }
  out.push_back(std::move(field));
  return out;
}

std::string format_full(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string format_table_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";

  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  std::string raw(buf);

  bool negative = !raw.empty() && raw[0] == '-';
  std::size_t digits_begin = negative ? 1 : 0;
  std::size_t dot = raw.find('.');
  std::string int_part = raw.substr(digits_begin, dot - digits_begin);
  std::string frac_part = raw.substr(dot);  // includes '.'

  std::string grouped;
  grouped.reserve(int_part.size() + int_part.size() / 3);
  std::size_t lead = int_part.size() % 3;
  if (lead == 0) lead = 3;
  for (std::size_t i = 0; i < int_part.size(); ++i) {
    if (i != 0 && (i - lead) % 3 == 0 && i >= lead) grouped += ',';
    grouped += int_part[i];
  }

  std::string out;
  if (negative) out += '-';
  out += grouped;
  out += frac_part;
  return out;
}

}  // namespace panelkit::detail
