#pragma once

// Small string helpers shared by the text-format parsers and printers.

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "omegarl/error.hpp"

namespace omegarl {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) out.push_back(text.substr(start));
      break;
    }
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    start = nl + 1;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  std::size_t b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::string_view strip_comment(std::string_view s, char marker) {
  std::size_t p = s.find(marker);
  return p == std::string_view::npos ? s : s.substr(0, p);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::vector<std::string> split_list(std::string_view s, char sep = ',') {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t p = s.find(sep, start);
    std::string_view item = trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
    if (!item.empty()) out.emplace_back(item);
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

inline std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

/// Shortest representation that round-trips.
inline std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, p) : std::to_string(v);
}

inline double parse_double(std::string_view tok, std::size_t line) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError("expected a number, got '" + std::string(tok) + "'", line, 1);
  return v;
}

/// Decimal literal or a fraction "n/d".
inline double parse_probability(std::string_view tok, std::size_t line) {
  std::size_t slash = tok.find('/');
  if (slash == std::string_view::npos) return parse_double(tok, line);
  double num = parse_double(tok.substr(0, slash), line);
  double den = parse_double(tok.substr(slash + 1), line);
  if (den == 0.0) throw ParseError("division by zero in probability", line, 1);
  return num / den;
}

}  // namespace omegarl
