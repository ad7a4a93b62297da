#include "stagdep/util.hpp"

#include <cstdio>
#include <cstdlib>

namespace stagdep {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
  return s.substr(b, e - b);
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

namespace {
// Byte length of the UTF-8 sequence starting at s[i]; malformed bytes count as 1.
size_t seq_len(std::string_view s, size_t i) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  size_t len = 1;
  if ((c & 0xE0) == 0xC0) len = 2;
  else if ((c & 0xF0) == 0xE0) len = 3;
  else if ((c & 0xF8) == 0xF0) len = 4;
  if (i + len > s.size()) len = 1;
  return len;
}

std::vector<size_t> char_starts(std::string_view s) {
  std::vector<size_t> starts;
  for (size_t i = 0; i < s.size();) {
    starts.push_back(i);
    i += seq_len(s, i);
  }
  starts.push_back(s.size());
  return starts;
}
}  // namespace

int utf8_length(std::string_view s) {
  return static_cast<int>(char_starts(s).size()) - 1;
}

std::string utf8_prefix(std::string_view s, int n) {
  std::vector<size_t> starts = char_starts(s);
  int chars = static_cast<int>(starts.size()) - 1;
  if (n >= chars) return std::string(s);
  return std::string(s.substr(0, starts[static_cast<size_t>(n)]));
}

std::string utf8_suffix(std::string_view s, int n) {
  std::vector<size_t> starts = char_starts(s);
  int chars = static_cast<int>(starts.size()) - 1;
  if (n >= chars) return std::string(s);
  size_t from = starts[static_cast<size_t>(chars - n)];
  return std::string(s.substr(from));
}

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string hex16(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_double(double v) {
  // Try increasing precision until the decimal round-trips exactly.
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string format_pct(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
  return buf;
}

std::string format_pct_signed(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%+.2f", fraction * 100.0);
  return buf;
}

}  // namespace stagdep
