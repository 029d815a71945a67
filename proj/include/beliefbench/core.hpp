#pragma once

// Shared identifiers, error types and small helpers used across beliefbench.

#include <array>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace beliefbench {

// The eight beliefs under test, B1..B8.
enum class Belief : int { B1 = 1, B2, B3, B4, B5, B6, B7, B8 };

inline constexpr std::array<Belief, 8> kAllBeliefs = {
    Belief::B1, Belief::B2, Belief::B3, Belief::B4,
    Belief::B5, Belief::B6, Belief::B7, Belief::B8};

inline std::string to_string(Belief b) {
  return "B" + std::to_string(static_cast<int>(b));
}

inline std::optional<Belief> belief_from_string(std::string_view s) {
  for (Belief b : kAllBeliefs)
    if (to_string(b) == s) return b;
  return std::nullopt;
}

enum class FileCategory { Source, Test, Config, Static };

inline constexpr std::array<FileCategory, 4> kAllCategories = {
    FileCategory::Source, FileCategory::Test, FileCategory::Config,
    FileCategory::Static};

// Categories that feed belief correlations, in the C/T/S reporting order.
// Static files never enter any analysis.
inline constexpr std::array<FileCategory, 3> kAnalyzedCategories = {
    FileCategory::Config, FileCategory::Test, FileCategory::Source};

inline std::string to_string(FileCategory c) {
  switch (c) {
    case FileCategory::Source: return "Source";
    case FileCategory::Test: return "Test";
    case FileCategory::Config: return "Config";
    case FileCategory::Static: return "Static";
  }
  return "?";
}

inline std::optional<FileCategory> category_from_string(std::string_view s) {
  for (FileCategory c : kAllCategories)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

// Fatal problems with user-supplied inputs: bad repository, unreadable
// manifest, missing extracts.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed structured files; the message names the offending location.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unsatisfiable synthetic-history specifications.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start])))
    ++start;
  return s.substr(start);
}

inline std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

// Replaces ill-formed UTF-8 (stray bytes, overlongs, surrogates,
// out-of-range) with U+FFFD so extracted text always serializes as JSON.
// Old repositories do carry Latin-1 commit messages.
inline std::string utf8_sanitize(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
      out.push_back(s[i++]);
      continue;
    }
    std::size_t len = 0;
    unsigned cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1Fu;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0Fu;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07u;
    }
    bool ok = len > 0 && i + len <= s.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      const unsigned char bk = static_cast<unsigned char>(s[i + k]);
      if ((bk & 0xC0) != 0x80)
        ok = false;
      else
        cp = (cp << 6) | (bk & 0x3Fu);
    }
    if (ok) {
      if (len == 2 && cp < 0x80) ok = false;
      if (len == 3 && (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF))) ok = false;
      if (len == 4 && (cp < 0x10000 || cp > 0x10FFFF)) ok = false;
    }
    if (!ok) {
      out += "\xEF\xBF\xBD";
      ++i;
      continue;
    }
    out.append(s.substr(i, len));
    i += len;
  }
  return out;
}

// Accepts a raw epoch-seconds integer or "YYYY-MM-DD"; a bare date is taken
// as the end of that UTC day so a pin like 2019-06-30 includes the whole day.
inline int64_t parse_timestamp(const std::string& s) {
  if (s.empty()) throw InputError("empty timestamp");
  bool digits = true;
  for (size_t i = 0; i < s.size(); ++i)
    if (!(std::isdigit(static_cast<unsigned char>(s[i])) || (i == 0 && s[i] == '-')))
      digits = false;
  if (digits) {
    int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
      throw InputError("bad timestamp: " + s);
    return v;
  }
  int y = 0, m = 0, d = 0;
  if (std::sscanf(s.c_str(), "%d-%d-%d", &y, &m, &d) != 3 || m < 1 || m > 12 ||
      d < 1 || d > 31)
    throw InputError("bad date (want YYYY-MM-DD or epoch seconds): " + s);
  std::tm tm = {};
  tm.tm_year = y - 1900;
  tm.tm_mon = m - 1;
  tm.tm_mday = d;
  tm.tm_hour = 23;
  tm.tm_min = 59;
  tm.tm_sec = 59;
  return static_cast<int64_t>(timegm(&tm));
}

inline std::string format_utc_date(int64_t ts) {
  std::time_t t = static_cast<std::time_t>(ts);
  std::tm tm = {};
  gmtime_r(&t, &tm);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday);
  return buf;
}

}  // namespace beliefbench
