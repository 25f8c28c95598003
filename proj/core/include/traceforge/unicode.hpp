#pragma once
// Minimal UTF-8 and text helpers shared across the toolkit.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace traceforge {

inline constexpr uint32_t kInvalidCodePoint = 0xFFFFFFFFu;

// Decodes the code point starting at s[i] and advances i past it. Malformed
// sequences (bad continuation bytes, overlong forms, surrogates, > U+10FFFF)
// yield kInvalidCodePoint and advance by a single byte.
inline uint32_t decode_utf8(std::string_view s, size_t& i) {
  const auto byte = [&](size_t k) { return static_cast<unsigned char>(s[k]); };
  unsigned char b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  size_t len = 0;
  uint32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return kInvalidCodePoint;
  }
  if (i + len > s.size()) {
    ++i;
    return kInvalidCodePoint;
  }
  for (size_t k = 1; k < len; ++k) {
    unsigned char b = byte(i + k);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return kInvalidCodePoint;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr uint32_t kMinForLen[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMinForLen[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++i;
    return kInvalidCodePoint;
  }
  i += len;
  return cp;
}

inline bool is_valid_utf8(std::string_view s) {
  size_t i = 0;
  while (i < s.size()) {
    if (decode_utf8(s, i) == kInvalidCodePoint) return false;
  }
  return true;
}

inline size_t count_code_points(std::string_view s) {
  size_t i = 0, n = 0;
  while (i < s.size()) {
    decode_utf8(s, i);
    ++n;
  }
  return n;
}

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string_view trim_view(std::string_view s) {
  size_t b = 0;
  while (b < s.size() && is_ascii_space(s[b])) ++b;
  size_t e = s.size();
  while (e > b && is_ascii_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

inline std::string trim(std::string_view s) { return std::string(trim_view(s)); }

// Whitespace runs become single spaces; leading/trailing whitespace dropped.
inline std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_ascii_space(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

// Number of maximal non-whitespace runs; the toolkit's default token count.
inline size_t count_whitespace_tokens(std::string_view s) {
  size_t n = 0;
  bool in_token = false;
  for (char c : s) {
    bool space = is_ascii_space(c);
    if (!space && !in_token) ++n;
    in_token = !space;
  }
  return n;
}

}  // namespace traceforge
