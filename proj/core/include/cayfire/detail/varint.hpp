#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "cayfire/error.hpp"

namespace cayfire::detail {

// Canonical integer wire form: zigzag + LEB128. Self-delimiting, platform
// independent, and no encoding is a proper prefix of another (the
// continuation bit differs), so concatenations parse unambiguously.

inline uint64_t zigzag(int64_t x) {
  return (static_cast<uint64_t>(x) << 1) ^ static_cast<uint64_t>(x >> 63);
}

inline int64_t unzigzag(uint64_t u) {
  return static_cast<int64_t>((u >> 1) ^ (~(u & 1) + 1));
}

inline void put_uvarint(std::string& out, uint64_t u) {
  while (u >= 0x80) {
    out.push_back(static_cast<char>((u & 0x7f) | 0x80));
    u >>= 7;
  }
  out.push_back(static_cast<char>(u));
}

inline void put_varint(std::string& out, int64_t x) {
  put_uvarint(out, zigzag(x));
}

// A cursor over encoded bytes. Throws ParseError on truncation/overflow.
struct ByteReader {
  std::string_view data;
  size_t pos = 0;

  bool done() const { return pos == data.size(); }

  uint8_t byte() {
    if (pos >= data.size()) throw ParseError("element bytes truncated");
    return static_cast<uint8_t>(data[pos++]);
  }

  uint64_t uvarint() {
    uint64_t u = 0;
    int shift = 0;
    for (;;) {
      uint8_t b = byte();
      if (shift == 63 && (b & 0x7e) != 0) throw ParseError("varint overflow");
      u |= static_cast<uint64_t>(b & 0x7f) << shift;
      if ((b & 0x80) == 0) return u;
      shift += 7;
      if (shift > 63) throw ParseError("varint overflow");
    }
  }

  int64_t varint() { return unzigzag(uvarint()); }
};

}  // namespace cayfire::detail
