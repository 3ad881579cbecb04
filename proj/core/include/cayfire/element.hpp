#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace cayfire {

/// A group element in its canonical byte encoding.
///
/// Two elements of the same group are equal iff their bytes are equal, and
/// the lexicographic order on bytes is the canonical total order used for
/// deterministic schedules and layer ordering. The encoding grammar is
/// fixed per group variant; only the owning Group can interpret the bytes.
class Element {
 public:
  Element() = default;
  explicit Element(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const { return bytes_; }
  std::string_view view() const { return bytes_; }

  friend bool operator==(const Element& a, const Element& b) = default;
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    int c = a.bytes_.compare(b.bytes_);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

  /// Lowercase hex of the canonical bytes; the textual element form used in
  /// schedule and path-family files.
  std::string hex() const;
  static std::optional<Element> from_hex(std::string_view text);

 private:
  std::string bytes_;
};

inline std::string Element::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (unsigned char c : bytes_) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

inline std::optional<Element> Element::from_hex(std::string_view text) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (text.size() % 2 != 0) return std::nullopt;
  std::string out;
  out.reserve(text.size() / 2);
  for (size_t i = 0; i < text.size(); i += 2) {
    int hi = nibble(text[i]), lo = nibble(text[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<char>((hi << 4) | lo));
  }
  return Element(std::move(out));
}

}  // namespace cayfire

template <>
struct std::hash<cayfire::Element> {
  size_t operator()(const cayfire::Element& e) const noexcept {
    return std::hash<std::string>{}(e.bytes());
  }
};
