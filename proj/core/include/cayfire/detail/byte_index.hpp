#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cayfire::detail {

inline uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Append-only store of byte strings addressed by dense uint32 ids.
class ByteArena {
 public:
  uint32_t add(std::string_view b) {
    bytes_.append(b);
    offsets_.push_back(bytes_.size());
    return static_cast<uint32_t>(offsets_.size() - 2);
  }

  std::string_view view(uint32_t id) const {
    return std::string_view(bytes_).substr(offsets_[id], offsets_[id + 1] - offsets_[id]);
  }

  uint64_t count() const { return offsets_.size() - 1; }
  uint64_t byte_size() const { return bytes_.size() + offsets_.size() * sizeof(uint64_t); }

  void clear() {
    bytes_.clear();
    offsets_.assign(1, 0);
  }

 private:
  std::string bytes_;
  std::vector<uint64_t> offsets_{0};
};

/// Open-addressing hash index from arena bytes to ids. The arena is passed
/// into every call (not stored), so the pair moves safely as part of a
/// larger object. Slots pack the upper 32 hash bits with id+1; 0 is empty.
class ByteIndex {
 public:
  explicit ByteIndex(size_t expected = 16) {
    size_t n = 16;
    while (n < expected * 2) n <<= 1;
    slots_.assign(n, 0);
  }

  std::optional<uint32_t> find(const ByteArena& arena, std::string_view b) const {
    uint64_t h = fnv1a64(b);
    uint64_t tag = h & 0xffffffff00000000ull;
    size_t mask = slots_.size() - 1;
    for (size_t i = h & mask;; i = (i + 1) & mask) {
      uint64_t s = slots_[i];
      if (s == 0) return std::nullopt;
      if ((s & 0xffffffff00000000ull) == tag) {
        uint32_t id = static_cast<uint32_t>((s & 0xffffffffull) - 1);
        if (arena.view(id) == b) return id;
      }
    }
  }

  void insert(const ByteArena& arena, std::string_view b, uint32_t id) {
    if ((size_ + 1) * 10 > slots_.size() * 7) grow(arena);
    place(fnv1a64(b), id);
    ++size_;
  }

  uint64_t byte_size() const { return slots_.size() * sizeof(uint64_t); }

 private:
  void place(uint64_t h, uint32_t id) {
    uint64_t tag = h & 0xffffffff00000000ull;
    size_t mask = slots_.size() - 1;
    for (size_t i = h & mask;; i = (i + 1) & mask) {
      if (slots_[i] == 0) {
        slots_[i] = tag | (static_cast<uint64_t>(id) + 1);
        return;
      }
    }
  }

  void grow(const ByteArena& arena) {
    std::vector<uint64_t> old;
    old.swap(slots_);
    slots_.assign(old.size() * 2, 0);
    for (uint64_t s : old) {
      if (s == 0) continue;
      uint32_t id = static_cast<uint32_t>((s & 0xffffffffull) - 1);
      place(fnv1a64(arena.view(id)), id);
    }
  }

  std::vector<uint64_t> slots_;
  uint64_t size_ = 0;
};

}  // namespace cayfire::detail
