#pragma once

#include <cstdint>
#include <vector>

namespace cayfire {

/// Dense bitset over the ids of one ball, with a running cardinality.
class IdSet {
 public:
  IdSet() = default;
  explicit IdSet(uint64_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  uint64_t universe() const { return universe_; }
  uint64_t count() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(uint32_t id) const { return (words_[id >> 6] >> (id & 63)) & 1; }

  /// Returns true when the id was newly inserted.
  bool insert(uint32_t id) {
    uint64_t& w = words_[id >> 6];
    uint64_t bit = 1ull << (id & 63);
    if (w & bit) return false;
    w |= bit;
    ++count_;
    return true;
  }

  bool erase(uint32_t id) {
    uint64_t& w = words_[id >> 6];
    uint64_t bit = 1ull << (id & 63);
    if (!(w & bit)) return false;
    w &= ~bit;
    --count_;
    return true;
  }

  /// Visits members in ascending id order.
  template <class F>
  void for_each(F&& f) const {
    for (size_t wi = 0; wi < words_.size(); ++wi) {
      uint64_t w = words_[wi];
      while (w) {
        unsigned bit = static_cast<unsigned>(__builtin_ctzll(w));
        f(static_cast<uint32_t>(wi * 64 + bit));
        w &= w - 1;
      }
    }
  }

  std::vector<uint32_t> to_vector() const {
    std::vector<uint32_t> out;
    out.reserve(count_);
    for_each([&](uint32_t id) { out.push_back(id); });
    return out;
  }

  static IdSet from_ids(uint64_t universe, const std::vector<uint32_t>& ids) {
    IdSet s(universe);
    for (uint32_t id : ids) s.insert(id);
    return s;
  }

 private:
  uint64_t universe_ = 0;
  uint64_t count_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace cayfire
