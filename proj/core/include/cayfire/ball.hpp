#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cayfire/detail/byte_index.hpp"
#include "cayfire/element.hpp"
#include "cayfire/error.hpp"
#include "cayfire/group.hpp"
#include "cayfire/id_set.hpp"

namespace cayfire {

/// Hard cap on the memory a ball enumeration may consume. Enumeration
/// refuses (throws BudgetExceeded reporting the largest complete radius)
/// rather than returning a partial ball.
struct MemoryBudget {
  uint64_t bytes = 2ull << 30;  // 2 GiB
};

struct GrowthTable {
  std::vector<uint64_t> v;  // v[R] = |B_R|
};

/// Exact BFS ball around the identity. Ids are assigned layer-major, in
/// canonical byte order within each layer, so they are deterministic and
/// word length is monotone in id.
class Ball {
 public:
  static Ball enumerate(GroupPtr group, int radius, const MemoryBudget& budget = {});

  /// Grows the ball while the budget allows, stopping at max_radius; the
  /// result radius is the largest fully enumerated one. Throws
  /// BudgetExceeded only if even min_radius does not fit.
  static Ball enumerate_up_to(GroupPtr group, int min_radius, int max_radius,
                              const MemoryBudget& budget = {});

  const Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const GroupDescriptor& descriptor() const { return group_->descriptor(); }

  int radius() const { return static_cast<int>(layer_begin_.size()) - 2; }
  uint64_t size() const { return arena_.count(); }
  uint64_t volume(int r) const;  // v(r)
  uint64_t layer_begin(int k) const { return layer_begin_[static_cast<size_t>(k)]; }
  uint64_t layer_end(int k) const { return layer_begin_[static_cast<size_t>(k) + 1]; }

  int word_length(uint32_t id) const;
  std::string_view element_view(uint32_t id) const { return arena_.view(id); }
  Element element(uint32_t id) const { return Element(std::string(arena_.view(id))); }

  std::optional<uint32_t> find(std::string_view bytes) const { return index_.find(arena_, bytes); }
  std::optional<uint32_t> find(const Element& e) const { return index_.find(arena_, e.view()); }

  /// Calls f(neighbor_id) for every in-ball neighbor of id, in generator
  /// order (an element may be visited once per connecting generator pair;
  /// generators are distinct group elements, so neighbor ids are distinct).
  template <class F>
  void for_each_neighbor(uint32_t id, F&& f) const {
    std::string buf;
    std::string_view a = arena_.view(id);
    for (int g = 0; g < group_->generator_count(); ++g) {
      group_->mul_gen(a, g, buf);
      if (auto nb = index_.find(arena_, buf)) f(*nb);
    }
  }

  GrowthTable growth_table() const;

  void save(const std::filesystem::path& path) const;
  static Ball load(GroupPtr group, const std::filesystem::path& path);

 private:
  explicit Ball(GroupPtr group) : group_(std::move(group)) {}

  GroupPtr group_;
  detail::ByteArena arena_;
  detail::ByteIndex index_;
  std::vector<uint64_t> layer_begin_;  // size radius()+2, trailing = size()
};

/// Exact growth function v(0..r_max).
GrowthTable growth_table(GroupPtr group, int r_max, const MemoryBudget& budget = {});

/// Vertices outside A adjacent to A, restricted to the ball. Sorted ids.
std::vector<uint32_t> outer_boundary(const Ball& ball, const IdSet& a);

/// Vertices of A with an in-ball neighbor outside A. Sorted ids.
std::vector<uint32_t> inner_boundary(const Ball& ball, const IdSet& a);

/// Ball cache file errors, distinguished for cache-admin reporting.
class CacheError : public Error {
 public:
  enum class Kind { kFormat, kVersion, kDescriptor, kChecksum };
  CacheError(Kind kind, const std::string& what) : Error(what), kind(kind) {}
  Kind kind;
};

}  // namespace cayfire
