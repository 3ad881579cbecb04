#pragma once

// Shared oracles and helpers. Everything here is independent of the library
// internals it is used to check: the BFS oracle uses only the group
// operations, and the random strategy draws from the raw id universe.

#include <map>
#include <random>
#include <set>
#include <vector>

#include "cayfire/ball.hpp"
#include "cayfire/group.hpp"
#include "cayfire/strategy.hpp"
#include "cayfire/structure.hpp"

namespace testutil {

/// Layered BFS over explicit element sets; the independent oracle for Ball.
inline std::vector<std::set<cayfire::Element>> oracle_bfs(const cayfire::Group& g, int radius) {
  std::vector<std::set<cayfire::Element>> layers;
  std::set<cayfire::Element> seen;
  layers.push_back({g.identity()});
  seen.insert(g.identity());
  for (int r = 1; r <= radius; ++r) {
    std::set<cayfire::Element> next;
    for (const auto& e : layers.back()) {
      for (int i = 0; i < g.generator_count(); ++i) {
        cayfire::Element y = g.multiply_by_generator(e, i);
        if (seen.insert(y).second) next.insert(y);
      }
    }
    layers.push_back(std::move(next));
  }
  return layers;
}

inline cayfire::Element z_el(int64_t v) {
  std::string s;
  cayfire::detail::put_varint(s, v);
  return cayfire::Element(std::move(s));
}

/// Lamplighter element from lamp positions (value 1) and a base position.
inline cayfire::Element lamp_el(const cayfire::Group& wreath, std::vector<int64_t> lamps,
                                int64_t pos) {
  std::vector<std::pair<cayfire::Element, int>> lv;
  for (int64_t p : lamps) lv.emplace_back(z_el(p), 1);
  return cayfire::wreath_compose(wreath, z_el(pos), std::move(lv));
}

/// Element of Z^d from coordinates.
inline cayfire::Element zd_el(std::vector<int64_t> coords) {
  std::string s;
  for (int64_t c : coords) cayfire::detail::put_varint(s, c);
  return cayfire::Element(std::move(s));
}

/// Picks a uniformly random legal protection set of small size each turn.
class RandomStrategy final : public cayfire::Strategy {
 public:
  explicit RandomStrategy(uint64_t seed) : rng_(seed) {}

  std::string name() const override { return "random-test"; }

  std::vector<uint32_t> propose(const cayfire::FireView& view) override {
    uint64_t allowance =
        cayfire::budget_allowance(view.budget, view.turn, view.ball.size());
    uint64_t want = std::min<uint64_t>(allowance, rng_() % 5);
    if (want == 0) return {};
    std::vector<uint32_t> pool;
    pool.reserve(view.ball.size());
    for (uint32_t id = 0; id < view.ball.size(); ++id) {
      if (!view.burning.contains(id) && !view.protected_set.contains(id)) pool.push_back(id);
    }
    std::vector<uint32_t> out;
    for (uint64_t i = 0; i < want && !pool.empty(); ++i) {
      size_t j = static_cast<size_t>(rng_() % pool.size());
      out.push_back(pool[j]);
      pool[j] = pool.back();
      pool.pop_back();
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

/// Random element as a product of `len` random generators.
inline cayfire::Element random_element(const cayfire::Group& g, int len, std::mt19937_64& rng) {
  cayfire::Element e = g.identity();
  for (int i = 0; i < len; ++i) {
    e = g.multiply_by_generator(e, static_cast<int>(rng() % g.generator_count()));
  }
  return e;
}

}  // namespace testutil
