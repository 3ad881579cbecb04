#include "cayfire/wreath_paths.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "cayfire/structure.hpp"

namespace cayfire {

namespace {

bool base_is_z(const Group& base) {
  return base.descriptor().kind() == GroupKind::kZPower && base.descriptor().dim() == 1;
}

int64_t z_value(const Element& e) {
  detail::ByteReader r{e.view()};
  return r.varint();
}

Element z_element(int64_t v) {
  std::string out;
  detail::put_varint(out, v);
  return Element(std::move(out));
}

/// Lamp configuration with the position stripped, as a comparable key.
std::string config_key(const Group& wreath, const Element& e) {
  WreathParts p = wreath_decompose(wreath, e);
  std::string key;
  for (const auto& [k, v] : p.lamps) {
    key += k.bytes();
    key.push_back(static_cast<char>(v));
  }
  return key;
}

/// Geodesic word (generator indices) from the identity to `target`.
std::vector<int> base_geodesic_word(const Group& base, const Element& target,
                                    const Ball* base_ball) {
  if (base_is_z(base)) {
    int64_t k = z_value(target);
    // generator 0 is +1, generator 1 is -1
    return std::vector<int>(static_cast<size_t>(k >= 0 ? k : -k), k >= 0 ? 0 : 1);
  }
  if (!base_ball) throw Error("base geodesics need a base ball for " + base.spec_string());
  auto tid = base_ball->find(target);
  if (!tid) {
    throw Error("base ball radius " + std::to_string(base_ball->radius()) +
                " too small for geodesic target " + base.render(target));
  }
  std::vector<int> word;
  Element cur = target;
  while (true) {
    uint32_t cur_id = *base_ball->find(cur);
    int wl = base_ball->word_length(cur_id);
    if (wl == 0) break;
    // lexicographically-least predecessor, least generator index on ties
    std::optional<Element> best;
    int best_gen = -1;
    for (int gi = 0; gi < base.generator_count(); ++gi) {
      Element prev = base.multiply_by_generator(cur, gi);
      auto pid = base_ball->find(prev);
      if (!pid || base_ball->word_length(*pid) != wl - 1) continue;
      if (!best || prev < *best) {
        best = prev;
        best_gen = base.generator_inverse(gi);
      }
    }
    if (!best) throw Error("BFS geodesic construction failed (ball inconsistent)");
    word.push_back(best_gen);
    cur = *best;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

std::vector<int> inverse_word(const Group& g, const std::vector<int>& word) {
  std::vector<int> out;
  out.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(g.generator_inverse(*it));
  return out;
}

// ---------------------------------------------------------------------------
// Path builder: tracks the exact current vertex, packs lamp changes into the
// switch slots around walk steps, and records step annotations.

class PathBuilder {
 public:
  PathBuilder(const Group& wreath, Element start, const PathCompileEnv& env)
      : wreath_(wreath),
        base_(*wreath_base(wreath)),
        m_(wreath_lamp_modulus(wreath)),
        lamp_gens_(wreath_lamp_generator_count(wreath)),
        env_(env),
        cur_(std::move(start)) {
    vertices_.push_back(cur_);
  }

  const Element& current() const { return cur_; }

  Element current_position() const { return wreath_decompose(wreath_, cur_).position; }

  int lamp_at(const Element& base_pos) const {
    WreathParts p = wreath_decompose(wreath_, cur_);
    for (const auto& [k, v] : p.lamps) {
      if (k == base_pos) return v;
    }
    return 0;
  }

  /// Queue a lamp change (delta mod m) at the current position; it rides the
  /// switch slots of nearby steps.
  void add_lamp_delta(int delta) {
    for (int u : decompose(delta)) pending_.push_back(u);
  }

  void set_lamp_here(int target) {
    int delta = (target - lamp_at(current_position())) % m_;
    add_lamp_delta(delta);
  }

  /// One base step. `arrival_delta` is applied at the destination, first
  /// unit in the arrival switch slot.
  void step(int base_gen, int arrival_delta = 0) {
    std::vector<int> arrival = decompose(arrival_delta);
    while (pending_.size() > 1) bounce(base_gen);
    int s1 = -1;
    if (!pending_.empty()) {
      s1 = pending_.back();
      pending_.pop_back();
    }
    int s2 = -1;
    if (!arrival.empty()) {
      s2 = arrival.back();
      arrival.pop_back();
    }
    emit(s1, base_gen, s2);
    pending_ = std::move(arrival);
  }

  /// Geodesic walk to a base position, no lamp changes en route (queued
  /// changes still ride the first steps). `final_delta` lands on arrival.
  void walk_to(const Element& base_target, int final_delta = 0) {
    Element rel = base_.multiply(base_.invert(current_position()), base_target);
    std::vector<int> word = base_geodesic_word(base_, rel, env_.base_ball);
    if (word.empty()) {
      add_lamp_delta(final_delta);
      return;
    }
    for (size_t i = 0; i + 1 < word.size(); ++i) step(word[i]);
    step(word.back(), final_delta);
  }

  /// Follow a raw generator word of the wreath group (pure edges).
  void append_word(const std::vector<int>& word) {
    for (int g : word) {
      SwsParts p = wreath_generator_parts(wreath_, g);
      // route through step() so queued switches keep their slots
      if (p.switch_before >= 0 || p.switch_after >= 0) {
        if (p.switch_before >= 0) pending_.push_back(p.switch_before);
        std::vector<int> arrival =
            p.switch_after >= 0 ? std::vector<int>{p.switch_after} : std::vector<int>{};
        while (pending_.size() > 1) bounce(p.base_step);
        int s1 = -1;
        if (!pending_.empty()) {
          s1 = pending_.back();
          pending_.pop_back();
        }
        emit(s1, p.base_step, p.switch_after);
      } else {
        step(p.base_step);
      }
    }
  }

  /// Traverse a geodesic word of `a` from the current vertex (multiply by a).
  void append_element(const Element& a) {
    if (base_is_z(base_)) {
      append_element_over_z(a);
      return;
    }
    if (!env_.wreath_ball) {
      throw Error("multiplying along an element word needs a wreath ball for base " +
                  base_.spec_string());
    }
    append_word(wreath_geodesic_word(a));
  }

  /// Set the lamps at the given base positions to the given values, walking
  /// a deterministic route (ascending positions on Z, nearest-neighbor with
  /// canonical ties otherwise).
  void sweep(std::vector<std::pair<Element, int>> targets) {
    std::vector<std::pair<Element, int>> changes;
    for (auto& [pos, val] : targets) {
      if (lamp_at(pos) != val) changes.emplace_back(pos, val);
    }
    if (changes.empty()) return;
    if (base_is_z(base_)) {
      std::sort(changes.begin(), changes.end(), [](const auto& a, const auto& b) {
        return z_value(a.first) < z_value(b.first);
      });
      for (const auto& [pos, val] : changes) {
        walk_to(pos, (val - lamp_at(pos)) % m_);
      }
      return;
    }
    while (!changes.empty()) {
      Element here = current_position();
      size_t best = 0;
      int64_t best_d = -1;
      for (size_t i = 0; i < changes.size(); ++i) {
        Element rel = base_.multiply(base_.invert(here), changes[i].first);
        int64_t d = base_distance(rel);
        if (best_d < 0 || d < best_d ||
            (d == best_d && changes[i].first < changes[best].first)) {
          best_d = d;
          best = i;
        }
      }
      auto [pos, val] = changes[best];
      changes.erase(changes.begin() + static_cast<long>(best));
      walk_to(pos, (val - lamp_at(pos)) % m_);
    }
  }

  /// Clears any still-queued switches with bounce pairs.
  void finalize(int bounce_gen = 0) {
    while (!pending_.empty()) bounce(bounce_gen);
  }

  void annotate(const std::string& label) {
    steps_.push_back(PathStep{label, mark_, word_.size()});
    mark_ = word_.size();
  }

  WreathPath take(Element declared_end) {
    finalize();
    if (!(cur_ == declared_end)) {
      throw Error("path compiler endpoint mismatch: reached " + wreath_.render(cur_) +
                  ", wanted " + wreath_.render(declared_end));
    }
    WreathPath p;
    p.start = vertices_.front();
    p.end = cur_;
    p.word = std::move(word_);
    p.vertices = std::move(vertices_);
    p.steps = std::move(steps_);
    return p;
  }

 private:
  std::vector<int> decompose(int delta) const {
    int d = ((delta % m_) + m_) % m_;
    if (d == 0) return {};
    if (lamp_gens_ == 1) return std::vector<int>(1, 0);  // m == 2, single toggle
    // generator 0 adds +1, generator 1 adds m-1
    if (d <= m_ - d) return std::vector<int>(static_cast<size_t>(d), 0);
    return std::vector<int>(static_cast<size_t>(m_ - d), 1);
  }

  void bounce(int base_gen) {
    int u1 = pending_.back();
    pending_.pop_back();
    emit(u1, base_gen, -1);
    int u2 = -1;
    if (!pending_.empty()) {
      u2 = pending_.back();
      pending_.pop_back();
    }
    emit(-1, base_.generator_inverse(base_gen), u2);
  }

  void emit(int s1, int w, int s2) {
    int idx = wreath_generator_index(wreath_, SwsParts{s1, w, s2});
    cur_ = wreath_.multiply_by_generator(cur_, idx);
    word_.push_back(idx);
    vertices_.push_back(cur_);
  }

  int64_t base_distance(const Element& rel) const {
    if (auto d = base_.closed_form_word_length(rel)) return *d;
    if (!env_.base_ball) throw Error("base distances need a base ball");
    auto id = env_.base_ball->find(rel);
    if (!id) throw Error("base ball too small for distance query");
    return env_.base_ball->word_length(*id);
  }

  /// Optimal covering route for multiplying by `a` over base Z: visit every
  /// lamp of `a` (translated to the current frame) and finish at the
  /// translated position, nearer extreme first.
  void append_element_over_z(const Element& a) {
    WreathParts pa = wreath_decompose(wreath_, a);
    int64_t here = z_value(current_position());
    int64_t end = here + z_value(pa.position);
    std::map<int64_t, int> deltas;
    for (const auto& [k, v] : pa.lamps) deltas[here + z_value(k)] = v;

    int64_t lo = std::min({here, end}), hi = std::max({here, end});
    for (const auto& [p, v] : deltas) {
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    if (auto it = deltas.find(here); it != deltas.end()) {
      add_lamp_delta(it->second);
      deltas.erase(it);
    }
    if (lo == hi) {
      // no movement needed beyond clearing queued switches
      return;
    }
    int64_t left_cost = (here - lo) + (hi - lo) + (hi - end);
    int64_t right_cost = (hi - here) + (hi - lo) + (end - lo);
    // route extremes in the cheaper order, then finish at `end`
    std::vector<int64_t> stations = left_cost <= right_cost
                                        ? std::vector<int64_t>{lo, hi, end}
                                        : std::vector<int64_t>{hi, lo, end};
    int64_t pos = here;
    for (int64_t target : stations) {
      while (pos != target) {
        int64_t next = pos + (target > pos ? 1 : -1);
        int delta = 0;
        if (auto it = deltas.find(next); it != deltas.end()) {
          delta = it->second;
          deltas.erase(it);
        }
        step(target > pos ? 0 : 1, delta);
        pos = next;
      }
    }
  }

  /// Geodesic word for `a` from a wreath ball (general base groups).
  std::vector<int> wreath_geodesic_word(const Element& a) const {
    const Ball& ball = *env_.wreath_ball;
    auto tid = ball.find(a);
    if (!tid) throw Error("wreath ball too small for element word");
    std::vector<int> word;
    Element cur = a;
    while (true) {
      uint32_t cur_id = *ball.find(cur);
      int wl = ball.word_length(cur_id);
      if (wl == 0) break;
      std::optional<Element> best;
      int best_gen = -1;
      for (int gi = 0; gi < wreath_.generator_count(); ++gi) {
        Element prev = wreath_.multiply_by_generator(cur, gi);
        auto pid = ball.find(prev);
        if (!pid || ball.word_length(*pid) != wl - 1) continue;
        if (!best || prev < *best) {
          best = prev;
          best_gen = wreath_.generator_inverse(gi);
        }
      }
      if (!best) throw Error("wreath geodesic construction failed");
      word.push_back(best_gen);
      cur = *best;
    }
    std::reverse(word.begin(), word.end());
    return word;
  }

  const Group& wreath_;
  const Group& base_;
  int m_;
  int lamp_gens_;
  PathCompileEnv env_;
  Element cur_;
  std::vector<int> pending_;  // lamp generator indices queued at current pos
  std::vector<int> word_;
  std::vector<Element> vertices_;
  std::vector<PathStep> steps_;
  size_t mark_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------

FamilyCase classify_case(const Group& group, std::span<const Element> burning,
                         std::span<const Element> safe) {
  if (burning.size() != safe.size()) throw Error("pair family lists differ in length");
  if (burning.empty()) throw Error("pair family is empty");
  std::unordered_set<std::string> all;
  for (auto span : {burning, safe}) {
    for (const Element& e : span) {
      group.validate(e);
      if (!all.insert(e.bytes()).second) {
        throw Error("pair family elements are not distinct: " + group.render(e));
      }
    }
  }

  auto configs = [&](std::span<const Element> span) {
    std::vector<std::string> keys;
    for (const Element& e : span) keys.push_back(config_key(group, e));
    return keys;
  };
  auto positions = [&](std::span<const Element> span) {
    std::vector<std::string> keys;
    for (const Element& e : span) keys.push_back(wreath_decompose(group, e).position.bytes());
    return keys;
  };
  auto all_distinct = [](std::vector<std::string> a, std::vector<std::string> b = {}) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return std::adjacent_find(a.begin(), a.end()) == a.end();
  };
  auto all_equal = [](const std::vector<std::string>& a) {
    return std::adjacent_find(a.begin(), a.end(), std::not_equal_to<>()) == a.end();
  };
  auto contains = [](const std::vector<std::string>& hay, const std::string& needle) {
    return std::find(hay.begin(), hay.end(), needle) != hay.end();
  };

  std::vector<std::string> ca = configs(burning), cb = configs(safe);
  std::vector<std::string> pa = positions(burning), pb = positions(safe);

  if (all_distinct(ca, cb)) return FamilyCase::kDistinctConfigs;
  if (all_distinct(pa, pb)) return FamilyCase::kDistinctPositions;
  if (all_distinct(ca) && all_equal(cb) && !contains(ca, cb.front()) && all_distinct(pb)) {
    return FamilyCase::kConstantSafe;
  }
  if (all_distinct(cb) && all_equal(ca) && !contains(cb, ca.front()) && all_distinct(pa)) {
    return FamilyCase::kConstantBurning;
  }
  throw Error(
      "pair family fits none of the four cases: lamp configurations repeat across the family, "
      "positions repeat, and neither side is a constant-configuration family with distinct "
      "positions (extract a conforming sub-family first)");
}

PairFamily make_pair_family(GroupPtr group, int scale_n, std::vector<Element> burning,
                            std::vector<Element> safe, const Ball* ball) {
  if (scale_n < 1) throw Error("pair family scale must be >= 1");
  PairFamily fam;
  fam.tag = classify_case(*group, burning, safe);
  for (auto span : {&burning, &safe}) {
    for (const Element& e : *span) {
      std::optional<int64_t> wl = group->closed_form_word_length(e);
      if (!wl && ball) {
        if (auto id = ball->find(e)) wl = ball->word_length(*id);
      }
      if (!wl) {
        throw Error("cannot verify pair-family membership in B_n for " + group->spec_string() +
                    "; provide an enumerated ball");
      }
      if (*wl > scale_n) {
        throw Error("pair family element " + group->render(e) + " has word length " +
                    std::to_string(*wl) + " > n = " + std::to_string(scale_n));
      }
    }
  }
  fam.group = std::move(group);
  fam.scale_n = scale_n;
  fam.burning = std::move(burning);
  fam.safe = std::move(safe);
  return fam;
}

Waypoints choose_waypoints(const Group& group, int scale_n, const Ball* base_ball) {
  if (scale_n < 1) throw Error("waypoint scale must be >= 1");
  GroupPtr base = wreath_base(group);
  Waypoints w;
  w.scale_n = scale_n;
  w.lamp_generator = 0;
  if (base_is_z(*base)) {
    w.g = z_element(5 * scale_n);
    w.g_star = z_element(10 * scale_n);
  } else {
    if (!base_ball || base_ball->radius() < 10 * scale_n) {
      throw Error("waypoints for base " + base->spec_string() + " need a base ball of radius >= " +
                  std::to_string(10 * scale_n));
    }
    w.g = base_ball->element(static_cast<uint32_t>(base_ball->layer_begin(5 * scale_n)));
    w.g_star = base_ball->element(static_cast<uint32_t>(base_ball->layer_begin(10 * scale_n)));
  }
  return w;
}

namespace {

struct Endpoint {
  Element element;
  Element position;
  std::vector<std::pair<Element, int>> lamps;
};

Endpoint decompose_endpoint(const Group& g, const Element& e) {
  WreathParts p = wreath_decompose(g, e);
  return Endpoint{e, p.position, std::move(p.lamps)};
}

/// Window rewrite targets: set every position in supp(from) u supp(to) to
/// its value under `to`.
std::vector<std::pair<Element, int>> rewrite_targets(
    const std::vector<std::pair<Element, int>>& from, const std::vector<std::pair<Element, int>>& to) {
  std::map<Element, int> t;
  for (const auto& [k, v] : from) t[k] = 0;
  for (const auto& [k, v] : to) t[k] = v;
  return {t.begin(), t.end()};
}

/// Targets clearing a translated copy: position center*k -> 0 for k in supp.
std::vector<std::pair<Element, int>> clear_copy_targets(
    const Group& base, const Element& center, const std::vector<std::pair<Element, int>>& supp) {
  std::vector<std::pair<Element, int>> t;
  for (const auto& [k, v] : supp) t.emplace_back(base.multiply(center, k), 0);
  return t;
}

WreathPath compile_case1(const Group& g, const Endpoint& a, const Endpoint& b,
                         const Waypoints& wp, const PathCompileEnv& env) {
  const Group& base = *wreath_base(g);
  PathBuilder pb(g, a.element, env);
  pb.walk_to(wp.g);
  pb.annotate("move-to-g");
  pb.append_element(a.element);
  pb.annotate("copy-at-g");
  pb.walk_to(wp.g_star);
  pb.annotate("move-to-g-star");
  pb.append_element(a.element);
  pb.annotate("copy-at-g-star");
  pb.walk_to(base.identity());
  pb.annotate("return-to-origin");
  pb.sweep(rewrite_targets(a.lamps, b.lamps));
  pb.annotate("rewrite-window");
  pb.walk_to(wp.g);
  pb.annotate("move-to-g-again");
  pb.sweep(clear_copy_targets(base, wp.g, a.lamps));
  pb.annotate("erase-g-copy");
  pb.walk_to(wp.g_star);
  pb.annotate("move-to-g-star-again");
  pb.sweep(clear_copy_targets(base, wp.g_star, a.lamps));
  pb.annotate("erase-g-star-copy");
  pb.walk_to(b.position);
  pb.annotate("move-to-endpoint");
  return pb.take(b.element);
}

WreathPath compile_case2(const Group& g, const Endpoint& a, const Endpoint& b,
                         const Waypoints& wp, const PathCompileEnv& env,
                         const std::vector<int>& word_g, const std::vector<int>& word_g_star) {
  const Group& base = *wreath_base(g);
  const int h = wreath_lamp_generator_value(g, wp.lamp_generator);
  Element beacon1 = base.multiply(a.position, wp.g);        // k_i g
  Element beacon2 = base.multiply(b.position, wp.g_star);   // l_i g*
  PathBuilder pb(g, a.element, env);
  // translated fixed geodesic: same steps as ->g, starting at k_i
  for (int step : word_g) {
    pb.append_word({wreath_generator_index(g, SwsParts{-1, step, -1})});
  }
  pb.annotate("translated-geodesic-out");
  pb.set_lamp_here(h);
  pb.annotate("light-beacon-1");
  pb.walk_to(beacon2);
  pb.annotate("move-to-beacon-2");
  pb.set_lamp_here(h);
  pb.annotate("light-beacon-2");
  pb.walk_to(beacon1);
  pb.annotate("return-to-beacon-1");
  pb.set_lamp_here(0);
  pb.annotate("extinguish-beacon-1");
  pb.sweep(rewrite_targets(a.lamps, b.lamps));
  pb.annotate("rewrite-window");
  pb.walk_to(beacon2);
  pb.annotate("move-to-beacon-2-again");
  pb.set_lamp_here(0);
  pb.annotate("extinguish-beacon-2");
  for (int step : inverse_word(base, word_g_star)) {
    pb.append_word({wreath_generator_index(g, SwsParts{-1, step, -1})});
  }
  pb.annotate("translated-geodesic-home");
  return pb.take(b.element);
}

/// Constant-config side `from` to distinct-config side `to` (cases 3/4).
WreathPath compile_case34(const Group& g, const Endpoint& from, const Endpoint& to,
                          const Waypoints& wp, const PathCompileEnv& env,
                          const std::vector<int>& word_g) {
  const Group& base = *wreath_base(g);
  const int h = wreath_lamp_generator_value(g, wp.lamp_generator);
  Element beacon = base.multiply(from.position, wp.g);  // l_i g
  PathBuilder pb(g, from.element, env);
  for (int step : word_g) {
    pb.append_word({wreath_generator_index(g, SwsParts{-1, step, -1})});
  }
  pb.annotate("translated-geodesic-out");
  pb.set_lamp_here(h);
  pb.annotate("light-beacon");
  pb.sweep(rewrite_targets(from.lamps, to.lamps));
  pb.annotate("rewrite-window");
  pb.walk_to(beacon);
  pb.annotate("return-to-beacon");
  pb.set_lamp_here(0);
  pb.annotate("extinguish-beacon");
  pb.walk_to(to.position);
  pb.annotate("move-to-endpoint");
  return pb.take(to.element);
}

WreathPath reverse_path(const Group& g, const WreathPath& p) {
  WreathPath r;
  r.start = p.end;
  r.end = p.start;
  r.word.reserve(p.word.size());
  for (auto it = p.word.rbegin(); it != p.word.rend(); ++it) {
    r.word.push_back(g.generator_inverse(*it));
  }
  r.vertices.assign(p.vertices.rbegin(), p.vertices.rend());
  const size_t n = p.word.size();
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) {
    r.steps.push_back(PathStep{it->label + "-reversed", n - it->word_end, n - it->word_begin});
  }
  return r;
}

}  // namespace

std::vector<WreathPath> construct_connecting_paths(const PairFamily& family,
                                                   const Waypoints& waypoints,
                                                   const PathCompileEnv& env) {
  const Group& g = *family.group;
  if (waypoints.scale_n != family.scale_n) {
    throw Error("waypoints were chosen for scale " + std::to_string(waypoints.scale_n) +
                ", family has scale " + std::to_string(family.scale_n));
  }
  const int n = family.scale_n;
  const size_t budget = static_cast<size_t>(100) * static_cast<size_t>(n);
  const Group& base = *wreath_base(g);
  std::vector<int> word_g = base_geodesic_word(base, waypoints.g, env.base_ball);
  std::vector<int> word_g_star = base_geodesic_word(base, waypoints.g_star, env.base_ball);

  std::vector<WreathPath> out;
  for (size_t i = 0; i < family.burning.size(); ++i) {
    if (family.burning[i] == family.safe[i]) {
      throw Error("degenerate pair: burning and safe endpoints coincide");
    }
    Endpoint a = decompose_endpoint(g, family.burning[i]);
    Endpoint b = decompose_endpoint(g, family.safe[i]);
    WreathPath path;
    switch (family.tag) {
      case FamilyCase::kDistinctConfigs:
        if (a.lamps.empty() || b.lamps.empty()) {
          throw Error("case-1 families must not contain the all-off lamp configuration");
        }
        path = compile_case1(g, a, b, waypoints, env);
        break;
      case FamilyCase::kDistinctPositions:
        path = compile_case2(g, a, b, waypoints, env, word_g, word_g_star);
        break;
      case FamilyCase::kConstantSafe:
        // built from the constant-config side b_i, then reversed to a_i->b_i
        path = reverse_path(g, compile_case34(g, b, a, waypoints, env, word_g));
        break;
      case FamilyCase::kConstantBurning:
        path = compile_case34(g, a, b, waypoints, env, word_g);
        break;
    }
    if (path.word.size() > budget) {
      throw Error("compiled path length " + std::to_string(path.word.size()) +
                  " exceeds the 100n budget (" + std::to_string(budget) +
                  "); the compiler mis-translated a step");
    }
    out.push_back(std::move(path));
  }
  return out;
}

DisjointnessReport verify_disjointness(std::span<const WreathPath> paths, FamilyCase tag,
                                       int scale_n) {
  DisjointnessReport report;
  const size_t n = paths.size();
  report.intersecting.assign(n, {});
  report.intersection_counts.assign(n, 0);

  std::unordered_map<std::string, std::vector<uint32_t>> owners;
  for (uint32_t i = 0; i < n; ++i) {
    std::unordered_set<std::string> mine;
    for (const Element& v : paths[i].vertices) mine.insert(v.bytes());
    for (const auto& bytes : mine) owners[bytes].push_back(i);
  }
  std::vector<std::unordered_set<uint32_t>> meets(n);
  for (const auto& [bytes, who] : owners) {
    for (size_t x = 0; x < who.size(); ++x) {
      for (size_t y = x + 1; y < who.size(); ++y) {
        meets[who[x]].insert(who[y]);
        meets[who[y]].insert(who[x]);
      }
    }
  }
  for (uint32_t i = 0; i < n; ++i) {
    report.intersecting[i].assign(meets[i].begin(), meets[i].end());
    std::sort(report.intersecting[i].begin(), report.intersecting[i].end());
    report.intersection_counts[i] = static_cast<int>(meets[i].size());
    report.max_count = std::max(report.max_count, report.intersection_counts[i]);
    if (!meets[i].empty()) report.pairwise_disjoint = false;
  }
  if (tag == FamilyCase::kDistinctConfigs) {
    report.within_bound = report.pairwise_disjoint;
  } else {
    report.within_bound = report.max_count <= 100 * scale_n * scale_n;
  }
  return report;
}

DilutionResult dilute_paths(std::span<const WreathPath> paths, const DisjointnessReport& report) {
  if (report.intersecting.size() != paths.size()) {
    throw Error("disjointness report does not match the path family");
  }
  DilutionResult result;
  std::vector<bool> kept(paths.size(), false);
  for (size_t i = 0; i < paths.size(); ++i) {
    bool blocked = false;
    for (uint32_t j : report.intersecting[i]) {
      if (j < i && kept[j]) {
        blocked = true;
        break;
      }
    }
    if (!blocked) {
      kept[i] = true;
      result.kept_indices.push_back(i);
      result.paths.push_back(paths[i]);
    }
  }
  return result;
}

std::vector<Element> base_window(const Group& base, int n, const Ball* base_ball) {
  if (base_is_z(base)) {
    std::vector<Element> out;
    for (int64_t q = -n; q <= n; ++q) out.push_back(z_element(q));
    return out;
  }
  if (!base_ball || base_ball->radius() < n) {
    throw Error("base window needs a base ball of radius >= " + std::to_string(n));
  }
  std::vector<Element> out;
  for (uint32_t id = 0; id < base_ball->volume(n); ++id) out.push_back(base_ball->element(id));
  return out;
}

std::vector<int> lamp_restriction(const Group& wreath, const Element& e, const Element& center,
                                  std::span<const Element> window) {
  const Group& base = *wreath_base(wreath);
  WreathParts p = wreath_decompose(wreath, e);
  std::map<Element, int> lamps(p.lamps.begin(), p.lamps.end());
  std::vector<int> out;
  out.reserve(window.size());
  for (const Element& q : window) {
    Element pos = base.multiply(center, q);
    auto it = lamps.find(pos);
    out.push_back(it == lamps.end() ? 0 : it->second);
  }
  return out;
}

bool verify_case1_certificates(std::span<const WreathPath> paths, const PairFamily& family,
                               const Waypoints& waypoints, const PathCompileEnv& env) {
  const Group& g = *family.group;
  const Group& base = *wreath_base(g);
  std::vector<Element> window = base_window(base, family.scale_n, env.base_ball);
  for (size_t i = 0; i < paths.size(); ++i) {
    auto x_at_origin = lamp_restriction(g, family.burning[i], base.identity(), window);
    auto y_at_origin = lamp_restriction(g, family.safe[i], base.identity(), window);
    for (const Element& v : paths[i].vertices) {
      bool ok = lamp_restriction(g, v, base.identity(), window) == x_at_origin ||
                lamp_restriction(g, v, waypoints.g, window) == x_at_origin ||
                lamp_restriction(g, v, waypoints.g_star, window) == x_at_origin ||
                lamp_restriction(g, v, base.identity(), window) == y_at_origin;
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace cayfire
