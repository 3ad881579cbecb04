#include "cayfire/strategy.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cayfire/structure.hpp"

namespace cayfire {

uint64_t budget_allowance(const BudgetFn& budget, int turn, uint64_t universe) {
  BigInt f = budget.eval(turn);
  if (f >= BigInt(universe)) return universe;
  return f.convert_to<uint64_t>();
}

namespace {

class NullStrategy final : public Strategy {
 public:
  std::string name() const override { return "null"; }
  std::vector<uint32_t> propose(const FireView&) override { return {}; }
};

class BranchCutStrategy final : public Strategy {
 public:
  std::string name() const override { return "branch-cut"; }

  void bind(const Group& group, const Ball& ball, const std::vector<uint32_t>& initial_fire) override {
    if (group.descriptor().kind() != GroupKind::kFreeGroup) {
      throw Error("branch-cut strategy requires a free group; got " + group.spec_string());
    }
    auto id0 = ball.find(group.identity());
    if (initial_fire.size() != 1 || !id0 || initial_fire[0] != *id0) {
      throw Error("branch-cut strategy requires F0 = {identity}");
    }
    auto target = ball.find(group.generator(0));
    if (!target) throw Error("ball too small for branch-cut target");
    target_ = *target;
  }

  std::vector<uint32_t> propose(const FireView& view) override {
    if (view.turn == 1) return {target_};
    return {};
  }

 private:
  uint32_t target_ = 0;
};

class GreedyBoundaryStrategy final : public Strategy {
 public:
  explicit GreedyBoundaryStrategy(uint64_t seed) : seed_(seed) {}

  std::string name() const override { return "greedy:seed=" + std::to_string(seed_); }

  std::vector<uint32_t> propose(const FireView& view) override {
    uint64_t allowance = budget_allowance(view.budget, view.turn, view.ball.size());
    if (allowance == 0) return {};
    std::vector<uint32_t> candidates;
    for (uint32_t id : outer_boundary(view.ball, view.burning)) {
      if (!view.protected_set.contains(id)) candidates.push_back(id);
    }
    // farthest from the origin first; ids are layer-major so descending id
    // is exactly (word length desc, canonical order desc) -- re-sort to get
    // the canonical ascending tie-break within a layer
    std::sort(candidates.begin(), candidates.end(), [&](uint32_t a, uint32_t b) {
      int wa = view.ball.word_length(a), wb = view.ball.word_length(b);
      if (wa != wb) return wa > wb;
      return a < b;
    });
    if (candidates.size() > allowance) candidates.resize(allowance);
    return candidates;
  }

 private:
  uint64_t seed_;
};

class FixedSetStrategy final : public Strategy {
 public:
  explicit FixedSetStrategy(std::vector<std::vector<Element>> schedule)
      : schedule_(std::move(schedule)) {}

  std::string name() const override { return "fixed"; }

  void bind(const Group& group, const Ball& ball, const std::vector<uint32_t>&) override {
    (void)group;
    resolved_.clear();
    IdSet seen(ball.size());
    for (const auto& turn_set : schedule_) {
      std::vector<uint32_t> ids;
      for (const Element& e : turn_set) {
        auto id = ball.find(e);
        if (!id) {
          throw Error("fixed-set schedule vertex " + ball.group().render(e) +
                      " lies outside the ambient ball");
        }
        if (!seen.insert(*id)) {
          throw Error("fixed-set schedule sets are not pairwise disjoint at " +
                      ball.group().render(e));
        }
        ids.push_back(*id);
      }
      resolved_.push_back(std::move(ids));
    }
  }

  std::vector<uint32_t> propose(const FireView& view) override {
    shortfall_ = 0;
    size_t idx = static_cast<size_t>(view.turn) - 1;
    if (idx >= resolved_.size()) return {};
    std::vector<uint32_t> out;
    for (uint32_t id : resolved_[idx]) {
      if (view.burning.contains(id)) {
        ++shortfall_;
      } else {
        out.push_back(id);
      }
    }
    return out;
  }

  int64_t last_shortfall() const override { return shortfall_; }

 private:
  std::vector<std::vector<Element>> schedule_;
  std::vector<std::vector<uint32_t>> resolved_;
  int64_t shortfall_ = 0;
};

// ---------------------------------------------------------------------------

bool is_standard_lamplighter(const Group& g) {
  const GroupDescriptor& d = g.descriptor();
  return d.kind() == GroupKind::kWreathProduct && d.lamp().modulus() == 2 &&
         d.base().kind() == GroupKind::kZPower && d.base().dim() == 1;
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

// Lamp pattern: base positions 0..M all lit plus `extras` above M, at base
// position M+2.
Element shield_element(const Group& group, int m, const std::vector<int64_t>& extras) {
  std::vector<std::pair<Element, int>> lamps;
  for (int i = 0; i <= m; ++i) lamps.emplace_back(z_element(i), 1);
  for (int64_t p : extras) lamps.emplace_back(z_element(p), 1);
  return wreath_compose(group, z_element(m + 2), std::move(lamps));
}

class LamplighterShieldStrategy final : public Strategy {
 public:
  explicit LamplighterShieldStrategy(int m) : m_(m) {}

  std::string name() const override { return "shield:M=" + std::to_string(m_); }

  void bind(const Group& group, const Ball& ball, const std::vector<uint32_t>& initial_fire) override {
    if (!is_standard_lamplighter(group)) {
      throw Error("shield strategy requires Z2wrZ; got " + group.spec_string());
    }
    int r0 = 0;
    for (uint32_t id : initial_fire) r0 = std::max(r0, ball.word_length(id));
    if (m_ <= r0) {
      throw Error("shield parameter M = " + std::to_string(m_) +
                  " must exceed the initial fire radius r0 = " + std::to_string(r0));
    }
  }

  std::vector<uint32_t> propose(const FireView& view) override {
    std::vector<uint32_t> out;
    for (const Element& e : emitted_this_turn(view.group, view.turn)) {
      auto id = view.ball.find(e);
      if (!id) {
        throw Error("ambient ball too small for shield protection at turn " +
                    std::to_string(view.turn) + ": " + view.group.render(e));
      }
      out.push_back(*id);
    }
    return out;
  }

  /// P_n \ P_{n-1} in the pinned order: new patterns have top lamp exactly
  /// M + n/2 (even n), sorted by canonical byte order of the encoding.
  std::vector<Element> emitted_this_turn(const Group& group, int n) const {
    std::vector<Element> out;
    if (n == 1) {
      out.push_back(shield_element(group, m_, {}));
      return out;
    }
    if (n % 2 != 0) return {};
    int64_t top = m_ + n / 2;
    int64_t free_lo = m_ + 1, free_hi = top - 1;
    size_t free_count = static_cast<size_t>(free_hi - free_lo + 1);
    for (uint64_t mask = 0; mask < (1ull << free_count); ++mask) {
      std::vector<int64_t> extras = {top};
      for (size_t b = 0; b < free_count; ++b) {
        if (mask & (1ull << b)) extras.push_back(free_lo + static_cast<int64_t>(b));
      }
      out.push_back(shield_element(group, m_, extras));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  int m_;
};

}  // namespace

std::unique_ptr<Strategy> make_null_strategy() { return std::make_unique<NullStrategy>(); }

std::unique_ptr<Strategy> make_branch_cut_strategy() { return std::make_unique<BranchCutStrategy>(); }

std::unique_ptr<Strategy> make_greedy_boundary_strategy(uint64_t seed) {
  return std::make_unique<GreedyBoundaryStrategy>(seed);
}

std::unique_ptr<Strategy> make_fixed_set_strategy(std::vector<std::vector<Element>> schedule) {
  return std::make_unique<FixedSetStrategy>(std::move(schedule));
}

std::unique_ptr<Strategy> make_lamplighter_shield_strategy(int m_parameter) {
  return std::make_unique<LamplighterShieldStrategy>(m_parameter);
}

std::vector<std::vector<Element>> load_schedule_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open schedule file: " + path);
  std::vector<std::vector<Element>> schedule;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    int turn;
    if (!(ss >> turn) || turn < 1) {
      throw ParseError("schedule line " + std::to_string(lineno) + ": expected turn number");
    }
    if (schedule.size() < static_cast<size_t>(turn)) schedule.resize(static_cast<size_t>(turn));
    std::string hex;
    while (ss >> hex) {
      auto e = Element::from_hex(hex);
      if (!e) throw ParseError("schedule line " + std::to_string(lineno) + ": bad element hex");
      schedule[static_cast<size_t>(turn) - 1].push_back(std::move(*e));
    }
  }
  return schedule;
}

std::unique_ptr<Strategy> parse_strategy(std::string_view spec) {
  if (spec == "null") return make_null_strategy();
  if (spec == "branch-cut") return make_branch_cut_strategy();
  auto starts_with = [&](std::string_view p) { return spec.substr(0, p.size()) == p; };
  if (starts_with("greedy:seed=")) {
    try {
      return make_greedy_boundary_strategy(std::stoull(std::string(spec.substr(12))));
    } catch (const std::exception&) {
      throw ParseError("bad greedy seed in '" + std::string(spec) + "'");
    }
  }
  if (starts_with("fixed:file=")) {
    return make_fixed_set_strategy(load_schedule_file(std::string(spec.substr(11))));
  }
  if (starts_with("shield:M=")) {
    try {
      return make_lamplighter_shield_strategy(std::stoi(std::string(spec.substr(9))));
    } catch (const std::exception&) {
      throw ParseError("bad shield parameter in '" + std::string(spec) + "'");
    }
  }
  throw ParseError("unknown strategy specifier '" + std::string(spec) + "'");
}

bool shield_set_contains(const Group& group, int m_parameter, const Element& e) {
  if (!is_standard_lamplighter(group)) {
    throw Error("shield set is defined on Z2wrZ; got " + group.spec_string());
  }
  WreathParts parts = wreath_decompose(group, e);
  if (z_value(parts.position) <= m_parameter + 1) return false;
  uint64_t low_mask = 0;
  for (const auto& [key, value] : parts.lamps) {
    int64_t p = z_value(key);
    if (p < 0) return false;
    if (p <= m_parameter) low_mask |= 1ull << p;
  }
  return low_mask == (1ull << (m_parameter + 1)) - 1;
}

std::vector<Element> shield_slice(const Group& group, int m_parameter, int turn) {
  LamplighterShieldStrategy s(m_parameter);
  std::vector<Element> all;
  for (int n = 1; n <= turn; ++n) {
    auto batch = s.emitted_this_turn(group, n);
    all.insert(all.end(), batch.begin(), batch.end());
  }
  return all;
}

}  // namespace cayfire
