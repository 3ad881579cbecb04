#include "cayfire/fire.hpp"

#include <algorithm>

#include "cayfire/strategy.hpp"

namespace cayfire {

FireState::FireState(std::shared_ptr<const Ball> ball, const std::vector<Element>& initial_fire)
    : ball_(std::move(ball)), fire_(ball_->size()), protected_(ball_->size()) {
  if (initial_fire.empty()) throw SimulationError("initial fire must be nonempty", 0);
  for (const Element& e : initial_fire) {
    auto id = ball_->find(e);
    if (!id) {
      throw SimulationError("initial fire vertex " + ball_->group().render(e) +
                                " lies outside the ambient ball",
                            0);
    }
    if (fire_.insert(*id)) initial_ids_.push_back(*id);
    r0_ = std::max(r0_, ball_->word_length(*id));
  }
  std::sort(initial_ids_.begin(), initial_ids_.end());
  frontier_ = initial_ids_;
  if (r0_ + 1 > ball_->radius()) {
    throw SimulationError("ambient ball radius " + std::to_string(ball_->radius()) +
                              " leaves no room around the initial fire (r0 = " +
                              std::to_string(r0_) + ")",
                          0);
  }
}

FireState init_fire(std::shared_ptr<const Ball> ball, const std::vector<Element>& initial_fire) {
  return FireState(std::move(ball), initial_fire);
}

void FireState::advance(std::span<const uint32_t> w, const BudgetFn& budget) {
  const int n = turn_ + 1;
  if (r0_ + n + 1 > ball_->radius()) {
    throw SimulationError("truncation guard: advancing to turn " + std::to_string(n) +
                              " requires ball radius >= " + std::to_string(r0_ + n + 1) +
                              " (have " + std::to_string(ball_->radius()) + "); refusing",
                          n);
  }
  if (!budget.allows(n, w.size())) {
    throw SimulationError("budget exceeded at turn " + std::to_string(n) + ": |W| = " +
                              std::to_string(w.size()) + " > f(n) = " + budget.eval(n).str(),
                          n);
  }
  for (size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && w[i] <= w[i - 1]) throw SimulationError("protection set not sorted/unique", n);
    if (w[i] >= ball_->size()) throw SimulationError("protection id out of range", n);
    if (fire_.contains(w[i])) {
      throw SimulationError("protecting a burning vertex at turn " + std::to_string(n) + ": " +
                                ball_->group().render(ball_->element(w[i])),
                            n);
    }
    if (protected_.contains(w[i])) {
      throw SimulationError("vertex protected twice at turn " + std::to_string(n), n);
    }
  }
  for (uint32_t id : w) protected_.insert(id);

  // Spread: every unprotected in-ball neighbor of the previous frontier
  // catches fire. Older fire vertices cannot reach new ones (their
  // neighbors burned or were protected on earlier turns), so the frontier
  // scan is exact.
  last_new_fire_.clear();
  for (uint32_t v : frontier_) {
    ball_->for_each_neighbor(v, [&](uint32_t nb) {
      if (!protected_.contains(nb) && fire_.insert(nb)) last_new_fire_.push_back(nb);
    });
  }
  std::sort(last_new_fire_.begin(), last_new_fire_.end());
  frontier_ = last_new_fire_;
  turn_ = n;
}

IdSet Trajectory::fire_after(int n) const {
  IdSet f(ball->size());
  for (uint32_t id : initial_fire) f.insert(id);
  for (int k = 0; k < n; ++k) {
    for (uint32_t id : turns[static_cast<size_t>(k)].new_fire_ids) f.insert(id);
  }
  return f;
}

IdSet Trajectory::protected_after(int n) const {
  IdSet p(ball->size());
  for (int k = 0; k < n; ++k) {
    for (uint32_t id : turns[static_cast<size_t>(k)].protected_ids) p.insert(id);
  }
  return p;
}

uint64_t Trajectory::fire_count_after(int n) const {
  uint64_t c = initial_fire.size();
  for (int k = 0; k < n; ++k) c += turns[static_cast<size_t>(k)].new_fire_ids.size();
  return c;
}

Trajectory run_simulation(std::shared_ptr<const Ball> ball, const std::vector<Element>& initial_fire,
                          Strategy& strategy, const BudgetFn& budget, int horizon) {
  FireState state(ball, initial_fire);
  if (state.initial_radius() + horizon + 1 > ball->radius()) {
    throw SimulationError("horizon " + std::to_string(horizon) + " needs ball radius >= " +
                              std::to_string(state.initial_radius() + horizon + 1),
                          0);
  }
  strategy.bind(ball->group(), *ball, state.initial_fire_ids());

  Trajectory traj;
  traj.ball = ball;
  traj.initial_fire = state.initial_fire_ids();
  traj.initial_radius = state.initial_radius();
  for (int n = 1; n <= horizon; ++n) {
    FireView view{ball->group(), *ball, state.burning(), state.protected_set(), n, budget};
    std::vector<uint32_t> w = strategy.propose(view);
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    state.advance(w, budget);
    traj.turns.push_back(TurnRecord{std::move(w), state.last_new_fire(), strategy.last_shortfall()});
  }
  return traj;
}

Rational saved_fraction(const Trajectory& traj, int radius) {
  if (radius < 0 || radius > traj.ball->radius()) {
    throw Error("saved_fraction radius " + std::to_string(radius) + " outside ball");
  }
  if (radius > traj.initial_radius + traj.horizon()) {
    throw Error("saved_fraction radius " + std::to_string(radius) +
                " exceeds r0 + T = " + std::to_string(traj.initial_radius + traj.horizon()) +
                "; unburnt is vacuous there");
  }
  // ids are layer-major, so id < v(radius) iff word length <= radius
  const uint64_t vol = traj.ball->volume(radius);
  uint64_t burned = 0;
  for (uint32_t id : traj.initial_fire) burned += id < vol;
  for (const auto& t : traj.turns) {
    for (uint32_t id : t.new_fire_ids) burned += id < vol;
  }
  return Rational(vol - burned, vol);
}

BoundaryRelationReport check_boundary_relation(const Trajectory& traj) {
  BoundaryRelationReport report;
  const Ball& ball = *traj.ball;
  IdSet fire(ball.size()), prot(ball.size());
  for (uint32_t id : traj.initial_fire) fire.insert(id);
  for (int n = 0; n < traj.horizon(); ++n) {
    const TurnRecord& next = traj.turns[static_cast<size_t>(n)];
    for (uint32_t id : next.protected_ids) prot.insert(id);
    IdSet newly(ball.size());
    for (uint32_t id : next.new_fire_ids) newly.insert(id);

    bool ok = true;
    for (uint32_t b : outer_boundary(ball, fire)) {
      if (!newly.contains(b) && !prot.contains(b)) {
        ok = false;
        if (!report.counterexample) report.counterexample = {n, ball.element(b)};
        break;
      }
    }
    report.per_turn.push_back(ok);
    report.all_hold = report.all_hold && ok;
    for (uint32_t id : next.new_fire_ids) fire.insert(id);
  }
  return report;
}

SpreadIncrementReport spread_increment_audit(const Trajectory& traj, const BudgetFn& g) {
  SpreadIncrementReport report;
  BigInt cumulative_bound = 0;
  uint64_t cumulative_burned = traj.initial_fire.size();
  for (int n = 1; n <= traj.horizon(); ++n) {
    const TurnRecord& t = traj.turns[static_cast<size_t>(n - 1)];
    SpreadIncrementRow row;
    row.n = n;
    row.burned_new = t.new_fire_ids.size();
    row.protected_count = t.protected_ids.size();
    row.g_value = g.eval(n);
    row.per_turn_bound = row.g_value - BigInt(row.protected_count);
    row.per_turn_holds = BigInt(row.burned_new) >= row.per_turn_bound;
    cumulative_bound += row.per_turn_bound;
    cumulative_burned += row.burned_new;
    row.cumulative_bound = cumulative_bound;
    row.cumulative_burned = cumulative_burned;
    row.cumulative_holds = BigInt(cumulative_burned) >= cumulative_bound;
    report.all_per_turn = report.all_per_turn && row.per_turn_holds;
    report.all_cumulative = report.all_cumulative && row.cumulative_holds;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace cayfire
