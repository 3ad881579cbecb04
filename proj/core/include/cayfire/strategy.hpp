#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cayfire/ball.hpp"
#include "cayfire/budget.hpp"
#include "cayfire/id_set.hpp"

namespace cayfire {

/// What a strategy may observe when choosing W_n.
struct FireView {
  const Group& group;
  const Ball& ball;
  const IdSet& burning;        // F_{n-1}
  const IdSet& protected_set;  // union of earlier W_k
  int turn;                    // n, the turn being played (>= 1)
  const BudgetFn& budget;
};

/// f(n) clamped to the ball size, as a per-turn selection cap.
uint64_t budget_allowance(const BudgetFn& budget, int turn, uint64_t universe);

/// A deterministic protection rule. Built-ins are stateless after bind and
/// may serve concurrent trajectories.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::string name() const = 0;

  /// Called once before turn 1; validates applicability (group variant,
  /// initial fire shape, parameter constraints) and resolves any
  /// precomputed targets against the ambient ball.
  virtual void bind(const Group& group, const Ball& ball, const std::vector<uint32_t>& initial_fire) {
    (void)group;
    (void)ball;
    (void)initial_fire;
  }

  /// Returns W_n as ids (order irrelevant; the engine sorts). Must satisfy
  /// |W_n| <= f(n) and be disjoint from fire and previous protections.
  virtual std::vector<uint32_t> propose(const FireView& view) = 0;

  /// Scheduled-but-dropped count for the last proposal (FixedSet only).
  virtual int64_t last_shortfall() const { return 0; }
};

std::unique_ptr<Strategy> make_null_strategy();

/// Free groups with F0 = {identity}: protects the first canonical generator
/// vertex at turn 1, nothing afterwards; the untouched branch never burns.
std::unique_ptr<Strategy> make_branch_cut_strategy();

/// Protects up to f(n) outer-boundary vertices, farthest from the origin
/// first, canonical order breaking ties. The seed is recorded for report
/// echoing; selection itself is fully deterministic.
std::unique_ptr<Strategy> make_greedy_boundary_strategy(uint64_t seed);

/// Emits schedule[n] minus already-burning vertices each turn (the drop
/// count is logged as shortfall, not an error). Schedule sets must be
/// pairwise disjoint and inside the ball.
std::unique_ptr<Strategy> make_fixed_set_strategy(std::vector<std::vector<Element>> schedule);

/// The lamplighter shield on Z2 wr Z: cumulatively protects the slices P_n
/// of the inner boundary of the shield set S(M) (lamps 0..M lit, nothing
/// below 0, position M+2), new lamp patterns reaching up to position
/// M + n/2, enumerated highest-set-position first then canonical order.
/// Requires M > r0.
std::unique_ptr<Strategy> make_lamplighter_shield_strategy(int m_parameter);

/// "null" | "branch-cut" | "greedy:seed=N" | "fixed:file=PATH" | "shield:M=K"
/// The fixed-set schedule file holds lines "<turn> <hex> <hex> ...".
std::unique_ptr<Strategy> parse_strategy(std::string_view spec);

/// Loads a fixed-set schedule from the file format above.
std::vector<std::vector<Element>> load_schedule_file(const std::string& path);

/// Membership test for the shield set S(M) on Z2 wr Z.
bool shield_set_contains(const Group& group, int m_parameter, const Element& e);

/// The protected slice P_n (cumulative through turn n) for the shield.
std::vector<Element> shield_slice(const Group& group, int m_parameter, int turn);

}  // namespace cayfire
