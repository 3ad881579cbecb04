#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cayfire/ball.hpp"
#include "cayfire/budget.hpp"
#include "cayfire/element.hpp"
#include "cayfire/error.hpp"
#include "cayfire/id_set.hpp"
#include "cayfire/rational.hpp"

namespace cayfire {

class Strategy;

/// Live protection/spread state over a fixed ambient ball.
///
/// Turn order at turn n: the chosen W_n is protected first, then the fire
/// spreads from F_{n-1} to every unprotected in-ball neighbor. The
/// truncation guard r0 + n + 1 <= ball radius is enforced on every advance
/// so reported sets are exact, never truncation artifacts.
class FireState {
 public:
  FireState(std::shared_ptr<const Ball> ball, const std::vector<Element>& initial_fire);

  const Ball& ball() const { return *ball_; }
  const std::shared_ptr<const Ball>& ball_ptr() const { return ball_; }
  int turn() const { return turn_; }
  int initial_radius() const { return r0_; }
  const IdSet& burning() const { return fire_; }
  const IdSet& protected_set() const { return protected_; }
  const std::vector<uint32_t>& initial_fire_ids() const { return initial_ids_; }
  const std::vector<uint32_t>& last_new_fire() const { return last_new_fire_; }

  /// Plays one turn with protection set W (sorted unique ids). Throws
  /// SimulationError on any illegal W or truncation-guard violation.
  void advance(std::span<const uint32_t> w, const BudgetFn& budget);

 private:
  std::shared_ptr<const Ball> ball_;
  int turn_ = 0;
  int r0_ = 0;
  IdSet fire_;
  IdSet protected_;
  std::vector<uint32_t> initial_ids_;
  std::vector<uint32_t> frontier_;
  std::vector<uint32_t> last_new_fire_;
};

FireState init_fire(std::shared_ptr<const Ball> ball, const std::vector<Element>& initial_fire);

struct TurnRecord {
  std::vector<uint32_t> protected_ids;  // W_n, sorted
  std::vector<uint32_t> new_fire_ids;   // F_n \ F_{n-1}, sorted
  int64_t shortfall = 0;                // scheduled-but-dropped count (FixedSet)
};

/// Complete record of one simulation; plain data so verifiers can be run on
/// hand-built (including deliberately corrupted) trajectories.
struct Trajectory {
  std::shared_ptr<const Ball> ball;
  std::vector<uint32_t> initial_fire;  // sorted ids
  int initial_radius = 0;
  std::vector<TurnRecord> turns;

  int horizon() const { return static_cast<int>(turns.size()); }
  IdSet fire_after(int n) const;       // F_n
  IdSet protected_after(int n) const;  // union of W_1..W_n
  uint64_t fire_count_after(int n) const;
};

/// Runs `horizon` turns of `strategy` under `budget`. Any illegal strategy
/// output aborts with a SimulationError naming the offending turn.
Trajectory run_simulation(std::shared_ptr<const Ball> ball, const std::vector<Element>& initial_fire,
                          Strategy& strategy, const BudgetFn& budget, int horizon);

/// |U_T cap B_n| / v(n) with U_T the set unburnt at the final recorded turn.
/// Requires n <= ball radius and n <= r0 + T.
Rational saved_fraction(const Trajectory& traj, int radius);

struct BoundaryRelationReport {
  std::vector<bool> per_turn;  // index n: boundary(F_n) covered at turn n+1
  bool all_hold = true;
  std::optional<std::pair<int, Element>> counterexample;  // (n, offending vertex)
};

/// Checks that every boundary vertex of F_n either burns at turn n+1 or was
/// protected by then — the relation every legal trajectory satisfies.
/// Recomputed from scratch; independent of the engine's frontier bookkeeping.
BoundaryRelationReport check_boundary_relation(const Trajectory& traj);

struct SpreadIncrementRow {
  int n = 0;
  uint64_t burned_new = 0;
  uint64_t protected_count = 0;
  BigInt g_value;
  BigInt per_turn_bound;  // g(n) - |W_n|
  bool per_turn_holds = false;
  uint64_t cumulative_burned = 0;
  BigInt cumulative_bound;  // sum_{k<=n} (g(k) - |W_k|)
  bool cumulative_holds = false;
};

struct SpreadIncrementReport {
  std::vector<SpreadIncrementRow> rows;
  bool all_per_turn = true;
  bool all_cumulative = true;
};

/// Juxtaposes the logged spread increments |F_n \ F_{n-1}| (and cumulative
/// |F_n|) against g(n) minus the logged protection counts.
SpreadIncrementReport spread_increment_audit(const Trajectory& traj, const BudgetFn& g);

}  // namespace cayfire
