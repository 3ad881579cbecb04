#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cayfire/ball.hpp"
#include "cayfire/budget.hpp"
#include "cayfire/fire.hpp"
#include "cayfire/rational.hpp"

namespace cayfire::xlab {

// --- budget analytics -------------------------------------------------------

struct BudgetClassification {
  enum class Kind { kSubexponential, kExponential, kUnclassified };
  Kind kind = Kind::kUnclassified;
  Rational rate_squared;  // exponential only: rate = sqrt(num/den)
  std::string describe() const;
};

/// Symbolic classification from the budget variant; Table budgets are
/// reported unclassified (numeric limit detection is unsound).
BudgetClassification classify_budget(const BudgetFn& budget);

/// Exact sum_{k=1}^{n} f(k).
BigInt budget_prefix_sum(const BudgetFn& budget, int n);

// --- experiment runner -------------------------------------------------------

/// Parsed form of the flat key=value config files:
///
///   [experiment]
///   group = Z^2
///   f0 = radius:0            # or elements:<hex>,<hex>,...
///   strategy = null          # see strategy specifiers
///   budget = const:0         # see budget specifiers
///   horizon = 20
///   rmax = 22
///   report_radii = 5,10,20
///   seed = 42
///   output = out.csv         # optional; stdout when absent
///   memory_budget_mb = 2048  # optional
struct ExperimentConfig {
  std::string group_spec;
  std::string f0_spec = "radius:0";
  std::string strategy_spec = "null";
  std::string budget_spec = "const:0";
  int horizon = 0;
  int rmax = 0;
  std::vector<int> report_radii;
  uint64_t seed = 0;
  std::string output_path;
  uint64_t memory_budget_mb = 2048;

  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig parse_file(const std::string& path);
};

struct TurnRow {
  int turn = 0;
  uint64_t burned_total = 0;
  uint64_t burned_new = 0;
  uint64_t protected_this_turn = 0;
  uint64_t protected_total = 0;
  int64_t shortfall = 0;
  std::vector<Rational> saved_by_radius;  // aligned with report_radii
  Rational fire_density;                  // |F_n| / v(min(r0+n, rmax))
};

struct RegimeRow {
  int n = 0;
  BigInt prefix_sum_10n;   // sum_{k<=10n} f(k)
  uint64_t v_right = 0;    // growth of the right factor at n
  bool in_regime = false;  // prefix sum < v_right
};

struct ExperimentReport {
  ExperimentConfig config;
  std::string group_spec;  // canonical
  std::string strategy_name;
  std::string budget_desc;
  std::string budget_class;
  int initial_radius = 0;
  std::vector<int> report_radii;
  std::vector<TurnRow> rows;
  std::vector<Rational> final_saved;  // per report radius
  std::vector<RegimeRow> regime;      // direct products only
  double wall_seconds = 0;            // never emitted to CSV
};

ExperimentReport run_experiment(const ExperimentConfig& config);

/// Deterministic CSV: stable column order, exact fractions, no timing data.
void emit_csv(const ExperimentReport& report, std::ostream& out);
void emit_csv(const ExperimentReport& report, const std::string& path);

// --- verifier batches --------------------------------------------------------

struct CheckRow {
  std::string kind;       // "random:p=0.5" | "sub-ball:r=2" | "half-space:c=0" | "field:pm1" | ...
  uint64_t subject = 0;   // |A| or field index
  Rational lhs, rhs;
  bool holds = false;
  bool identities_hold = true;  // indicator identities, where applicable
};

struct CheckBatch {
  std::string group_spec;
  int radius = 0;
  std::vector<CheckRow> rows;
  uint64_t violations = 0;

  void emit_csv(std::ostream& out) const;
};

/// Random subsets of B_{3R} at p in {0.1, 0.5, 0.9} plus structured families,
/// checking the ball-restricted isoperimetric inequality and the two
/// indicator identities on every instance.
CheckBatch run_isoperimetry_batch(GroupPtr group, int radius, int trials, uint64_t seed,
                                  const MemoryBudget& budget = {});

/// Random +/-1 fields and indicator fields, checking the L1 Poincare
/// inequality (and the identities on indicator instances).
CheckBatch run_poincare_batch(GroupPtr group, int radius, int trials, uint64_t seed,
                              const MemoryBudget& budget = {});

// --- shield verification -------------------------------------------------------

struct ShieldCensusRow {
  int radius = 0;
  uint64_t shield_count = 0;
  uint64_t volume = 0;
  Rational ratio;
};

struct ShieldVerifyReport {
  int m_parameter = 0;
  int horizon = 0;
  int ball_radius = 0;
  std::vector<TurnRow> turns;
  bool budgets_ok = true;        // |W_n| <= 2^((n+2)/2), exact integer comparison
  bool no_shield_burn = true;    // no element of S(M) in the ball ever burns
  bool emissions_legal = true;   // the run completed (engine enforces legality)
  std::vector<ShieldCensusRow> census;  // the last 4 cached radii
  Rational target;               // 2^-(M+3)
  bool within_factor_two = true; // top-radius ratio within [target/2, 2*target]
  bool monotone_convergence = true;  // ratios non-decreasing, all in the window
  double wall_seconds = 0;

  void emit_csv(std::ostream& out) const;
};

/// Runs the shield strategy (F0 = {identity}) to the horizon on a ball of
/// the given census radius, audits every per-turn requirement, and censuses
/// |S cap B_R| / v(R) over the last four radii.
ShieldVerifyReport shield_verify(int m_parameter, int horizon, int census_radius,
                                 const MemoryBudget& budget = {});

// --- cache admin ---------------------------------------------------------------

/// $CAYFIRE_CACHE_DIR when set, else ./cayfire-cache.
std::filesystem::path cache_dir();

struct CacheStatus {
  bool ok = false;
  std::string path;
  std::string detail;
};

CacheStatus cache_build(const std::string& group_spec, int radius, const MemoryBudget& budget = {});
CacheStatus cache_verify(const std::string& group_spec, int radius);
std::vector<std::string> cache_list();

/// Loads a cached ball, building and saving it first when absent.
Ball cache_load_or_build(const std::string& group_spec, int radius,
                         const MemoryBudget& budget = {});

}  // namespace cayfire::xlab
