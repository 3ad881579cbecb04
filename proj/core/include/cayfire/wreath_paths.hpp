#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cayfire/ball.hpp"
#include "cayfire/element.hpp"
#include "cayfire/group.hpp"

namespace cayfire {

/// The four pair-family shapes the connecting-path construction handles.
enum class FamilyCase {
  kDistinctConfigs = 1,    // all lamp configurations across A u B distinct
  kDistinctPositions = 2,  // all lamplighter positions across A u B distinct
  kConstantSafe = 3,       // A distinct configs; B one shared config (absent
                           // from A) with distinct positions
  kConstantBurning = 4,    // roles of A and B swapped
};

/// Equal-length lists of burning endpoints a_i and safe endpoints b_i inside
/// B_n of a wreath product, classified into one of the four cases.
struct PairFamily {
  GroupPtr group;
  int scale_n = 0;
  std::vector<Element> burning;  // a_i
  std::vector<Element> safe;     // b_i
  FamilyCase tag = FamilyCase::kDistinctConfigs;
};

/// Returns the first case (in order 1..4) whose conditions hold; throws
/// Error with a diagnosis when none does or the lists are malformed.
FamilyCase classify_case(const Group& group, std::span<const Element> burning,
                         std::span<const Element> safe);

/// Classifies and validates (distinct elements, membership in B_n verified
/// via the closed-form word length or `ball` when given).
PairFamily make_pair_family(GroupPtr group, int scale_n, std::vector<Element> burning,
                            std::vector<Element> safe, const Ball* ball = nullptr);

/// The two fixed far elements g, g* (word lengths exactly 5n and 10n) and
/// the lamp generator used for beacons.
struct Waypoints {
  Element g;
  Element g_star;
  int lamp_generator = 0;
  int scale_n = 0;
};

/// For base Z the waypoints are +5n and +10n; other base groups need
/// `base_ball` with radius >= 10n (least-encoded layer elements are taken).
Waypoints choose_waypoints(const Group& group, int scale_n, const Ball* base_ball = nullptr);

struct PathStep {
  std::string label;
  size_t word_begin = 0;
  size_t word_end = 0;
};

/// One compiled connecting path: a generator word from start to end with its
/// prefix-product vertices and per-recipe-step annotations.
struct WreathPath {
  Element start, end;
  std::vector<int> word;
  std::vector<Element> vertices;  // word.size() + 1 entries
  std::vector<PathStep> steps;
};

/// Auxiliary lookup structures for compiling over general base groups; the
/// standard lamplighter over Z needs neither.
struct PathCompileEnv {
  const Ball* base_ball = nullptr;    // radius >= 21n for general bases
  const Ball* wreath_ball = nullptr;  // radius >= n, for geodesics of a_i
};

/// Compiles one path a_i -> b_i per pair (via b_i -> a_i reversed for case
/// 3). Every path is endpoint-exact by construction and at most 100n long;
/// exceeding that budget is a hard failure.
std::vector<WreathPath> construct_connecting_paths(const PairFamily& family,
                                                   const Waypoints& waypoints,
                                                   const PathCompileEnv& env = {});

struct DisjointnessReport {
  bool pairwise_disjoint = true;
  std::vector<std::vector<uint32_t>> intersecting;  // per path: other paths met
  std::vector<int> intersection_counts;             // per path: how many others met
  int max_count = 0;
  bool within_bound = true;  // case 1: fully disjoint; cases 2-4: max <= 100 n^2
};

/// Exact pairwise vertex-set intersection analysis.
DisjointnessReport verify_disjointness(std::span<const WreathPath> paths, FamilyCase tag,
                                       int scale_n);

struct DilutionResult {
  std::vector<size_t> kept_indices;
  std::vector<WreathPath> paths;
};

/// Greedy scan in index order keeping each path iff it meets no kept path;
/// the result is pairwise disjoint and has at least N/(maxdeg+1) members.
DilutionResult dilute_paths(std::span<const WreathPath> paths, const DisjointnessReport& report);

/// Base-group window positions of B_n (closed form on Z, layers otherwise).
std::vector<Element> base_window(const Group& base, int n, const Ball* base_ball = nullptr);

/// Lamp values of `e` restricted to {center * q : q in window}, reported in
/// window order (0 where unlit).
std::vector<int> lamp_restriction(const Group& wreath, const Element& e, const Element& center,
                                  std::span<const Element> window);

/// The case-1 separation witness: at every vertex of every path, the lamp
/// restriction to one of the four windows (B_n(e), B_n(g), B_n(g*) with the
/// x_i pattern, or B_n(e) with y_i) matches exactly.
bool verify_case1_certificates(std::span<const WreathPath> paths, const PairFamily& family,
                               const Waypoints& waypoints, const PathCompileEnv& env = {});

}  // namespace cayfire
