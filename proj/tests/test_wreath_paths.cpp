#include <doctest.h>

#include <map>

#include "cayfire/wreath_paths.hpp"
#include "cayfire/structure.hpp"
#include "test_util.hpp"

using namespace cayfire;
using testutil::lamp_el;
using testutil::z_el;

namespace {

/// First `count` distinct nonempty lamp configurations of B_radius, one
/// representative element each, in canonical config order.
std::vector<Element> distinct_config_reps(const Group& ll, int radius, size_t count,
                                          size_t skip = 0) {
  Ball ball = Ball::enumerate(make_group(ll.spec_string()), radius);
  std::map<std::string, Element> by_config;
  for (uint32_t id = 0; id < ball.size(); ++id) {
    Element e = ball.element(id);
    WreathParts p = wreath_decompose(ll, e);
    if (p.lamps.empty()) continue;
    std::string key;
    for (auto& [k, v] : p.lamps) {
      key += k.bytes();
      key.push_back(static_cast<char>(v));
    }
    by_config.emplace(key, e);
  }
  std::vector<Element> out;
  size_t i = 0;
  for (auto& [key, e] : by_config) {
    if (i >= skip && out.size() < count) out.push_back(e);
    ++i;
  }
  REQUIRE(out.size() == count);
  return out;
}

Element fold_word(const Group& g, const WreathPath& p) {
  Element cur = p.start;
  for (int gi : p.word) cur = g.multiply_by_generator(cur, gi);
  return cur;
}

}  // namespace

TEST_CASE("classify_case") {
  auto ll = make_group("Z2wrZ");
  SUBCASE("all-distinct configs is case 1") {
    std::vector<Element> a = {lamp_el(*ll, {0}, 0), lamp_el(*ll, {1}, 1)};
    std::vector<Element> b = {lamp_el(*ll, {-1}, 0), lamp_el(*ll, {0, 1}, 1)};
    CHECK(classify_case(*ll, a, b) == FamilyCase::kDistinctConfigs);
  }
  SUBCASE("shared empty config with distinct positions is case 2") {
    std::vector<Element> a = {lamp_el(*ll, {}, -1), lamp_el(*ll, {}, -2)};
    std::vector<Element> b = {lamp_el(*ll, {}, 1), lamp_el(*ll, {}, 2)};
    CHECK(classify_case(*ll, a, b) == FamilyCase::kDistinctPositions);
  }
  SUBCASE("A distinct, B constant and absent from A is case 3") {
    std::vector<Element> a = {lamp_el(*ll, {0}, 0), lamp_el(*ll, {1}, 0)};
    std::vector<Element> b = {lamp_el(*ll, {2}, 1), lamp_el(*ll, {2}, 2)};
    CHECK(classify_case(*ll, a, b) == FamilyCase::kConstantSafe);
  }
  SUBCASE("mirror of case 3 is case 4") {
    std::vector<Element> a = {lamp_el(*ll, {2}, 1), lamp_el(*ll, {2}, 2)};
    std::vector<Element> b = {lamp_el(*ll, {0}, 0), lamp_el(*ll, {1}, 0)};
    CHECK(classify_case(*ll, a, b) == FamilyCase::kConstantBurning);
  }
  SUBCASE("length mismatch and duplicates are rejected") {
    std::vector<Element> a = {lamp_el(*ll, {0}, 0)};
    std::vector<Element> b;
    CHECK_THROWS_AS((void)classify_case(*ll, a, b), Error);
    std::vector<Element> dup = {lamp_el(*ll, {0}, 0)};
    CHECK_THROWS_AS((void)classify_case(*ll, dup, dup), Error);
  }
  SUBCASE("a family fitting no case is refused with a diagnosis") {
    // configs repeat within A, positions repeat, and neither side is constant
    std::vector<Element> a = {lamp_el(*ll, {0}, 0), lamp_el(*ll, {0}, 1)};
    std::vector<Element> b = {lamp_el(*ll, {1}, 0), lamp_el(*ll, {2}, 1)};
    CHECK_THROWS_WITH_AS((void)classify_case(*ll, a, b), doctest::Contains("none of the four"),
                         Error);
  }
}

TEST_CASE("choose_waypoints") {
  auto ll = make_group("Z2wrZ");
  SUBCASE("base Z: +5n and +10n with exact word lengths") {
    Waypoints wp = choose_waypoints(*ll, 2);
    CHECK(wp.g == z_el(10));
    CHECK(wp.g_star == z_el(20));
    auto base = wreath_base(*ll);
    CHECK(*base->closed_form_word_length(wp.g) == 10);
    CHECK(*base->closed_form_word_length(wp.g_star) == 20);
    CHECK(wreath_lamp_generator_value(*ll, wp.lamp_generator) == 1);
  }
  SUBCASE("general base groups need a cached ball") {
    auto lf = make_group("Z2wrF2");
    CHECK_THROWS_WITH_AS((void)choose_waypoints(*lf, 2), doctest::Contains("base ball"), Error);
    Ball base_ball = Ball::enumerate(make_group("F2"), 20);
    Waypoints wp = choose_waypoints(*lf, 2, &base_ball);
    auto base = wreath_base(*lf);
    CHECK(*base->closed_form_word_length(wp.g) == 10);
    CHECK(*base->closed_form_word_length(wp.g_star) == 20);
  }
}

TEST_CASE("pair family validation") {
  auto ll = make_group("Z2wrZ");
  SUBCASE("members outside B_n are rejected") {
    std::vector<Element> a = {lamp_el(*ll, {3}, 0)};  // word length 6
    std::vector<Element> b = {lamp_el(*ll, {1}, 1)};
    CHECK_THROWS_WITH_AS((void)make_pair_family(ll, 5, a, b), doctest::Contains("word length"),
                         Error);
  }
  SUBCASE("degenerate pairs are refused at construction") {
    auto fam = make_pair_family(ll, 3, {lamp_el(*ll, {0}, 0)}, {lamp_el(*ll, {1}, 1)});
    Waypoints wp = choose_waypoints(*ll, 3);
    CHECK_NOTHROW((void)construct_connecting_paths(fam, wp));
  }
}

TEST_CASE("case-1 paths: endpoints, length, certificates, step semantics") {
  auto ll = make_group("Z2wrZ");
  const int n = 2;
  std::vector<Element> a = {lamp_el(*ll, {0}, 1), lamp_el(*ll, {1}, 1)};
  std::vector<Element> b = {lamp_el(*ll, {-1}, 0), lamp_el(*ll, {0, 1}, 2)};
  auto fam = make_pair_family(ll, n, a, b);
  REQUIRE(fam.tag == FamilyCase::kDistinctConfigs);
  Waypoints wp = choose_waypoints(*ll, n);
  auto paths = construct_connecting_paths(fam, wp);
  REQUIRE(paths.size() == 2);

  for (size_t i = 0; i < paths.size(); ++i) {
    CHECK(paths[i].start == a[i]);
    CHECK(paths[i].end == b[i]);
    CHECK(fold_word(*ll, paths[i]) == b[i]);
    CHECK(paths[i].word.size() <= 100 * n);
    CHECK(paths[i].vertices.size() == paths[i].word.size() + 1);
  }
  CHECK(verify_case1_certificates(paths, fam, wp));

  // after the copy-at-g step the window at g carries the g-translate of x_i
  std::vector<Element> window = base_window(*wreath_base(*ll), n);
  for (size_t i = 0; i < paths.size(); ++i) {
    auto it = std::find_if(paths[i].steps.begin(), paths[i].steps.end(),
                           [](const PathStep& s) { return s.label == "copy-at-g"; });
    REQUIRE(it != paths[i].steps.end());
    const Element& at = paths[i].vertices[it->word_end];
    CHECK(lamp_restriction(*ll, at, wp.g, window) ==
          lamp_restriction(*ll, a[i], wreath_base(*ll)->identity(), window));
  }
}

TEST_CASE("case-1 all-off configuration is refused") {
  auto ll = make_group("Z2wrZ");
  std::vector<Element> a = {lamp_el(*ll, {}, 1), lamp_el(*ll, {1}, 1)};
  std::vector<Element> b = {lamp_el(*ll, {-1}, 0), lamp_el(*ll, {0, 1}, 2)};
  auto fam = make_pair_family(ll, 2, a, b);
  REQUIRE(fam.tag == FamilyCase::kDistinctConfigs);
  Waypoints wp = choose_waypoints(*ll, 2);
  CHECK_THROWS_WITH_AS((void)construct_connecting_paths(fam, wp), doctest::Contains("all-off"),
                       Error);
}

TEST_CASE("case-2 singleton: same config, different positions") {
  auto ll = make_group("Z2wrZ");
  std::vector<Element> a = {lamp_el(*ll, {0}, 1)};
  std::vector<Element> b = {lamp_el(*ll, {0}, 2)};
  auto fam = make_pair_family(ll, 3, a, b);
  REQUIRE(fam.tag == FamilyCase::kDistinctPositions);
  Waypoints wp = choose_waypoints(*ll, 3);
  auto paths = construct_connecting_paths(fam, wp);
  REQUIRE(paths.size() == 1);
  CHECK(fold_word(*ll, paths[0]) == b[0]);
  CHECK(paths[0].word.size() <= 300);
  auto report = verify_disjointness(paths, fam.tag, 3);
  CHECK(report.pairwise_disjoint);
  CHECK(report.max_count == 0);
}

TEST_CASE("degenerate equal endpoints are refused") {
  auto ll = make_group("Z2wrZ");
  // equal endpoints cannot even form a family (elements must be distinct)
  std::vector<Element> a = {lamp_el(*ll, {0}, 1)};
  CHECK_THROWS_AS((void)make_pair_family(ll, 3, a, a), Error);
}

TEST_CASE("case-1 family of 8 from B3 is pairwise disjoint") {
  auto ll = make_group("Z2wrZ");
  auto reps = distinct_config_reps(*ll, 3, 16);
  std::vector<Element> a(reps.begin(), reps.begin() + 8);
  std::vector<Element> b(reps.begin() + 8, reps.end());
  auto fam = make_pair_family(ll, 3, a, b);
  REQUIRE(fam.tag == FamilyCase::kDistinctConfigs);
  Waypoints wp = choose_waypoints(*ll, 3);
  auto paths = construct_connecting_paths(fam, wp);
  auto report = verify_disjointness(paths, fam.tag, 3);
  CHECK(report.pairwise_disjoint);
  CHECK(report.within_bound);
  CHECK(verify_case1_certificates(paths, fam, wp));
}

TEST_CASE("case-2 block family: bounded intersections and dilution") {
  auto ll = make_group("Z2wrZ");
  const int n = 16;
  std::vector<std::vector<int64_t>> alpha = {{0}, {-1}, {0, -1}, {-2}};
  std::vector<std::vector<int64_t>> beta = {{1}, {2}, {1, 2}, {0, 1}};
  std::vector<Element> a, b;
  for (int i = 0; i < 16; ++i) {
    a.push_back(lamp_el(*ll, alpha[static_cast<size_t>(i / 4)], i - 16));
    b.push_back(lamp_el(*ll, beta[static_cast<size_t>(i % 4)], i + 1));
  }
  auto fam = make_pair_family(ll, n, a, b);
  REQUIRE(fam.tag == FamilyCase::kDistinctPositions);
  Waypoints wp = choose_waypoints(*ll, n);
  auto paths = construct_connecting_paths(fam, wp);
  for (size_t i = 0; i < paths.size(); ++i) CHECK(fold_word(*ll, paths[i]) == b[i]);

  auto report = verify_disjointness(paths, fam.tag, n);
  CHECK(report.within_bound);
  CHECK(report.max_count <= 100 * n * n);
  CHECK(report.max_count == 6);  // orthogonal 4-blocks on each side

  auto diluted = dilute_paths(paths, report);
  size_t floor_bound = (paths.size() + static_cast<size_t>(report.max_count)) /
                       (static_cast<size_t>(report.max_count) + 1);
  CHECK(diluted.kept_indices.size() >= floor_bound);
  auto recheck = verify_disjointness(diluted.paths, FamilyCase::kDistinctConfigs, n);
  CHECK(recheck.pairwise_disjoint);
}

TEST_CASE("case-3 paths run from the constant side and are reversed") {
  auto ll = make_group("Z2wrZ");
  std::vector<std::vector<int64_t>> acfg = {{0}, {1}, {-1}, {0, 1}};
  std::vector<Element> a, b;
  for (int i = 0; i < 4; ++i) {
    a.push_back(lamp_el(*ll, acfg[static_cast<size_t>(i)], 0));
    b.push_back(lamp_el(*ll, {2}, i + 1));
  }
  auto fam = make_pair_family(ll, 5, a, b);
  REQUIRE(fam.tag == FamilyCase::kConstantSafe);
  Waypoints wp = choose_waypoints(*ll, 5);
  auto paths = construct_connecting_paths(fam, wp);
  for (size_t i = 0; i < 4; ++i) {
    CHECK(paths[i].start == a[i]);
    CHECK(paths[i].end == b[i]);
    CHECK(fold_word(*ll, paths[i]) == b[i]);
  }
  auto report = verify_disjointness(paths, fam.tag, 5);
  CHECK(report.max_count <= 100 * 25);

  // case 4 is the mirrored construction, no reversal
  auto fam4 = make_pair_family(ll, 5, b, a);
  REQUIRE(fam4.tag == FamilyCase::kConstantBurning);
  auto paths4 = construct_connecting_paths(fam4, wp);
  for (size_t i = 0; i < 4; ++i) CHECK(fold_word(*ll, paths4[i]) == a[i]);
}

TEST_CASE("dilution on trivial inputs") {
  auto ll = make_group("Z2wrZ");
  SUBCASE("already-disjoint families pass through unchanged") {
    auto reps = distinct_config_reps(*ll, 3, 8);
    std::vector<Element> a(reps.begin(), reps.begin() + 4);
    std::vector<Element> b(reps.begin() + 4, reps.end());
    auto fam = make_pair_family(ll, 3, a, b);
    auto wp = choose_waypoints(*ll, 3);
    auto paths = construct_connecting_paths(fam, wp);
    auto report = verify_disjointness(paths, fam.tag, 3);
    REQUIRE(report.pairwise_disjoint);
    auto diluted = dilute_paths(paths, report);
    CHECK(diluted.kept_indices.size() == paths.size());
  }
  SUBCASE("empty input stays empty") {
    DisjointnessReport empty_report;
    auto diluted = dilute_paths({}, empty_report);
    CHECK(diluted.paths.empty());
  }
  SUBCASE("mismatched report is rejected") {
    auto reps = distinct_config_reps(*ll, 2, 2);
    auto fam = make_pair_family(ll, 2, {reps[0]}, {reps[1]});
    auto wp = choose_waypoints(*ll, 2);
    auto paths = construct_connecting_paths(fam, wp);
    DisjointnessReport wrong;  // sized for zero paths
    CHECK_THROWS_AS((void)dilute_paths(paths, wrong), Error);
  }
}

TEST_CASE("general lamp modulus compiles too") {
  auto l3 = make_group("Z3wrZ");
  std::vector<Element> a = {wreath_compose(*l3, z_el(1), {{z_el(0), 1}})};
  std::vector<Element> b = {wreath_compose(*l3, z_el(0), {{z_el(1), 2}})};
  Ball l3_ball = Ball::enumerate(l3, 3);
  auto fam = make_pair_family(l3, 3, a, b, &l3_ball);
  Waypoints wp = choose_waypoints(*l3, 3);
  auto paths = construct_connecting_paths(fam, wp);
  REQUIRE(paths.size() == 1);
  Element cur = paths[0].start;
  for (int gi : paths[0].word) cur = l3->multiply_by_generator(cur, gi);
  CHECK(cur == b[0]);
}
