#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cayfire/strategy.hpp"
#include "cayfire/xlab.hpp"

using namespace cayfire;
namespace xl = cayfire::xlab;

TEST_CASE("budget evaluation and prefix sums") {
  CHECK(xl::budget_prefix_sum(BudgetFn::constant(5), 10) == 50);
  CHECK(xl::budget_prefix_sum(BudgetFn::polynomial(1, 2), 10) == 385);

  // floor(2^((n+2)/2)): exact powers at even n, isqrt in between
  const int64_t expected[] = {2, 4, 5, 8, 11, 16, 22, 32, 45, 64, 90, 128};
  BudgetFn shield = BudgetFn::half_power_of_two();
  for (int n = 1; n <= 12; ++n) {
    CHECK(shield.eval(n) == expected[n - 1]);
    CHECK(shield.allows(n, static_cast<uint64_t>(expected[n - 1])));
    CHECK(!shield.allows(n, static_cast<uint64_t>(expected[n - 1]) + 1));
  }

  BudgetFn table = BudgetFn::table({3, 1, 4});
  CHECK(table.eval(3) == 4);
  CHECK_THROWS_AS((void)table.eval(4), Error);
  BudgetFn repeat = BudgetFn::table({3, 1, 4}, true);
  CHECK(repeat.eval(9) == 4);
}

TEST_CASE("budget classification is symbolic") {
  CHECK(xl::classify_budget(BudgetFn::constant(5)).kind ==
        xl::BudgetClassification::Kind::kSubexponential);
  CHECK(xl::classify_budget(BudgetFn::polynomial(2, 3)).kind ==
        xl::BudgetClassification::Kind::kSubexponential);
  auto exp = xl::classify_budget(BudgetFn::half_power_of_two());
  CHECK(exp.kind == xl::BudgetClassification::Kind::kExponential);
  CHECK(exp.rate_squared == 2);
  CHECK(exp.describe() == "exponential(rate=sqrt(2))");
  CHECK(xl::classify_budget(BudgetFn::table({1, 2})).kind ==
        xl::BudgetClassification::Kind::kUnclassified);
}

TEST_CASE("budget specifiers parse and round-trip") {
  for (const char* spec : {"const:5", "poly:1,2", "2^((n+2)/2)", "table:1,2,3", "table:1,2,3+"}) {
    CHECK(BudgetFn::parse(spec).to_string() == spec);
  }
  CHECK(BudgetFn::parse("shield").to_string() == "2^((n+2)/2)");
  CHECK_THROWS_AS((void)BudgetFn::parse("warp:9"), ParseError);
  CHECK_THROWS_AS((void)BudgetFn::parse("poly:1"), ParseError);
}

TEST_CASE("experiment config parsing") {
  std::istringstream good(R"([experiment]
group = Z^2
f0 = radius:0
strategy = null
budget = const:0
horizon = 4
rmax = 6
report_radii = 2,4
seed = 7
)");
  auto config = xl::ExperimentConfig::parse(good);
  CHECK(config.group_spec == "Z^2");
  CHECK(config.horizon == 4);
  CHECK(config.report_radii == std::vector<int>{2, 4});
  CHECK(config.seed == 7);

  std::istringstream missing("group = Z^2\nhorizon = 3\n");
  CHECK_THROWS_WITH_AS((void)xl::ExperimentConfig::parse(missing), doctest::Contains("rmax"),
                       ParseError);
  std::istringstream unknown("group = Z^2\nhorizon = 3\nrmax = 5\ncolor = red\n");
  CHECK_THROWS_AS((void)xl::ExperimentConfig::parse(unknown), ParseError);
}

TEST_CASE("run_experiment: null on Z^2 saves nothing") {
  xl::ExperimentConfig config;
  config.group_spec = "Z^2";
  config.horizon = 20;
  config.rmax = 22;
  config.report_radii = {5, 10, 20};
  auto report = xl::run_experiment(config);
  REQUIRE(report.final_saved.size() == 3);
  for (const auto& s : report.final_saved) CHECK(s == 0);
}

TEST_CASE("run_experiment: branch-cut on F2 saves a quarter at radius 10") {
  xl::ExperimentConfig config;
  config.group_spec = "F2";
  config.strategy_spec = "branch-cut";
  config.budget_spec = "const:1";
  config.horizon = 10;
  config.rmax = 12;
  config.report_radii = {10};
  auto report = xl::run_experiment(config);
  BigInt pow3_10 = 59049;
  CHECK(report.final_saved[0] == Rational((pow3_10 - 1) / 2, 2 * pow3_10 - 1));
}

TEST_CASE("CSV emission is deterministic and exact") {
  xl::ExperimentConfig config;
  config.group_spec = "F2";
  config.strategy_spec = "branch-cut";
  config.budget_spec = "const:1";
  config.horizon = 6;
  config.rmax = 8;
  config.report_radii = {3, 6};
  auto r1 = xl::run_experiment(config);
  auto r2 = xl::run_experiment(config);
  std::ostringstream s1, s2;
  xl::emit_csv(r1, s1);
  xl::emit_csv(r2, s2);
  CHECK(s1.str() == s2.str());
  CHECK(s1.str().find("saved_r3") != std::string::npos);
  CHECK(s1.str().find("29524/118097") != std::string::npos);  // exact fraction at T

  // a zero-turn experiment emits the header only
  xl::ExperimentConfig empty = config;
  empty.horizon = 0;
  empty.report_radii = {};
  std::ostringstream s3;
  xl::emit_csv(xl::run_experiment(empty), s3);
  int lines = 0;
  for (char c : s3.str()) lines += c == '\n';
  CHECK(lines == 2);  // comment echo + column header
}

TEST_CASE("regime juxtaposition on F2xZ") {
  xl::ExperimentConfig config;
  config.group_spec = "F2xZ";
  config.budget_spec = "const:1";
  config.horizon = 3;
  config.rmax = 5;
  config.report_radii = {2, 3};
  auto report = xl::run_experiment(config);
  REQUIRE(report.regime.size() == 2);
  // sum_{k<=10n} 1 = 10n vs v_Z(n) = 2n+1
  CHECK(report.regime[0].n == 2);
  CHECK(report.regime[0].prefix_sum_10n == 20);
  CHECK(report.regime[0].v_right == 5);
  CHECK(!report.regime[0].in_regime);

  xl::ExperimentConfig zero = config;
  zero.budget_spec = "const:0";
  auto report0 = xl::run_experiment(zero);
  CHECK(report0.regime[0].in_regime);
}

TEST_CASE("verifier batches are deterministic and clean") {
  auto b1 = xl::run_isoperimetry_batch(make_group("Z^2"), 2, 40, 11);
  auto b2 = xl::run_isoperimetry_batch(make_group("Z^2"), 2, 40, 11);
  CHECK(b1.violations == 0);
  std::ostringstream s1, s2;
  b1.emit_csv(s1);
  b2.emit_csv(s2);
  CHECK(s1.str() == s2.str());

  auto p = xl::run_poincare_batch(make_group("Z^2"), 2, 20, 13);
  CHECK(p.violations == 0);
}

TEST_CASE("cache admin") {
  auto tmp = std::filesystem::temp_directory_path() / "cayfire_cache_test";
  std::filesystem::remove_all(tmp);
  setenv("CAYFIRE_CACHE_DIR", tmp.c_str(), 1);

  auto built = xl::cache_build("Z^2", 10, MemoryBudget{});
  CHECK(built.ok);
  auto verified = xl::cache_verify("Z^2", 10);
  CHECK(verified.ok);

  auto listed = xl::cache_list();
  REQUIRE(listed.size() == 1);
  CHECK(listed[0] == "Z^2_R10.cayb");

  // flip one byte: checksum failure
  {
    std::fstream f(built.path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(40);
    char c;
    f.seekg(40);
    f.get(c);
    f.seekp(40);
    f.put(static_cast<char>(c ^ 0x20));
  }
  auto corrupt = xl::cache_verify("Z^2", 10);
  CHECK(!corrupt.ok);
  CHECK(corrupt.detail.find("checksum") != std::string::npos);

  CHECK(!xl::cache_verify("Z^2", 11).ok);  // missing cache

  std::filesystem::remove_all(tmp);
  unsetenv("CAYFIRE_CACHE_DIR");
}

TEST_CASE("shield budget allowance helper clamps to the universe") {
  CHECK(budget_allowance(BudgetFn::half_power_of_two(), 40, 1000) == 1000);
  CHECK(budget_allowance(BudgetFn::constant(3), 1, 1000) == 3);
}
