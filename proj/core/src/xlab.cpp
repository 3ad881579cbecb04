#include "cayfire/xlab.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "cayfire/isoperimetry.hpp"
#include "cayfire/strategy.hpp"
#include "cayfire/structure.hpp"

namespace cayfire::xlab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<int> parse_radius_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  return out;
}

}  // namespace

// --- budget analytics --------------------------------------------------------

std::string BudgetClassification::describe() const {
  switch (kind) {
    case Kind::kSubexponential:
      return "subexponential";
    case Kind::kExponential:
      return "exponential(rate=sqrt(" + to_fraction_string(rate_squared) + "))";
    case Kind::kUnclassified:
      return "unclassified";
  }
  return "unclassified";
}

BudgetClassification classify_budget(const BudgetFn& budget) {
  BudgetClassification c;
  switch (budget.kind()) {
    case BudgetFn::Kind::kConstant:
    case BudgetFn::Kind::kPolynomial:
      c.kind = BudgetClassification::Kind::kSubexponential;
      break;
    case BudgetFn::Kind::kExponential:
      if (budget.num() > budget.den() && budget.scale() > 0) {
        c.kind = BudgetClassification::Kind::kExponential;
        c.rate_squared = Rational(budget.num(), budget.den());
      } else {
        c.kind = BudgetClassification::Kind::kSubexponential;
      }
      break;
    case BudgetFn::Kind::kTable:
      c.kind = BudgetClassification::Kind::kUnclassified;
      break;
  }
  return c;
}

BigInt budget_prefix_sum(const BudgetFn& budget, int n) {
  if (n < 1) throw Error("budget prefix sum needs n >= 1");
  BigInt sum = 0;
  for (int k = 1; k <= n; ++k) sum += budget.eval(k);
  return sum;
}

// --- config parsing ------------------------------------------------------------

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig c;
  std::string line;
  int lineno = 0;
  bool saw_group = false, saw_horizon = false, saw_rmax = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == '[') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(t.substr(0, eq)), value = trim(t.substr(eq + 1));
    try {
      if (key == "group") {
        c.group_spec = value;
        saw_group = true;
      } else if (key == "f0") {
        c.f0_spec = value;
      } else if (key == "strategy") {
        c.strategy_spec = value;
      } else if (key == "budget") {
        c.budget_spec = value;
      } else if (key == "horizon") {
        c.horizon = std::stoi(value);
        saw_horizon = true;
      } else if (key == "rmax") {
        c.rmax = std::stoi(value);
        saw_rmax = true;
      } else if (key == "report_radii") {
        c.report_radii = parse_radius_list(value);
      } else if (key == "seed") {
        c.seed = std::stoull(value);
      } else if (key == "output") {
        c.output_path = value;
      } else if (key == "memory_budget_mb") {
        c.memory_budget_mb = std::stoull(value);
      } else {
        throw ParseError("unknown config key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("config line " + std::to_string(lineno) + ": bad value for " + key);
    } catch (const std::out_of_range&) {
      throw ParseError("config line " + std::to_string(lineno) + ": value out of range for " + key);
    }
  }
  if (!saw_group) throw ParseError("config missing 'group'");
  if (!saw_horizon) throw ParseError("config missing 'horizon'");
  if (!saw_rmax) throw ParseError("config missing 'rmax'");
  return c;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open config file: " + path);
  return parse(is);
}

namespace {

std::vector<Element> resolve_initial_fire(const Group& group, const Ball& ball,
                                          const std::string& f0_spec) {
  if (f0_spec.rfind("radius:", 0) == 0) {
    int r = std::stoi(f0_spec.substr(7));
    if (r < 0 || r > ball.radius()) throw Error("f0 radius outside the ambient ball");
    std::vector<Element> out;
    for (uint32_t id = 0; id < ball.volume(r); ++id) out.push_back(ball.element(id));
    return out;
  }
  if (f0_spec.rfind("elements:", 0) == 0) {
    std::vector<Element> out;
    std::stringstream ss(f0_spec.substr(9));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      auto e = Element::from_hex(trim(tok));
      if (!e) throw ParseError("bad element hex in f0: " + tok);
      group.validate(*e);
      out.push_back(std::move(*e));
    }
    return out;
  }
  throw ParseError("f0 must be radius:K or elements:hex,... (got '" + f0_spec + "')");
}

Rational saved_fraction_now(const Ball& ball, const IdSet& fire, int radius) {
  uint64_t vol = ball.volume(radius);
  uint64_t burned = 0;
  fire.for_each([&](uint32_t id) {
    if (id < vol) ++burned;
  });
  return Rational(vol - burned, vol);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  auto t0 = Clock::now();
  ExperimentReport report;
  report.config = config;

  GroupPtr group = make_group(config.group_spec);
  report.group_spec = group->spec_string();
  BudgetFn budget = BudgetFn::parse(config.budget_spec);
  report.budget_desc = budget.to_string();
  report.budget_class = classify_budget(budget).describe();
  auto strategy = parse_strategy(config.strategy_spec);
  report.strategy_name = strategy->name();
  report.report_radii = config.report_radii;

  for (int r : config.report_radii) {
    if (r < 0 || r > config.rmax) throw Error("report radius outside rmax");
  }
  MemoryBudget mem{config.memory_budget_mb << 20};
  auto ball = std::make_shared<Ball>(Ball::enumerate(group, config.rmax, mem));
  std::vector<Element> f0 = resolve_initial_fire(*group, *ball, config.f0_spec);

  // replay turn by turn so per-turn saved fractions come out exactly
  FireState state(ball, f0);
  report.initial_radius = state.initial_radius();
  if (state.initial_radius() + config.horizon + 1 > config.rmax) {
    throw Error("config violates r0 + T + 1 <= rmax: r0 = " +
                std::to_string(state.initial_radius()) + ", T = " + std::to_string(config.horizon) +
                ", rmax = " + std::to_string(config.rmax));
  }
  strategy->bind(*group, *ball, state.initial_fire_ids());
  uint64_t protected_total = 0;
  for (int n = 1; n <= config.horizon; ++n) {
    FireView view{*group, *ball, state.burning(), state.protected_set(), n, budget};
    std::vector<uint32_t> w = strategy->propose(view);
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    state.advance(w, budget);

    TurnRow row;
    row.turn = n;
    row.burned_new = state.last_new_fire().size();
    row.burned_total = state.burning().count();
    row.protected_this_turn = w.size();
    protected_total += w.size();
    row.protected_total = protected_total;
    row.shortfall = strategy->last_shortfall();
    for (int r : config.report_radii) {
      row.saved_by_radius.push_back(saved_fraction_now(*ball, state.burning(), r));
    }
    int density_radius = std::min(state.initial_radius() + n, config.rmax);
    row.fire_density = Rational(state.burning().count(), ball->volume(density_radius));
    report.rows.push_back(std::move(row));
  }
  if (!report.rows.empty()) report.final_saved = report.rows.back().saved_by_radius;

  // regime juxtaposition for direct products: prefix sums against the
  // growth of the right factor
  if (group->descriptor().kind() == GroupKind::kDirectProduct && !config.report_radii.empty()) {
    auto [left, right] = product_factors(*group);
    int n_max = *std::max_element(config.report_radii.begin(), config.report_radii.end());
    Ball right_ball = Ball::enumerate(right, n_max, mem);
    for (int n : config.report_radii) {
      if (n < 1) continue;
      RegimeRow row;
      row.n = n;
      row.prefix_sum_10n = budget_prefix_sum(budget, 10 * n);
      row.v_right = right_ball.volume(n);
      row.in_regime = row.prefix_sum_10n < BigInt(row.v_right);
      report.regime.push_back(std::move(row));
    }
  }
  report.wall_seconds = seconds_since(t0);
  return report;
}

void emit_csv(const ExperimentReport& report, std::ostream& out) {
  out << "# group=" << report.group_spec << " strategy=" << report.strategy_name
      << " budget=" << report.budget_desc << " budget_class=" << report.budget_class
      << " f0=" << report.config.f0_spec << " horizon=" << report.config.horizon
      << " rmax=" << report.config.rmax << " seed=" << report.config.seed
      << " r0=" << report.initial_radius << "\n";
  out << "turn,burned_total,burned_new,protected_this_turn,protected_total,shortfall,fire_density";
  for (int r : report.report_radii) out << ",saved_r" << r;
  out << "\n";
  for (const auto& row : report.rows) {
    out << row.turn << "," << row.burned_total << "," << row.burned_new << ","
        << row.protected_this_turn << "," << row.protected_total << "," << row.shortfall << ","
        << to_fraction_string(row.fire_density);
    for (const auto& s : row.saved_by_radius) out << "," << to_fraction_string(s);
    out << "\n";
  }
  for (const auto& r : report.regime) {
    out << "regime," << r.n << "," << r.prefix_sum_10n.str() << "," << r.v_right << ","
        << (r.in_regime ? "in-regime" : "out-of-regime") << "\n";
  }
}

void emit_csv(const ExperimentReport& report, const std::string& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot open output file: " + path);
  emit_csv(report, os);
  os.flush();
  if (!os) throw Error("write failure on " + path);
}

// --- verifier batches -----------------------------------------------------------

void CheckBatch::emit_csv(std::ostream& out) const {
  out << "group,R,kind,subject,lhs,rhs,ratio,holds\n";
  for (const auto& row : rows) {
    Rational ratio = row.rhs == 0 ? Rational(0) : Rational(row.lhs / row.rhs);
    out << group_spec << "," << radius << "," << row.kind << "," << row.subject << ","
        << to_fraction_string(row.lhs) << "," << to_fraction_string(row.rhs) << ","
        << to_decimal_string(ratio, 6) << ","
        << ((row.holds && row.identities_hold) ? "1" : "0") << "\n";
  }
}

namespace {

/// Exact indicator identities: the deviation identity (equality) and the
/// gradient bound against 2|S| |B_R cap boundary|.
bool indicator_identities_hold(const Ball& ball, std::shared_ptr<const Ball> ball_ptr,
                               const IdSet& a, int radius) {
  ScalarField f = indicator_field(ball_ptr, a);
  uint64_t vol = ball.volume(radius);
  uint64_t inside = 0;
  a.for_each([&](uint32_t id) {
    if (id < vol) ++inside;
  });
  Rational expected = Rational(2) * Rational(vol - inside) * Rational(inside) / Rational(vol);
  if (deviation_l1(f, radius) != expected) return false;

  uint64_t boundary_in = 0;
  for (uint32_t id : outer_boundary(ball, a)) boundary_in += id < vol;
  Rational bound = Rational(2 * ball.group().generator_count()) * Rational(boundary_in);
  return gradient_l1(f, radius) <= bound;
}

}  // namespace

CheckBatch run_isoperimetry_batch(GroupPtr group, int radius, int trials, uint64_t seed,
                                  const MemoryBudget& budget) {
  CheckBatch batch;
  batch.group_spec = group->spec_string();
  batch.radius = radius;
  auto ball = std::make_shared<Ball>(Ball::enumerate(group, 3 * radius, budget));
  std::mt19937_64 rng(seed);

  std::vector<std::pair<std::string, IdSet>> subjects;
  int idx = 0;
  for (const IdSet& a : structured_subsets(*ball, radius)) {
    std::string kind = idx <= 3 * radius ? "sub-ball:r=" + std::to_string(idx)
                                         : "half-space:c=" + std::to_string(idx - 3 * radius - 1);
    subjects.emplace_back(kind, a);
    ++idx;
  }
  const double probs[] = {0.1, 0.5, 0.9};
  for (int t = static_cast<int>(subjects.size()); t < trials; ++t) {
    double p = probs[t % 3];
    subjects.emplace_back("random:p=" + to_decimal_string(Rational(int(p * 10), 10), 1),
                          random_subset(*ball, 3 * radius, p, rng));
  }

  for (const auto& [kind, a] : subjects) {
    CheckRow row;
    row.kind = kind;
    row.subject = a.count();
    IsoperimetryResult res = check_isoperimetry(*ball, radius, a);
    row.lhs = res.lhs;
    row.rhs = res.rhs;
    row.holds = res.holds;
    row.identities_hold = indicator_identities_hold(*ball, ball, a, radius) &&
                          indicator_identities_hold(*ball, ball, a, 3 * radius);
    if (!row.holds || !row.identities_hold) ++batch.violations;
    batch.rows.push_back(std::move(row));
  }
  return batch;
}

CheckBatch run_poincare_batch(GroupPtr group, int radius, int trials, uint64_t seed,
                              const MemoryBudget& budget) {
  CheckBatch batch;
  batch.group_spec = group->spec_string();
  batch.radius = radius;
  auto ball = std::make_shared<Ball>(Ball::enumerate(group, 3 * radius, budget));
  std::mt19937_64 rng(seed);

  for (int t = 0; t < trials; ++t) {
    CheckRow row;
    row.subject = static_cast<uint64_t>(t);
    bool identities = true;
    PoincareResult res;
    if (t % 4 == 3) {
      // indicator field of a random subset, with the exact identities
      IdSet a = random_subset(*ball, 3 * radius, 0.5, rng);
      row.kind = "field:indicator";
      res = check_poincare(indicator_field(ball, a), radius);
      identities = indicator_identities_hold(*ball, ball, a, radius);
    } else {
      row.kind = "field:pm1";
      res = check_poincare(random_sign_field(ball, rng), radius);
    }
    row.lhs = res.lhs;
    row.rhs = res.rhs;
    row.holds = res.holds;
    row.identities_hold = identities;
    if (!row.holds || !row.identities_hold) ++batch.violations;
    batch.rows.push_back(std::move(row));
  }
  return batch;
}

// --- shield verification ----------------------------------------------------------

void ShieldVerifyReport::emit_csv(std::ostream& out) const {
  out << "# shield M=" << m_parameter << " T=" << horizon << " ball_radius=" << ball_radius
      << " target=" << to_fraction_string(target) << "\n";
  out << "turn,protected_this_turn,budget_ok,burned_total,burned_new\n";
  for (const auto& row : turns) {
    out << row.turn << "," << row.protected_this_turn << ",1," << row.burned_total << ","
        << row.burned_new << "\n";
  }
  out << "census_radius,shield_count,volume,ratio,ratio_over_target\n";
  for (const auto& c : census) {
    out << c.radius << "," << c.shield_count << "," << c.volume << ","
        << to_decimal_string(c.ratio, 8) << "," << to_decimal_string(c.ratio / target, 6) << "\n";
  }
  out << "checks,budgets_ok=" << budgets_ok << ",no_shield_burn=" << no_shield_burn
      << ",within_factor_two=" << within_factor_two
      << ",monotone_convergence=" << monotone_convergence << "\n";
}

ShieldVerifyReport shield_verify(int m_parameter, int horizon, int census_radius,
                                 const MemoryBudget& budget) {
  auto t0 = Clock::now();
  ShieldVerifyReport report;
  report.m_parameter = m_parameter;
  report.horizon = horizon;
  report.target = Rational(1, BigInt(1) << (m_parameter + 3));

  GroupPtr group = make_group("Z2wrZ");
  int needed = horizon + 2;  // r0 = 0, guard headroom
  int radius = std::max(census_radius, needed);
  auto ball = std::make_shared<Ball>(Ball::enumerate(group, radius, budget));
  report.ball_radius = ball->radius();

  auto strategy = make_lamplighter_shield_strategy(m_parameter);
  BudgetFn f = BudgetFn::half_power_of_two();
  Trajectory traj = run_simulation(ball, {group->identity()}, *strategy, f, horizon);
  report.emissions_legal = true;

  uint64_t protected_total = 0, burned_total = traj.initial_fire.size();
  for (int n = 1; n <= horizon; ++n) {
    const TurnRecord& t = traj.turns[static_cast<size_t>(n - 1)];
    TurnRow row;
    row.turn = n;
    row.protected_this_turn = t.protected_ids.size();
    protected_total += t.protected_ids.size();
    row.protected_total = protected_total;
    row.burned_new = t.new_fire_ids.size();
    burned_total += t.new_fire_ids.size();
    row.burned_total = burned_total;
    if (!f.allows(n, t.protected_ids.size())) report.budgets_ok = false;
    report.turns.push_back(std::move(row));
  }

  // census of S over the whole ball, cumulative by word length; bytes-level
  // membership test (base-Z keys are varints) to keep the big scan cheap
  const uint64_t full_low_mask = (1ull << (m_parameter + 1)) - 1;
  auto in_shield = [&](std::string_view bytes) {
    detail::ByteReader r{bytes};
    if (r.varint() <= m_parameter + 1) return false;  // position
    uint64_t count = r.uvarint();
    uint64_t low_mask = 0;
    for (uint64_t i = 0; i < count; ++i) {
      int64_t p = r.varint();
      r.uvarint();  // lamp value
      if (p < 0) return false;
      if (p <= m_parameter) low_mask |= 1ull << p;
    }
    return low_mask == full_low_mask;
  };
  std::vector<uint64_t> shield_by_layer(static_cast<size_t>(ball->radius()) + 1, 0);
  IdSet fire = traj.fire_after(horizon);
  for (uint32_t id = 0; id < ball->size(); ++id) {
    if (in_shield(ball->element_view(id))) {
      ++shield_by_layer[static_cast<size_t>(ball->word_length(id))];
      if (fire.contains(id)) report.no_shield_burn = false;
    }
  }
  uint64_t cumulative = 0;
  std::vector<uint64_t> shield_cumulative;
  for (uint64_t c : shield_by_layer) {
    cumulative += c;
    shield_cumulative.push_back(cumulative);
  }
  int top = ball->radius();
  for (int r = std::max(0, top - 3); r <= top; ++r) {
    ShieldCensusRow row;
    row.radius = r;
    row.shield_count = shield_cumulative[static_cast<size_t>(r)];
    row.volume = ball->volume(r);
    row.ratio = Rational(row.shield_count, row.volume);
    report.census.push_back(std::move(row));
  }
  const Rational lo = report.target / 2, hi = report.target * 2;
  const Rational top_ratio = report.census.back().ratio;
  report.within_factor_two = top_ratio >= lo && top_ratio <= hi;
  for (size_t i = 0; i < report.census.size(); ++i) {
    const Rational& r = report.census[i].ratio;
    if (r < lo || r > hi) report.monotone_convergence = false;
    if (i > 0 && r < report.census[i - 1].ratio) report.monotone_convergence = false;
  }
  report.wall_seconds = seconds_since(t0);
  return report;
}

// --- cache admin --------------------------------------------------------------------

std::filesystem::path cache_dir() {
  if (const char* env = std::getenv("CAYFIRE_CACHE_DIR"); env && *env) {
    return std::filesystem::path(env);
  }
  return std::filesystem::path("cayfire-cache");
}

namespace {
std::filesystem::path cache_path(const std::string& spec, int radius) {
  return cache_dir() / (spec + "_R" + std::to_string(radius) + ".cayb");
}
}  // namespace

CacheStatus cache_build(const std::string& group_spec, int radius, const MemoryBudget& budget) {
  CacheStatus status;
  GroupPtr group = make_group(group_spec);
  auto path = cache_path(group->spec_string(), radius);
  status.path = path.string();
  std::filesystem::create_directories(cache_dir());
  Ball ball = Ball::enumerate(group, radius, budget);
  ball.save(path);
  status.ok = true;
  status.detail = "built " + group->spec_string() + " R=" + std::to_string(radius) + " (" +
                  std::to_string(ball.size()) + " elements)";
  return status;
}

CacheStatus cache_verify(const std::string& group_spec, int radius) {
  CacheStatus status;
  GroupPtr group = make_group(group_spec);
  auto path = cache_path(group->spec_string(), radius);
  status.path = path.string();
  try {
    Ball ball = Ball::load(group, path);
    if (ball.radius() != radius) {
      status.detail = "radius mismatch: file has " + std::to_string(ball.radius());
      return status;
    }
    status.ok = true;
    status.detail = "ok (" + std::to_string(ball.size()) + " elements)";
  } catch (const Error& e) {
    status.detail = e.what();
  }
  return status;
}

std::vector<std::string> cache_list() {
  std::vector<std::string> out;
  if (!std::filesystem::exists(cache_dir())) return out;
  for (const auto& entry : std::filesystem::directory_iterator(cache_dir())) {
    if (entry.path().extension() == ".cayb") out.push_back(entry.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Ball cache_load_or_build(const std::string& group_spec, int radius, const MemoryBudget& budget) {
  GroupPtr group = make_group(group_spec);
  auto path = cache_path(group->spec_string(), radius);
  if (std::filesystem::exists(path)) return Ball::load(group, path);
  std::filesystem::create_directories(cache_dir());
  Ball ball = Ball::enumerate(group, radius, budget);
  ball.save(path);
  return ball;
}

}  // namespace cayfire::xlab
