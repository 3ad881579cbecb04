// cayfire: simulation and verification tool for the protection/spread game
// on Cayley graphs of finitely generated groups.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cayfire/fire.hpp"
#include "cayfire/isoperimetry.hpp"
#include "cayfire/strategy.hpp"
#include "cayfire/wreath_paths.hpp"
#include "cayfire/xlab.hpp"

namespace {

using namespace cayfire;

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::trunc);
  if (!file) throw Error("cannot open output file: " + path);
  return file;
}

int cmd_growth(const std::string& group_spec, int r_max, uint64_t mem_mb,
               const std::string& out_path) {
  MemoryBudget budget{mem_mb << 20};
  GrowthTable table = growth_table(make_group(group_spec), r_max, budget);
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  out << "R,v\n";
  for (size_t r = 0; r < table.v.size(); ++r) out << r << "," << table.v[r] << "\n";
  return 0;
}

int cmd_simulate(const std::string& config_path) {
  auto config = xlab::ExperimentConfig::parse_file(config_path);
  auto report = xlab::run_experiment(config);
  if (config.output_path.empty()) {
    xlab::emit_csv(report, std::cout);
  } else {
    xlab::emit_csv(report, config.output_path);
    std::cout << "wrote " << config.output_path << " (" << report.rows.size() << " turns, "
              << report.wall_seconds << "s)\n";
  }
  return 0;
}

int cmd_isoperim(const std::string& group_spec, int radius, int trials, uint64_t seed,
                 uint64_t mem_mb, const std::string& out_path) {
  auto batch = xlab::run_isoperimetry_batch(make_group(group_spec), radius, trials, seed,
                                            MemoryBudget{mem_mb << 20});
  std::ofstream file;
  batch.emit_csv(open_output(file, out_path));
  std::cerr << batch.rows.size() << " checks, " << batch.violations << " violations\n";
  return batch.violations == 0 ? 0 : 1;
}

int cmd_poincare(const std::string& group_spec, int radius, int trials, uint64_t seed,
                 uint64_t mem_mb, const std::string& out_path) {
  auto batch = xlab::run_poincare_batch(make_group(group_spec), radius, trials, seed,
                                        MemoryBudget{mem_mb << 20});
  std::ofstream file;
  batch.emit_csv(open_output(file, out_path));
  std::cerr << batch.rows.size() << " checks, " << batch.violations << " violations\n";
  return batch.violations == 0 ? 0 : 1;
}

// family file: "group <spec>", "case <1..4>", "n <scale>", then one
// "pair <hexA> <hexB>" line per connecting pair
int cmd_paths(const std::string& family_path, const std::string& out_path) {
  std::ifstream is(family_path);
  if (!is) throw Error("cannot open family file: " + family_path);
  std::string group_spec;
  int declared_case = 0, scale_n = 0;
  std::vector<Element> burning, safe;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string key;
    if (!(ss >> key) || key[0] == '#') continue;
    if (key == "group") {
      ss >> group_spec;
    } else if (key == "case") {
      ss >> declared_case;
    } else if (key == "n") {
      ss >> scale_n;
    } else if (key == "pair") {
      std::string ha, hb;
      if (!(ss >> ha >> hb)) throw ParseError("family line " + std::to_string(lineno) + ": pair needs two elements");
      auto a = Element::from_hex(ha), b = Element::from_hex(hb);
      if (!a || !b) throw ParseError("family line " + std::to_string(lineno) + ": bad element hex");
      burning.push_back(std::move(*a));
      safe.push_back(std::move(*b));
    } else {
      throw ParseError("family line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (group_spec.empty() || scale_n < 1) throw ParseError("family file needs group and n");
  GroupPtr group = make_group(group_spec);
  PairFamily family = make_pair_family(group, scale_n, std::move(burning), std::move(safe));
  if (declared_case != 0 && declared_case != static_cast<int>(family.tag)) {
    throw Error("family file declares case " + std::to_string(declared_case) +
                " but the lists classify as case " + std::to_string(static_cast<int>(family.tag)));
  }
  Waypoints wp = choose_waypoints(*group, scale_n);
  auto paths = construct_connecting_paths(family, wp);
  auto report = verify_disjointness(paths, family.tag, scale_n);
  auto diluted = dilute_paths(paths, report);

  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  out << "# group=" << group->spec_string() << " case=" << static_cast<int>(family.tag)
      << " n=" << scale_n << " budget=" << 100 * scale_n << "\n";
  out << "path,length,endpoint_ok,intersections\n";
  for (size_t i = 0; i < paths.size(); ++i) {
    Element folded = paths[i].start;
    for (int gi : paths[i].word) folded = group->multiply_by_generator(folded, gi);
    out << i << "," << paths[i].word.size() << "," << (folded == paths[i].end ? 1 : 0) << ","
        << report.intersection_counts[i] << "\n";
  }
  out << "summary,pairwise_disjoint=" << report.pairwise_disjoint
      << ",max_intersections=" << report.max_count << ",within_bound=" << report.within_bound
      << ",diluted_kept=" << diluted.kept_indices.size() << "\n";
  return report.within_bound ? 0 : 1;
}

int cmd_shield_verify(int m, int horizon, int census_radius, uint64_t mem_mb,
                      const std::string& out_path) {
  auto report = xlab::shield_verify(m, horizon, census_radius, MemoryBudget{mem_mb << 20});
  std::ofstream file;
  report.emit_csv(open_output(file, out_path));
  bool ok = report.budgets_ok && report.no_shield_burn && report.within_factor_two &&
            report.monotone_convergence;
  std::cerr << (ok ? "all checks passed" : "CHECK FAILED") << " (" << report.wall_seconds << "s)\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fire containment/retainment simulations on Cayley graphs"};
  app.require_subcommand(1);

  std::string group_spec, config_path, family_path, out_path;
  int radius = 2, r_max = 5, trials = 100, horizon = 12, m_param = 3, census_radius = 16;
  uint64_t seed = 1, mem_mb = 2048;

  auto* growth = app.add_subcommand("growth", "exact growth table v(0..Rmax)");
  growth->add_option("group", group_spec)->required();
  growth->add_option("rmax", r_max)->required();
  growth->add_option("--memory-budget", mem_mb, "MiB cap for ball enumeration");
  growth->add_option("--csv", out_path, "output file (stdout when absent)");

  auto* simulate = app.add_subcommand("simulate", "run an experiment config file");
  simulate->add_option("config", config_path)->required();

  auto* isoperim = app.add_subcommand("isoperim", "ball-restricted isoperimetry checks");
  isoperim->add_option("group", group_spec)->required();
  isoperim->add_option("R", radius)->required();
  isoperim->add_option("--trials", trials);
  isoperim->add_option("--seed", seed);
  isoperim->add_option("--memory-budget", mem_mb);
  isoperim->add_option("--csv", out_path);

  auto* poincare = app.add_subcommand("poincare", "L1 Poincare inequality checks");
  poincare->add_option("group", group_spec)->required();
  poincare->add_option("R", radius)->required();
  poincare->add_option("--trials", trials);
  poincare->add_option("--seed", seed);
  poincare->add_option("--memory-budget", mem_mb);
  poincare->add_option("--csv", out_path);

  auto* paths = app.add_subcommand("paths", "compile and verify a connecting-path family");
  paths->add_option("family", family_path, "family description file")->required();
  paths->add_option("--csv", out_path);

  auto* shield = app.add_subcommand("shield-verify", "lamplighter shield run and census");
  shield->add_option("M", m_param)->required();
  shield->add_option("T", horizon)->required();
  shield->add_option("--census-radius", census_radius);
  shield->add_option("--memory-budget", mem_mb);
  shield->add_option("--csv", out_path);

  auto* cache = app.add_subcommand("cache", "ball cache administration");
  cache->require_subcommand(1);
  auto* cache_build = cache->add_subcommand("build");
  cache_build->add_option("group", group_spec)->required();
  cache_build->add_option("R", radius)->required();
  cache_build->add_option("--memory-budget", mem_mb);
  auto* cache_verify = cache->add_subcommand("verify");
  cache_verify->add_option("group", group_spec)->required();
  cache_verify->add_option("R", radius)->required();
  auto* cache_list = cache->add_subcommand("list");

  CLI11_PARSE(app, argc, argv);

  try {
    if (growth->parsed()) return cmd_growth(group_spec, r_max, mem_mb, out_path);
    if (simulate->parsed()) return cmd_simulate(config_path);
    if (isoperim->parsed()) return cmd_isoperim(group_spec, radius, trials, seed, mem_mb, out_path);
    if (poincare->parsed()) return cmd_poincare(group_spec, radius, trials, seed, mem_mb, out_path);
    if (paths->parsed()) return cmd_paths(family_path, out_path);
    if (shield->parsed()) return cmd_shield_verify(m_param, horizon, census_radius, mem_mb, out_path);
    if (cache->parsed()) {
      if (cache_build->parsed()) {
        auto s = xlab::cache_build(group_spec, radius, MemoryBudget{mem_mb << 20});
        std::cout << (s.ok ? "ok: " : "failed: ") << s.detail << " -> " << s.path << "\n";
        return s.ok ? 0 : 1;
      }
      if (cache_verify->parsed()) {
        auto s = xlab::cache_verify(group_spec, radius);
        std::cout << (s.ok ? "ok: " : "failed: ") << s.detail << " (" << s.path << ")\n";
        return s.ok ? 0 : 1;
      }
      if (cache_list->parsed()) {
        for (const auto& name : xlab::cache_list()) std::cout << name << "\n";
        return 0;
      }
    }
  } catch (const cayfire::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
