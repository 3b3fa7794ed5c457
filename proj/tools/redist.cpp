#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "redist/contiguity.hpp"
#include "redist/experiment.hpp"
#include "redist/instance.hpp"
#include "redist/moves.hpp"
#include "redist/objective.hpp"
#include "redist/plan.hpp"
#include "redist/search.hpp"

namespace {

using namespace redist;

struct CommonOpts {
  std::string instance_path;
  int districts = 2;
  std::string method = "tabu";
  bool composite = false;
  double w_pop = 1.0;
  double w_comp = 0.0;
  std::uint64_t seed = 0;
  double tabu_factor = 0.08;
  double nim_factor = 3.0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_method = true) {
  cmd->add_option("-i,--instance", o.instance_path,
                  "Instance path (.json file or csv directory)")
      ->required();
  cmd->add_option("-r,--districts", o.districts, "Number of districts")
      ->check(CLI::PositiveNumber);
  if (needs_method) {
    cmd->add_option("-m,--method", o.method, "greedy, kl, or tabu");
    cmd->add_flag("-c,--composite", o.composite, "Enable composite moves");
    cmd->add_option("--tabu-factor", o.tabu_factor, "Tabu size = round(f*n)");
    cmd->add_option("--nim-factor", o.nim_factor, "maxNIM = round(f*n)");
  }
  cmd->add_option("--w-pop", o.w_pop, "Population deviation weight");
  cmd->add_option("--w-comp", o.w_comp, "Compactness weight");
  cmd->add_option("-s,--seed", o.seed, "Base RNG seed");
}

SearchConfig to_search_config(const CommonOpts& o) {
  SearchConfig c;
  c.method = method_from_string(o.method);
  c.composite_enabled = o.composite;
  c.r = o.districts;
  c.weight_popdev = o.w_pop;
  c.weight_compactness = o.w_comp;
  c.seed = o.seed;
  c.tabu_factor = o.tabu_factor;
  c.nim_factor = o.nim_factor;
  return c;
}

int cmd_generate(int rows, int cols, const std::string& pop_kind,
                 std::int64_t uniform_value, double mu, double sigma,
                 std::uint64_t seed, const std::string& out_path) {
  PopulationModel model = pop_kind == "lognormal"
                              ? PopulationModel::lognormal(mu, sigma)
                              : PopulationModel::uniform(uniform_value);
  Instance instance = generate_grid(rows, cols, model, seed);
  if (out_path.empty()) {
    export_instance_json(instance, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot open " << out_path << "\n";
      return 1;
    }
    export_instance_json(instance, out);
  }
  return 0;
}

int cmd_solve(const CommonOpts& o, int restarts, int threads,
              const std::string& out_path, const std::string& summary_path) {
  Instance instance = load_instance_path(o.instance_path);
  SearchConfig config = to_search_config(o);
  auto runs = multi_restart(instance, config, restarts, threads);
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].best_value.combined < runs[best].best_value.combined) best = i;
  const RunResult& r = runs[best];

  std::cerr << "best score " << r.best_value.combined << " (popdev "
            << r.best_value.popdev << ", compactness " << r.best_value.compactness
            << ") from restart " << best << " of " << restarts << "; "
            << r.iterations << " iterations, " << r.accepted_moves << " moves, "
            << r.accepted_switches << " switches\n";

  if (out_path.empty()) {
    write_plan_csv(instance, r.best_plan, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot open " << out_path << "\n";
      return 1;
    }
    write_plan_csv(instance, r.best_plan, out);
  }
  if (!summary_path.empty()) {
    std::ofstream out(summary_path);
    if (!out) {
      std::cerr << "cannot open " << summary_path << "\n";
      return 1;
    }
    write_plan_summary_json(instance, r.best_plan, out);
  }
  return 0;
}

int cmd_experiment(const CommonOpts& o, const std::vector<std::string>& presets,
                   int restarts, int threads, const std::string& out_dir) {
  Instance instance = load_instance_path(o.instance_path);
  ExperimentConfig config;
  config.instance_path = o.instance_path;
  config.presets = presets.empty() ? known_presets() : presets;
  config.restarts = restarts;
  config.base_seed = o.seed;
  config.districts = o.districts;
  config.weight_popdev = o.w_pop;
  config.weight_compactness = o.w_comp;
  config.parallelism = threads;
  config.output_dir = out_dir;
  ExperimentResult result = run_experiment(instance, config);
  for (const std::string& preset : config.presets) {
    const RunStats& s = result.stats.at(preset);
    std::cout << preset << ": median " << s.median << " iqr " << s.iqr
              << " min " << s.min << " max " << s.max << " stddev " << s.stddev
              << " mean_time " << s.mean_time_per_run << "s\n";
  }
  for (const auto& [name, rs] : result.pairwise)
    std::cout << name << ": U=" << rs.u << " p=" << rs.p_value
              << (rs.exact ? " (exact)\n" : "\n");
  return 0;
}

int cmd_validate(const CommonOpts& o, const std::string& plan_path) {
  Instance instance = load_instance_path(o.instance_path);
  auto issues = validate_instance(instance);
  for (const std::string& s : issues) std::cout << "instance: " << s << "\n";
  if (plan_path.empty()) {
    std::cout << (issues.empty() ? "instance OK\n" : "instance INVALID\n");
    return issues.empty() ? 0 : 1;
  }
  std::ifstream in(plan_path);
  if (!in) {
    std::cerr << "cannot open " << plan_path << "\n";
    return 1;
  }
  Plan plan = read_plan_csv(instance, in);
  PlanReport report = validate_plan(instance, plan);
  std::cout << "districts: " << plan.num_districts << "\n";
  std::cout << "contiguous: " << (report.all_contiguous ? "yes" : "no") << "\n";
  for (int d : report.discontiguous_districts)
    std::cout << "discontiguous district: " << d << "\n";
  std::cout << "popdev: " << report.popdev << "\n";
  std::cout << "compactness: " << report.compactness_value << "\n";
  return issues.empty() && report.all_contiguous ? 0 : 1;
}

int cmd_moves(const CommonOpts& o, const std::string& plan_path, int district,
              int pair_a, int pair_b) {
  Instance instance = load_instance_path(o.instance_path);
  std::ifstream in(plan_path);
  if (!in) {
    std::cerr << "cannot open " << plan_path << "\n";
    return 1;
  }
  Plan plan = read_plan_csv(instance, in);
  auto aggs = build_aggregates(instance, plan);
  ObjectiveConfig obj{o.w_pop, o.w_comp, plan.num_districts,
                      instance.total_population()};
  CandidatePool pool = enumerate_candidates(instance, plan, o.composite);

  auto print_members = [&](const std::vector<int>& members) {
    std::cout << "{";
    for (std::size_t i = 0; i < members.size(); ++i)
      std::cout << (i ? "," : "") << instance.id_of(members[i]);
    std::cout << "}";
  };

  for (const auto& [key, moves] : pool.pairs()) {
    auto [src, dst] = key;
    if (district >= 0 && src != district) continue;
    if (pair_a >= 0 && !(src == pair_a && dst == pair_b) &&
        !(src == pair_b && dst == pair_a))
      continue;
    for (const Move& m : moves) {
      std::cout << "move " << src << "->" << dst << " ";
      print_members(m.members);
      std::cout << " pop=" << m.population
                << " delta=" << score_move(m, aggs[src], aggs[dst], obj) << "\n";
    }
  }
  if (pair_a >= 0) {
    const auto* ab = pool.moves_between(pair_a, pair_b);
    const auto* ba = pool.moves_between(pair_b, pair_a);
    if (ab && ba) {
      auto sw = best_switch(*ab, *ba, instance, aggs, obj, 3, nullptr);
      if (sw) {
        std::cout << "best switch " << pair_a << "<->" << pair_b << " ";
        print_members(sw->m1.members);
        std::cout << " / ";
        print_members(sw->m2.members);
        std::cout << " delta=" << sw->delta << "\n";
      } else {
        std::cout << "no valid switch between " << pair_a << " and " << pair_b
                  << "\n";
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contiguity-preserving districting by local search"};
  app.require_subcommand(1);

  // generate
  int g_rows = 10, g_cols = 10;
  std::string g_pop = "uniform";
  std::int64_t g_uniform = 1000;
  double g_mu = 6.0, g_sigma = 1.0;
  std::uint64_t g_seed = 0;
  std::string g_out;
  auto* gen = app.add_subcommand("generate", "Generate a grid instance");
  gen->add_option("--rows", g_rows)->check(CLI::PositiveNumber);
  gen->add_option("--cols", g_cols)->check(CLI::PositiveNumber);
  gen->add_option("--population", g_pop, "uniform or lognormal")
      ->check(CLI::IsMember({"uniform", "lognormal"}));
  gen->add_option("--value", g_uniform, "Population per unit (uniform)");
  gen->add_option("--mu", g_mu, "Lognormal mu");
  gen->add_option("--sigma", g_sigma, "Lognormal sigma");
  gen->add_option("-s,--seed", g_seed);
  gen->add_option("-o,--out", g_out, "Output path (default stdout)");

  // solve
  CommonOpts s_opts;
  int s_restarts = 1, s_threads = 1;
  std::string s_out, s_summary;
  auto* solve = app.add_subcommand("solve", "Run the search and emit a plan");
  add_common(solve, s_opts);
  solve->add_option("--restarts", s_restarts)->check(CLI::PositiveNumber);
  solve->add_option("--threads", s_threads)->check(CLI::PositiveNumber);
  solve->add_option("-o,--out", s_out, "Plan CSV path (default stdout)");
  solve->add_option("--summary", s_summary, "Plan summary JSON path");

  // experiment
  CommonOpts e_opts;
  std::vector<std::string> e_presets;
  int e_restarts = 25, e_threads = 1;
  std::string e_out;
  auto* exp = app.add_subcommand("experiment", "Compare method presets");
  add_common(exp, e_opts, /*needs_method=*/false);
  exp->add_option("--presets", e_presets,
                  "Subset of: greedy kl tabu greedy_cm kl_cm tabu_cm");
  exp->add_option("--restarts", e_restarts)->check(CLI::PositiveNumber);
  exp->add_option("--threads", e_threads)->check(CLI::PositiveNumber);
  exp->add_option("-o,--out", e_out, "Output directory for CSV/JSON reports");

  // validate
  CommonOpts v_opts;
  std::string v_plan;
  auto* val = app.add_subcommand("validate", "Check an instance and optionally a plan");
  add_common(val, v_opts, /*needs_method=*/false);
  val->add_option("-p,--plan", v_plan, "Plan CSV to validate");

  // moves
  CommonOpts m_opts;
  std::string m_plan;
  int m_district = -1, m_pair_a = -1, m_pair_b = -1;
  auto* mov = app.add_subcommand("moves", "Dump candidate moves for a plan");
  add_common(mov, m_opts, /*needs_method=*/false);
  mov->add_flag("-c,--composite", m_opts.composite, "Enable composite moves");
  mov->add_option("-p,--plan", m_plan, "Plan CSV")->required();
  mov->add_option("--district", m_district, "Only moves out of this district");
  auto* pair_opt = mov->add_option("--pair", "Only this district pair, plus its best switch");
  pair_opt->expected(2);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_generate(g_rows, g_cols, g_pop, g_uniform, g_mu, g_sigma,
                          g_seed, g_out);
    if (solve->parsed())
      return cmd_solve(s_opts, s_restarts, s_threads, s_out, s_summary);
    if (exp->parsed())
      return cmd_experiment(e_opts, e_presets, e_restarts, e_threads, e_out);
    if (val->parsed()) return cmd_validate(v_opts, v_plan);
    if (mov->parsed()) {
      if (pair_opt->count() > 0) {
        auto vals = pair_opt->results();
        m_pair_a = std::stoi(vals[0]);
        m_pair_b = std::stoi(vals[1]);
      }
      return cmd_moves(m_opts, m_plan, m_district, m_pair_a, m_pair_b);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
