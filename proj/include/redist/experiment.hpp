#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "redist/instance.hpp"
#include "redist/plan.hpp"
#include "redist/search.hpp"
#include "redist/stats.hpp"

namespace redist {

/// A method preset name: greedy, kl, tabu, or the composite-enabled variants
/// greedy_cm, kl_cm, tabu_cm.
SearchConfig preset_config(const std::string& preset, const SearchConfig& base);
const std::vector<std::string>& known_presets();

struct ExperimentConfig {
  std::string instance_path;
  std::vector<std::string> presets;
  int restarts = 1;
  std::uint64_t base_seed = 0;
  int districts = 2;
  double weight_popdev = 1.0;
  double weight_compactness = 0.0;
  int parallelism = 1;
  std::string output_dir;
};

struct ExperimentResult {
  std::map<std::string, RunStats> stats;            // per preset
  std::map<std::string, std::vector<double>> scores;
  std::map<std::string, std::vector<double>> times;
  std::map<std::string, RankSumResult> pairwise;    // "a_vs_b" -> result
};

/// Runs every preset, writes scores_<preset>.csv, times_<preset>.csv,
/// summary.json and pairwise_tests.json under output_dir (if set).
ExperimentResult run_experiment(const Instance& instance,
                                const ExperimentConfig& config);

void write_plan_csv(const Instance& instance, const Plan& plan,
                    std::ostream& out);
Plan read_plan_csv(const Instance& instance, std::istream& in);
void write_plan_summary_json(const Instance& instance, const Plan& plan,
                             std::ostream& out);

struct PlanReport {
  bool all_contiguous = true;
  std::vector<int> discontiguous_districts;
  std::int64_t popdev = 0;
  double compactness_value = 0.0;
  std::vector<double> district_ppi;
};

PlanReport validate_plan(const Instance& instance, const Plan& plan);

}  // namespace redist
