#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "redist/instance.hpp"
#include "redist/moves.hpp"
#include "redist/objective.hpp"
#include "redist/plan.hpp"

namespace redist {

enum class Method { greedy, kl, tabu };

Method method_from_string(const std::string& name);
std::string method_name(Method m);

struct SearchConfig {
  Method method = Method::tabu;
  bool composite_enabled = true;
  double tabu_factor = 0.08;  // k = round(tabu_factor * n)
  double nim_factor = 3.0;    // maxNIM = round(nim_factor * n)
  double weight_popdev = 1.0;
  double weight_compactness = 0.0;
  std::uint64_t seed = 0;
  int r = 2;
  int switch_window = 3;
  bool aspiration = false;    // allow a tabu move that beats best-so-far
  bool debug_oracle = false;  // cross-check contiguity/aggregates every step
  std::int64_t max_iterations = 1000000;
};

struct RunResult {
  Plan best_plan;
  ObjectiveValue best_value;
  std::int64_t iterations = 0;
  std::int64_t accepted_moves = 0;
  std::int64_t accepted_switches = 0;
  double seconds = 0.0;
};

/// Seed-growing initialization: r random seed units, round-robin growth by
/// one random unassigned neighbor per turn. Deterministic given seed.
Plan init_plan(const Instance& instance, int r, std::uint64_t seed);

RunResult run(const Instance& instance, const SearchConfig& config);

/// Restart i uses a seed derived from (config.seed, i); results are collected
/// by restart index, so the outcome is independent of the parallelism degree.
std::vector<RunResult> multi_restart(const Instance& instance,
                                     const SearchConfig& config, int restarts,
                                     int parallelism);

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

}  // namespace redist
