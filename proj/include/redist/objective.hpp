#pragma once

#include <cstdint>
#include <vector>

#include "redist/moves.hpp"
#include "redist/plan.hpp"

namespace redist {

struct ObjectiveConfig {
  double weight_popdev = 1.0;
  double weight_compactness = 0.0;
  int r = 0;
  std::int64_t total_population = 0;
};

struct ObjectiveValue {
  std::int64_t popdev = 0;
  double compactness = 0.0;
  double combined = 0.0;
};

/// Sum over districts of floor(|p_i - total/r|), with the ideal kept as an
/// exact rational (64-bit arithmetic scaled by r).
std::int64_t pop_dev(const std::vector<std::int64_t>& district_populations,
                     int r, std::int64_t total);

/// Polsby-Popper: 4*pi*area / perimeter^2. 1 for a circle.
double ppi(double area, double perimeter);

/// Sum over districts of (Pop/1000) * (1 - PPI_i).
double compactness(const std::vector<DistrictAggregate>& aggregates,
                   std::int64_t total_population);

ObjectiveValue evaluate(const std::vector<DistrictAggregate>& aggregates,
                        const ObjectiveConfig& config);

/// delta = f(current) - f(after move), from district and move aggregates
/// only. Positive means the move improves (lowers) f.
double score_move(const Move& move, const DistrictAggregate& source_agg,
                  const DistrictAggregate& dest_agg,
                  const ObjectiveConfig& config);

/// delta of the atomic double reassignment m1: A->B, m2: B->A.
double score_switch(const Move& m1, const Move& m2, const Instance& instance,
                    const std::vector<DistrictAggregate>& aggregates,
                    const ObjectiveConfig& config);

/// Exact popdev contribution of a single district population.
std::int64_t pop_dev_term(std::int64_t population, int r, std::int64_t total);

}  // namespace redist
