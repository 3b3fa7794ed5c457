#pragma once

#include <cstdint>
#include <vector>

#include "redist/instance.hpp"

namespace redist {

struct Plan {
  std::vector<int> assignment;  // unit index -> district in [0, r)
  int num_districts = 0;
};

struct DistrictAggregate {
  std::int64_t population = 0;
  double area = 0.0;
  double perimeter = 0.0;  // dissolved: member perimeters minus 2x internal shared
  int unit_count = 0;
};

// Forward-declared here; defined in moves.hpp. A Move carries its members,
// direction, and pre-summed attributes.
struct Move;

std::vector<DistrictAggregate> build_aggregates(const Instance& instance,
                                                const Plan& plan);

/// BFS reachability over the district's induced subgraph.
bool is_contiguous(const Instance& instance, const Plan& plan, int district);

/// Reassigns the move's members and updates both districts' aggregates in
/// O(|members| + incident edges). Throws if the move would empty its source.
void apply_move(const Instance& instance, Plan& plan,
                std::vector<DistrictAggregate>& aggregates, const Move& move);

/// Atomically exchanges two opposite-direction moves. The caller is
/// responsible for having validated the pair (switch_valid).
void apply_switch(const Instance& instance, Plan& plan,
                  std::vector<DistrictAggregate>& aggregates, const Move& m1,
                  const Move& m2);

}  // namespace redist
