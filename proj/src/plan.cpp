#include "redist/plan.hpp"

#include <stdexcept>

#include "redist/moves.hpp"

namespace redist {

std::vector<DistrictAggregate> build_aggregates(const Instance& instance,
                                                const Plan& plan) {
  if (static_cast<int>(plan.assignment.size()) != instance.size())
    throw std::invalid_argument("build_aggregates: plan does not cover all units");
  std::vector<DistrictAggregate> aggs(plan.num_districts);
  for (int u = 0; u < instance.size(); ++u) {
    int d = plan.assignment[u];
    if (d < 0 || d >= plan.num_districts)
      throw std::invalid_argument("build_aggregates: assignment out of range");
    const Unit& unit = instance.unit(u);
    aggs[d].population += unit.population;
    aggs[d].area += unit.area;
    aggs[d].perimeter += unit.perimeter;
    aggs[d].unit_count += 1;
    for (const Neighbor& nb : instance.neighbors(u)) {
      // Each internal edge seen twice, once from each endpoint.
      if (plan.assignment[nb.unit] == d) aggs[d].perimeter -= nb.shared_length;
    }
  }
  return aggs;
}

bool is_contiguous(const Instance& instance, const Plan& plan, int district) {
  int start = -1;
  int count = 0;
  for (int u = 0; u < instance.size(); ++u) {
    if (plan.assignment[u] == district) {
      if (start < 0) start = u;
      ++count;
    }
  }
  if (count == 0) return false;
  std::vector<char> seen(instance.size(), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : instance.neighbors(u)) {
      if (plan.assignment[nb.unit] == district && !seen[nb.unit]) {
        seen[nb.unit] = 1;
        ++reached;
        stack.push_back(nb.unit);
      }
    }
  }
  return reached == count;
}

namespace {

// Reassigns members and updates aggregates from the current assignment;
// classification of incident edges happens here so caches in the Move are
// never trusted for state updates.
void reassign(const Instance& instance, Plan& plan,
              std::vector<DistrictAggregate>& aggs,
              const std::vector<int>& members, int source, int dest) {
  std::vector<char> in_set(instance.size(), 0);
  for (int u : members) {
    if (plan.assignment[u] != source)
      throw std::invalid_argument("apply_move: member not in source district");
    in_set[u] = 1;
  }
  if (aggs[source].unit_count <= static_cast<int>(members.size()))
    throw std::invalid_argument("apply_move: move would empty source district");

  double perim_sum = 0, internal = 0, shared_src_rest = 0, shared_dest = 0;
  std::int64_t pop = 0;
  double area = 0;
  for (int u : members) {
    const Unit& unit = instance.unit(u);
    pop += unit.population;
    area += unit.area;
    perim_sum += unit.perimeter;
    for (const Neighbor& nb : instance.neighbors(u)) {
      if (in_set[nb.unit]) {
        if (nb.unit > u) internal += nb.shared_length;
      } else if (plan.assignment[nb.unit] == source) {
        shared_src_rest += nb.shared_length;
      } else if (plan.assignment[nb.unit] == dest) {
        shared_dest += nb.shared_length;
      }
    }
  }
  double dissolved = perim_sum - 2.0 * internal;
  aggs[source].population -= pop;
  aggs[source].area -= area;
  aggs[source].perimeter += -dissolved + 2.0 * shared_src_rest;
  aggs[source].unit_count -= static_cast<int>(members.size());
  aggs[dest].population += pop;
  aggs[dest].area += area;
  aggs[dest].perimeter += dissolved - 2.0 * shared_dest;
  aggs[dest].unit_count += static_cast<int>(members.size());
  for (int u : members) plan.assignment[u] = dest;
}

}  // namespace

void apply_move(const Instance& instance, Plan& plan,
                std::vector<DistrictAggregate>& aggregates, const Move& move) {
  reassign(instance, plan, aggregates, move.members, move.source, move.dest);
}

void apply_switch(const Instance& instance, Plan& plan,
                  std::vector<DistrictAggregate>& aggregates, const Move& m1,
                  const Move& m2) {
  if (m1.source != m2.dest || m1.dest != m2.source)
    throw std::invalid_argument("apply_switch: moves are not an opposite pair");
  // Sequential reassignment is exact for aggregates: the second step
  // classifies edges against the intermediate assignment.
  reassign(instance, plan, aggregates, m1.members, m1.source, m1.dest);
  reassign(instance, plan, aggregates, m2.members, m2.source, m2.dest);
}

}  // namespace redist
