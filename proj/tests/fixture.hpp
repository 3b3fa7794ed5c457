#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "redist/instance.hpp"
#include "redist/plan.hpp"

namespace fixture {

// 25-unit, 3-district instance reconstructed from the worked example: three
// districts A/B/C with the documented cut points, biconnected components and
// candidate move sets. Uniform attributes: population 100, area 1,
// perimeter 10, shared_length 1 per edge.
inline redist::Instance figure_instance() {
  std::vector<redist::Unit> units;
  for (int id = 1; id <= 25; ++id)
    units.push_back({id, 100, 1.0, 10.0});
  const std::vector<std::pair<int, int>> edge_ids = {
      // district A internal
      {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 10}, {10, 2}, {10, 14},
      // district B internal
      {6, 7}, {7, 8}, {8, 12}, {12, 11}, {11, 6}, {11, 9}, {9, 17},
      // district C internal
      {16, 13}, {16, 20}, {20, 19}, {19, 24}, {24, 16}, {19, 18}, {18, 25},
      {25, 22}, {22, 19}, {22, 21}, {21, 15}, {15, 23}, {23, 21},
      // A-B boundary
      {1, 6}, {5, 6}, {5, 17}, {14, 17}, {2, 6}, {10, 17}, {9, 5}, {11, 5},
      // A-C boundary
      {14, 15}, {10, 15}, {14, 21},
      // B-C boundary
      {8, 13}, {8, 18}, {12, 13}, {12, 18}, {17, 13}, {17, 18}, {17, 21},
      {17, 22}, {9, 18}, {11, 13}, {16, 8}, {19, 12}};
  std::vector<redist::Edge> edges;
  for (auto [u, v] : edge_ids) edges.push_back({u, v, 1.0});
  return redist::Instance(std::move(units), std::move(edges));
}

inline const std::vector<int>& district_a_ids() {
  static const std::vector<int> ids = {1, 2, 3, 4, 5, 10, 14};
  return ids;
}
inline const std::vector<int>& district_b_ids() {
  static const std::vector<int> ids = {6, 7, 8, 9, 11, 12, 17};
  return ids;
}
inline const std::vector<int>& district_c_ids() {
  static const std::vector<int> ids = {13, 15, 16, 18, 19, 20, 21, 22, 23, 24, 25};
  return ids;
}

inline redist::Plan figure_plan(const redist::Instance& instance) {
  redist::Plan plan;
  plan.num_districts = 3;
  plan.assignment.assign(instance.size(), -1);
  for (int id : district_a_ids()) plan.assignment[instance.index_of(id)] = 0;
  for (int id : district_b_ids()) plan.assignment[instance.index_of(id)] = 1;
  for (int id : district_c_ids()) plan.assignment[instance.index_of(id)] = 2;
  return plan;
}

using IdSet = std::set<int>;
using MoveTable = std::set<std::pair<std::pair<int, int>, IdSet>>;

// The documented candidate table: single-unit plus composite moves per
// ordered district pair (A=0, B=1, C=2), 24 entries.
inline MoveTable expected_composite_moves() {
  MoveTable t;
  auto add = [&](int src, int dst, IdSet members) {
    t.insert({{src, dst}, std::move(members)});
  };
  add(0, 1, {1});
  add(0, 1, {5});
  add(0, 1, {14});
  add(0, 1, {1, 2});
  add(0, 1, {10, 14});
  add(1, 0, {6});
  add(1, 0, {17});
  add(1, 0, {9, 17});
  add(1, 0, {9, 11, 17});
  add(0, 2, {14});
  add(0, 2, {10, 14});
  add(2, 0, {15});
  add(2, 0, {15, 21, 23});
  add(1, 2, {8});
  add(1, 2, {12});
  add(1, 2, {17});
  add(1, 2, {9, 17});
  add(1, 2, {9, 11, 17});
  add(2, 1, {13});
  add(2, 1, {18});
  add(2, 1, {13, 16});
  add(2, 1, {15, 21, 23});
  add(2, 1, {13, 16, 19, 20, 24});
  add(2, 1, {15, 21, 22, 23});
  return t;
}

// The single-unit subset of the table, 12 entries.
inline MoveTable expected_single_moves() {
  MoveTable t;
  for (const auto& entry : expected_composite_moves())
    if (entry.second.size() == 1) t.insert(entry);
  return t;
}

}  // namespace fixture
