#include <doctest.h>

#include <random>

#include "fixture.hpp"
#include "oracles.hpp"
#include "redist/moves.hpp"
#include "redist/plan.hpp"
#include "redist/search.hpp"

using namespace redist;

namespace {

Plan two_column_plan(const Instance& grid2x2) {
  // 2x2 grid ids 0,1 / 2,3; columns {0,2} and {1,3}.
  Plan plan;
  plan.num_districts = 2;
  plan.assignment.assign(4, 0);
  plan.assignment[grid2x2.index_of(1)] = 1;
  plan.assignment[grid2x2.index_of(3)] = 1;
  return plan;
}

void check_aggregates_match(const Instance& inst, const Plan& plan,
                            const std::vector<DistrictAggregate>& aggs) {
  auto fresh = build_aggregates(inst, plan);
  REQUIRE(fresh.size() == aggs.size());
  for (std::size_t d = 0; d < aggs.size(); ++d) {
    CHECK(aggs[d].population == fresh[d].population);
    CHECK(aggs[d].unit_count == fresh[d].unit_count);
    CHECK(aggs[d].area == doctest::Approx(fresh[d].area).epsilon(1e-9));
    CHECK(aggs[d].perimeter == doctest::Approx(fresh[d].perimeter).epsilon(1e-9));
  }
}

}  // namespace

TEST_CASE("build_aggregates: dissolved perimeter of two adjacent cells") {
  Instance grid = generate_grid(1, 2, PopulationModel::uniform(10), 1);
  Plan plan;
  plan.num_districts = 1;
  plan.assignment = {0, 0};
  auto aggs = build_aggregates(grid, plan);
  CHECK(aggs[0].area == doctest::Approx(2.0));
  CHECK(aggs[0].perimeter == doctest::Approx(6.0));
  CHECK(aggs[0].population == 20);
}

TEST_CASE("build_aggregates: singleton district equals unit attributes") {
  Instance grid = generate_grid(2, 2, PopulationModel::uniform(7), 1);
  Plan plan;
  plan.num_districts = 4;
  plan.assignment = {0, 1, 2, 3};
  auto aggs = build_aggregates(grid, plan);
  for (int d = 0; d < 4; ++d) {
    CHECK(aggs[d].population == 7);
    CHECK(aggs[d].area == doctest::Approx(1.0));
    CHECK(aggs[d].perimeter == doctest::Approx(4.0));
    CHECK(aggs[d].unit_count == 1);
  }
}

TEST_CASE("is_contiguous basics") {
  // Path 0-1-2; district {0,2} with 1 elsewhere is split.
  std::vector<Unit> units = {{0, 1, 1, 4}, {1, 1, 1, 4}, {2, 1, 1, 4}};
  Instance path(units, {{0, 1, 1}, {1, 2, 1}});
  Plan plan;
  plan.num_districts = 2;
  plan.assignment = {0, 1, 0};
  CHECK_FALSE(is_contiguous(path, plan, 0));
  CHECK(is_contiguous(path, plan, 1));
  plan.assignment = {0, 0, 1};
  CHECK(is_contiguous(path, plan, 0));
}

TEST_CASE("apply_move: population transfer and contiguity") {
  Instance inst = fixture::figure_instance();
  Plan plan = fixture::figure_plan(inst);
  auto aggs = build_aggregates(inst, plan);
  CandidatePool pool = enumerate_candidates(inst, plan, true);
  REQUIRE(pool.total_moves() > 0);
  const Move& mv = pool.pairs().begin()->second.front();
  std::int64_t src_before = aggs[mv.source].population;
  std::int64_t dst_before = aggs[mv.dest].population;
  apply_move(inst, plan, aggs, mv);
  CHECK(aggs[mv.source].population == src_before - mv.population);
  CHECK(aggs[mv.dest].population == dst_before + mv.population);
  CHECK(is_contiguous(inst, plan, mv.source));
  CHECK(is_contiguous(inst, plan, mv.dest));
  check_aggregates_match(inst, plan, aggs);
}

TEST_CASE("apply_move rejects emptying the source district") {
  std::vector<Unit> units = {{0, 1, 1, 4}, {1, 1, 1, 4}};
  Instance pair(units, {{0, 1, 1}});
  Plan plan;
  plan.num_districts = 2;
  plan.assignment = {0, 1};
  auto aggs = build_aggregates(pair, plan);
  Move mv;
  mv.members = {0};
  mv.source = 0;
  mv.dest = 1;
  CHECK_THROWS(apply_move(pair, plan, aggs, mv));
}

TEST_CASE("apply_switch: involution restores plan and aggregates") {
  Instance inst = fixture::figure_instance();
  Plan plan = fixture::figure_plan(inst);
  auto aggs = build_aggregates(inst, plan);
  CandidatePool pool = enumerate_candidates(inst, plan, true);
  const auto* ab = pool.moves_between(0, 1);
  const auto* ba = pool.moves_between(1, 0);
  REQUIRE(ab);
  REQUIRE(ba);
  // Find the composite pair {1,2} / {9,17}, documented as switchable.
  auto find_by_ids = [&](const std::vector<Move>& moves,
                         std::vector<int> want) -> const Move* {
    std::sort(want.begin(), want.end());
    for (const Move& m : moves) {
      std::vector<int> ids;
      for (int u : m.members) ids.push_back(static_cast<int>(inst.id_of(u)));
      std::sort(ids.begin(), ids.end());
      if (ids == want) return &m;
    }
    return nullptr;
  };
  const Move* m1 = find_by_ids(*ab, {1, 2});
  const Move* m2 = find_by_ids(*ba, {9, 17});
  REQUIRE(m1);
  REQUIRE(m2);
  CHECK(switch_valid(*m1, *m2));

  Plan before = plan;
  auto aggs_before = aggs;
  apply_switch(inst, plan, aggs, *m1, *m2);
  for (int d = 0; d < plan.num_districts; ++d) CHECK(is_contiguous(inst, plan, d));
  check_aggregates_match(inst, plan, aggs);

  // Reverse the exchange; apply_switch classifies edges from the current
  // plan, so reversed member/direction stubs suffice.
  Move r1;
  r1.members = m1->members;
  r1.source = 1;
  r1.dest = 0;
  Move r2;
  r2.members = m2->members;
  r2.source = 0;
  r2.dest = 1;
  apply_switch(inst, plan, aggs, r1, r2);
  CHECK(plan.assignment == before.assignment);
  for (int d = 0; d < plan.num_districts; ++d) {
    CHECK(aggs[d].population == aggs_before[d].population);
    CHECK(aggs[d].perimeter == doctest::Approx(aggs_before[d].perimeter));
  }
}

TEST_CASE("aggregates are drift-free over random accepted moves") {
  std::mt19937_64 rng(7);
  Instance grid = generate_grid(6, 6, PopulationModel::uniform(10), 3);
  Plan plan = init_plan(grid, 4, 11);
  auto aggs = build_aggregates(grid, plan);
  int applied = 0;
  while (applied < 120) {
    CandidatePool pool = enumerate_candidates(grid, plan, true);
    std::vector<const Move*> all;
    for (const auto& [key, moves] : pool.pairs())
      for (const Move& m : moves) all.push_back(&m);
    if (all.empty()) break;
    const Move& mv = *all[rng() % all.size()];
    apply_move(grid, plan, aggs, mv);
    ++applied;
    CHECK(is_contiguous(grid, plan, mv.source));
    CHECK(is_contiguous(grid, plan, mv.dest));
  }
  REQUIRE(applied >= 100);
  check_aggregates_match(grid, plan, aggs);
}

TEST_CASE("2x2 columns: every unit is a candidate move (feasibility oracle)") {
  Instance grid = generate_grid(2, 2, PopulationModel::uniform(1), 1);
  Plan plan = two_column_plan(grid);
  CandidatePool pool = enumerate_candidates(grid, plan, false);
  CHECK(pool.total_moves() == 4);
}
