#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "redist/contiguity.hpp"
#include "redist/instance.hpp"
#include "redist/plan.hpp"

namespace redist {

struct ObjectiveConfig;

/// A contiguity-preserving reassignment of a connected unit set from source
/// to dest, with pre-summed attributes so scoring never scans members.
struct Move {
  std::vector<int> members;       // unit indices, sorted
  int source = -1;
  int dest = -1;
  int anchor = -1;                // generating boundary unit
  std::int64_t population = 0;
  double area = 0.0;
  double perimeter_sum = 0.0;     // raw sum of member perimeters
  double internal_shared = 0.0;   // shared length on edges inside members
  double shared_src_rest = 0.0;   // shared length to source district minus members
  double shared_dest = 0.0;       // shared length to dest district
  std::vector<int> dest_contacts; // dest units adjacent to members, sorted

  double dissolved_perimeter() const { return perimeter_sum - 2.0 * internal_shared; }
};

bool same_move_identity(const Move& a, const Move& b);

/// Candidate moves per ordered district pair, each list sorted by the
/// population it would transfer (ties by member ids for determinism).
class CandidatePool {
 public:
  using PairKey = std::pair<int, int>;

  const std::map<PairKey, std::vector<Move>>& pairs() const { return pairs_; }
  const std::vector<Move>* moves_between(int src, int dst) const;
  std::size_t total_moves() const;

 private:
  friend CandidatePool enumerate_candidates(const Instance&, const Plan&, bool);
  friend void update_candidates(CandidatePool&, const Instance&, const Plan&,
                                int, int, bool);
  std::map<PairKey, std::vector<Move>> pairs_;
};

CandidatePool enumerate_candidates(const Instance& instance, const Plan& plan,
                                   bool composites_enabled);

/// Recomputes every pool entry whose ordered pair involves district a or b;
/// all other entries are untouched. Result equals a from-scratch enumeration.
void update_candidates(CandidatePool& pool, const Instance& instance,
                       const Plan& plan, int district_a, int district_b,
                       bool composites_enabled);

/// Subset test from the switch validity rule: each move must keep a
/// destination contact outside the partner's member set.
bool switch_valid(const Move& m1, const Move& m2);

struct SwitchCandidate {
  Move m1;
  Move m2;
  double delta = 0.0;
};

/// Best valid switch between sorted pools: binary search on the ideal
/// counter-transfer, then a small window scan on both sides.
std::optional<SwitchCandidate> best_switch(
    const std::vector<Move>& pool_ab, const std::vector<Move>& pool_ba,
    const Instance& instance, const std::vector<DistrictAggregate>& aggregates,
    const ObjectiveConfig& config, int window,
    const std::function<bool(const Move&, const Move&)>& allowed = nullptr);

}  // namespace redist
