#include "redist/moves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "redist/objective.hpp"

namespace redist {

bool same_move_identity(const Move& a, const Move& b) {
  return a.source == b.source && a.dest == b.dest && a.members == b.members;
}

const std::vector<Move>* CandidatePool::moves_between(int src, int dst) const {
  auto it = pairs_.find({src, dst});
  return it == pairs_.end() ? nullptr : &it->second;
}

std::size_t CandidatePool::total_moves() const {
  std::size_t n = 0;
  for (const auto& [key, moves] : pairs_) n += moves.size();
  return n;
}

namespace {

// Builds a Move for a member set currently in `source`, classifying incident
// edges against the plan.
Move make_move(const Instance& instance, const Plan& plan,
               const std::vector<int>& members, int anchor, int source,
               int dest, std::vector<char>& scratch) {
  Move mv;
  mv.members = members;
  mv.anchor = anchor;
  mv.source = source;
  mv.dest = dest;
  for (int u : members) scratch[u] = 1;
  for (int u : members) {
    const Unit& unit = instance.unit(u);
    mv.population += unit.population;
    mv.area += unit.area;
    mv.perimeter_sum += unit.perimeter;
    for (const Neighbor& nb : instance.neighbors(u)) {
      if (scratch[nb.unit]) {
        if (nb.unit > u) mv.internal_shared += nb.shared_length;
      } else if (plan.assignment[nb.unit] == source) {
        mv.shared_src_rest += nb.shared_length;
      } else if (plan.assignment[nb.unit] == dest) {
        mv.shared_dest += nb.shared_length;
        mv.dest_contacts.push_back(nb.unit);
      }
    }
  }
  for (int u : members) scratch[u] = 0;
  std::sort(mv.dest_contacts.begin(), mv.dest_contacts.end());
  mv.dest_contacts.erase(
      std::unique(mv.dest_contacts.begin(), mv.dest_contacts.end()),
      mv.dest_contacts.end());
  return mv;
}

bool move_order(const Instance& instance, const Move& a, const Move& b) {
  if (a.population != b.population) return a.population < b.population;
  // Deterministic tie order: member id lists.
  const std::size_t n = std::min(a.members.size(), b.members.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto ida = instance.id_of(a.members[i]);
    auto idb = instance.id_of(b.members[i]);
    if (ida != idb) return ida < idb;
  }
  return a.members.size() < b.members.size();
}

// All outgoing moves of district d, appended into per-destination buckets.
// dest_filter < 0 means every destination.
void generate_outgoing(const Instance& instance, const Plan& plan, int d,
                       bool composites_enabled, int dest_filter,
                       std::map<CandidatePool::PairKey, std::vector<Move>>& out,
                       std::vector<char>& scratch) {
  std::vector<int> members;
  for (int u = 0; u < instance.size(); ++u)
    if (plan.assignment[u] == d) members.push_back(u);
  if (members.size() <= 1) return;  // moving the only unit would empty d

  BlockCutTree tree = analyze_district(instance, members);
  std::vector<const CompositeMove*> composite_of(instance.size(), nullptr);
  std::vector<CompositeMove> composites;
  if (composites_enabled) {
    composites = composite_moves(instance, members, tree);
    for (const CompositeMove& cm : composites) composite_of[cm.anchor] = &cm;
  }

  std::vector<char> dest_seen(plan.num_districts, 0);
  for (int u : members) {
    std::vector<int> dests;
    for (const Neighbor& nb : instance.neighbors(u)) {
      int other = plan.assignment[nb.unit];
      if (other != d && !dest_seen[other]) {
        dest_seen[other] = 1;
        dests.push_back(other);
      }
    }
    for (int other : dests) dest_seen[other] = 0;
    if (dests.empty()) continue;
    if (dest_filter >= 0) {
      if (std::find(dests.begin(), dests.end(), dest_filter) == dests.end())
        continue;
      dests = {dest_filter};
    }
    if (!tree.is_cut[u]) {
      for (int other : dests)
        out[{d, other}].push_back(
            make_move(instance, plan, {u}, u, d, other, scratch));
    } else if (composites_enabled) {
      const CompositeMove* cm = composite_of[u];
      if (cm == nullptr) continue;
      if (static_cast<int>(members.size() - cm->members.size()) < 1) continue;
      for (int other : dests)
        out[{d, other}].push_back(
            make_move(instance, plan, cm->members, u, d, other, scratch));
    }
  }
}

void sort_pool_entries(const Instance& instance,
                       std::map<CandidatePool::PairKey, std::vector<Move>>& pairs) {
  for (auto it = pairs.begin(); it != pairs.end();) {
    if (it->second.empty()) {
      it = pairs.erase(it);
      continue;
    }
    std::sort(it->second.begin(), it->second.end(),
              [&](const Move& a, const Move& b) { return move_order(instance, a, b); });
    ++it;
  }
}

}  // namespace

CandidatePool enumerate_candidates(const Instance& instance, const Plan& plan,
                                   bool composites_enabled) {
  CandidatePool pool;
  std::vector<char> scratch(instance.size(), 0);
  for (int d = 0; d < plan.num_districts; ++d)
    generate_outgoing(instance, plan, d, composites_enabled, -1, pool.pairs_,
                      scratch);
  sort_pool_entries(instance, pool.pairs_);
  return pool;
}

void update_candidates(CandidatePool& pool, const Instance& instance,
                       const Plan& plan, int district_a, int district_b,
                       bool composites_enabled) {
  // Drop every entry whose ordered pair involves a or b, then regenerate:
  // a and b in full, and every other district's moves toward a and b.
  for (auto it = pool.pairs_.begin(); it != pool.pairs_.end();) {
    auto [src, dst] = it->first;
    bool touched = src == district_a || src == district_b || dst == district_a ||
                   dst == district_b;
    it = touched ? pool.pairs_.erase(it) : ++it;
  }
  std::vector<char> scratch(instance.size(), 0);
  std::map<CandidatePool::PairKey, std::vector<Move>> fresh;
  generate_outgoing(instance, plan, district_a, composites_enabled, -1, fresh,
                    scratch);
  generate_outgoing(instance, plan, district_b, composites_enabled, -1, fresh,
                    scratch);
  // Districts adjacent to a or b may now have different boundaries with them.
  std::vector<char> affected(plan.num_districts, 0);
  for (int u = 0; u < instance.size(); ++u) {
    int d = plan.assignment[u];
    if (d != district_a && d != district_b) continue;
    for (const Neighbor& nb : instance.neighbors(u)) {
      int other = plan.assignment[nb.unit];
      if (other != district_a && other != district_b) affected[other] = 1;
    }
  }
  for (int d = 0; d < plan.num_districts; ++d) {
    if (!affected[d]) continue;
    generate_outgoing(instance, plan, d, composites_enabled, district_a, fresh,
                      scratch);
    generate_outgoing(instance, plan, d, composites_enabled, district_b, fresh,
                      scratch);
  }
  sort_pool_entries(instance, fresh);
  for (auto& [key, moves] : fresh) pool.pairs_[key] = std::move(moves);
}

bool switch_valid(const Move& m1, const Move& m2) {
  if (m1.source != m2.dest || m1.dest != m2.source)
    throw std::invalid_argument("switch_valid: mismatched district pair");
  // Each move must keep a destination contact outside the partner's members
  // (the paper's B1 subset-of Bs rule), otherwise the arriving set would have
  // nothing left to attach to.
  auto contacts_inside = [](const Move& m, const Move& partner) {
    return std::includes(partner.members.begin(), partner.members.end(),
                         m.dest_contacts.begin(), m.dest_contacts.end());
  };
  if (m1.dest_contacts.empty() || m2.dest_contacts.empty()) return false;
  return !contacts_inside(m1, m2) && !contacts_inside(m2, m1);
}

std::optional<SwitchCandidate> best_switch(
    const std::vector<Move>& pool_ab, const std::vector<Move>& pool_ba,
    const Instance& instance, const std::vector<DistrictAggregate>& aggregates,
    const ObjectiveConfig& config, int window,
    const std::function<bool(const Move&, const Move&)>& allowed) {
  if (pool_ab.empty() || pool_ba.empty()) return std::nullopt;
  const int a = pool_ab.front().source;
  const int b = pool_ab.front().dest;
  const double pop_a = static_cast<double>(aggregates[a].population);
  const double pop_b = static_cast<double>(aggregates[b].population);

  std::optional<SwitchCandidate> best;
  for (const Move& m1 : pool_ab) {
    // Counter-transfer that would equalize the two districts.
    double target =
        static_cast<double>(m1.population) + (pop_b - pop_a) / 2.0;
    auto it = std::lower_bound(
        pool_ba.begin(), pool_ba.end(), target,
        [](const Move& m, double t) { return static_cast<double>(m.population) < t; });
    long center = it - pool_ba.begin();
    long lo = std::max<long>(0, center - window);
    long hi = std::min<long>(static_cast<long>(pool_ba.size()) - 1,
                             center + window);
    for (long j = lo; j <= hi; ++j) {
      const Move& m2 = pool_ba[j];
      if (allowed && !allowed(m1, m2)) continue;
      if (!switch_valid(m1, m2)) continue;
      double delta = score_switch(m1, m2, instance, aggregates, config);
      if (!best || delta > best->delta) best = SwitchCandidate{m1, m2, delta};
    }
  }
  return best;
}

}  // namespace redist
