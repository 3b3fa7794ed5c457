#include "redist/contiguity.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace redist {

namespace {

// Local dense numbering of the member set, 0..m-1.
struct LocalGraph {
  std::vector<int> local_to_global;
  std::vector<int> global_to_local;  // full instance size, -1 outside
  std::vector<std::vector<int>> adj;
};

LocalGraph build_local(const Instance& instance, const std::vector<int>& members) {
  LocalGraph g;
  g.local_to_global = members;
  g.global_to_local.assign(instance.size(), -1);
  for (int i = 0; i < static_cast<int>(members.size()); ++i)
    g.global_to_local[members[i]] = i;
  g.adj.resize(members.size());
  for (int i = 0; i < static_cast<int>(members.size()); ++i) {
    for (const Neighbor& nb : instance.neighbors(members[i])) {
      int j = g.global_to_local[nb.unit];
      if (j >= 0) g.adj[i].push_back(j);
    }
  }
  return g;
}

}  // namespace

BlockCutTree analyze_district(const Instance& instance,
                              const std::vector<int>& member_set) {
  const int m = static_cast<int>(member_set.size());
  if (m == 0) throw std::invalid_argument("analyze_district: empty member set");
  LocalGraph g = build_local(instance, member_set);

  BlockCutTree tree;
  tree.is_cut.assign(instance.size(), 0);
  if (m == 1) {
    tree.bccs.push_back({member_set[0]});
    tree.bcc_to_cpts.push_back({});
    return tree;
  }

  // Iterative Tarjan/Hopcroft lowpoint DFS. Edge stack holds (u,v) local
  // pairs; a bcc is popped when low[child] >= disc[u].
  std::vector<int> disc(m, -1), low(m, 0), parent(m, -1), child_count(m, 0);
  std::vector<char> cut(m, 0);
  std::vector<std::pair<int, int>> edge_stack;
  std::vector<std::vector<int>> bccs_local;

  struct Frame {
    int u;
    std::size_t next_edge;
  };
  int timer = 0;
  std::vector<Frame> stack;
  int visited = 0;

  auto pop_bcc = [&](int u, int v) {
    std::vector<char> seen_local(m, 0);
    std::vector<int> comp;
    while (!edge_stack.empty()) {
      auto [a, b] = edge_stack.back();
      edge_stack.pop_back();
      if (!seen_local[a]) {
        seen_local[a] = 1;
        comp.push_back(a);
      }
      if (!seen_local[b]) {
        seen_local[b] = 1;
        comp.push_back(b);
      }
      if (a == u && b == v) break;
    }
    if (!comp.empty()) bccs_local.push_back(std::move(comp));
  };

  const int root = 0;
  stack.push_back({root, 0});
  disc[root] = low[root] = timer++;
  ++visited;
  while (!stack.empty()) {
    Frame& f = stack.back();
    int u = f.u;
    if (f.next_edge < g.adj[u].size()) {
      int v = g.adj[u][f.next_edge++];
      if (disc[v] == -1) {
        parent[v] = u;
        ++child_count[u];
        edge_stack.push_back({u, v});
        disc[v] = low[v] = timer++;
        ++visited;
        stack.push_back({v, 0});
      } else if (v != parent[u] && disc[v] < disc[u]) {
        edge_stack.push_back({u, v});
        low[u] = std::min(low[u], disc[v]);
      }
    } else {
      stack.pop_back();
      if (!stack.empty()) {
        int p = parent[u];
        low[p] = std::min(low[p], low[u]);
        if (low[u] >= disc[p]) {
          if (p != root || child_count[p] > 1) cut[p] = 1;
          if (p == root && child_count[p] > 1) cut[p] = 1;
          pop_bcc(p, u);
        }
      }
    }
  }
  if (visited != m)
    throw std::invalid_argument("analyze_district: member set is disconnected");

  // Map back to global indices; sort everything for stable output.
  for (auto& comp : bccs_local) {
    std::vector<int> global;
    global.reserve(comp.size());
    for (int lc : comp) global.push_back(g.local_to_global[lc]);
    std::sort(global.begin(), global.end());
    tree.bccs.push_back(std::move(global));
  }
  std::sort(tree.bccs.begin(), tree.bccs.end());
  for (int i = 0; i < m; ++i)
    if (cut[i]) tree.is_cut[g.local_to_global[i]] = 1;
  for (int u : member_set)
    if (tree.is_cut[u]) tree.cut_points.push_back(u);
  std::sort(tree.cut_points.begin(), tree.cut_points.end());

  std::vector<int> cpt_pos(instance.size(), -1);
  for (int i = 0; i < static_cast<int>(tree.cut_points.size()); ++i)
    cpt_pos[tree.cut_points[i]] = i;
  tree.cpt_to_bccs.resize(tree.cut_points.size());
  tree.bcc_to_cpts.resize(tree.bccs.size());
  for (int b = 0; b < static_cast<int>(tree.bccs.size()); ++b) {
    for (int u : tree.bccs[b]) {
      if (tree.is_cut[u]) {
        tree.bcc_to_cpts[b].push_back(u);
        tree.cpt_to_bccs[cpt_pos[u]].push_back(b);
      }
    }
  }
  return tree;
}

namespace {

struct ComponentRef {
  std::int64_t min_id = std::numeric_limits<std::int64_t>::max();
  int size = 0;
  std::vector<int> units;  // excludes the cut point under consideration
};

}  // namespace

std::vector<CompositeMove> composite_moves(const Instance& instance,
                                           const std::vector<int>& member_set,
                                           const BlockCutTree& tree) {
  const int n_d = static_cast<int>(member_set.size());
  const int num_bccs = static_cast<int>(tree.bccs.size());
  const int num_cpts = static_cast<int>(tree.cut_points.size());
  std::vector<CompositeMove> result;
  if (num_cpts == 0) return result;

  std::vector<int> cpt_pos(instance.size(), -1);
  for (int i = 0; i < num_cpts; ++i) cpt_pos[tree.cut_points[i]] = i;

  // Mutable bcc state: remaining cut points, unit set (grows as absorbed
  // branches are folded in), processed flag.
  std::vector<std::vector<int>> bcc_units(tree.bccs.begin(), tree.bccs.end());
  std::vector<std::vector<int>> bcc_cpts(tree.bcc_to_cpts.begin(),
                                         tree.bcc_to_cpts.end());
  std::vector<char> bcc_done(num_bccs, 0);
  std::vector<std::vector<int>> cpt_bccs(tree.cpt_to_bccs.begin(),
                                         tree.cpt_to_bccs.end());

  // Per cut point: maxC (largest component so far) and restC (union of the
  // others), both excluding the cut point itself.
  std::vector<ComponentRef> max_c(num_cpts);
  std::vector<std::vector<int>> rest_c(num_cpts);

  std::vector<int> leaf_queue;
  for (int b = 0; b < num_bccs; ++b)
    if (bcc_cpts[b].size() == 1) leaf_queue.push_back(b);

  auto remove_value = [](std::vector<int>& v, int x) {
    v.erase(std::remove(v.begin(), v.end(), x), v.end());
  };

  for (std::size_t qi = 0; qi < leaf_queue.size(); ++qi) {
    int b = leaf_queue[qi];
    if (bcc_done[b] || bcc_cpts[b].empty()) continue;
    bcc_done[b] = 1;
    int cpt = bcc_cpts[b][0];
    int ci = cpt_pos[cpt];

    // Component hanging off cpt through this bcc: its units minus cpt.
    ComponentRef comp;
    comp.units.reserve(bcc_units[b].size());
    for (int u : bcc_units[b]) {
      if (u == cpt) continue;
      comp.units.push_back(u);
      comp.min_id = std::min(comp.min_id, instance.id_of(u));
    }
    comp.size = static_cast<int>(comp.units.size());

    bool new_max = comp.size > max_c[ci].size ||
                   (comp.size == max_c[ci].size && comp.min_id < max_c[ci].min_id);
    if (new_max) {
      rest_c[ci].insert(rest_c[ci].end(), max_c[ci].units.begin(),
                        max_c[ci].units.end());
      max_c[ci] = std::move(comp);
    } else {
      rest_c[ci].insert(rest_c[ci].end(), comp.units.begin(), comp.units.end());
    }
    remove_value(cpt_bccs[ci], b);

    if (cpt_bccs[ci].size() == 1) {
      // Verbatim size condition: size(maxC) < size(S_d) - size(maxC u restC) + 1,
      // where the paper's sets count the cut point once.
      int max_incl = max_c[ci].size + 1;
      int union_incl = max_c[ci].size + static_cast<int>(rest_c[ci].size()) + 1;
      if (max_incl < n_d - union_incl + 1) {
        rest_c[ci].insert(rest_c[ci].end(), max_c[ci].units.begin(),
                          max_c[ci].units.end());
        max_c[ci] = ComponentRef{};
        int bcc_r = cpt_bccs[ci][0];
        cpt_bccs[ci].clear();
        remove_value(bcc_cpts[bcc_r], cpt);
        // Fold the absorbed branch into the remaining bcc so later size
        // comparisons see the full subtree through this cut point. cpt is
        // already a member of bcc_r.
        bcc_units[bcc_r].insert(bcc_units[bcc_r].end(), rest_c[ci].begin(),
                                rest_c[ci].end());
        if (bcc_cpts[bcc_r].size() == 1 && !bcc_done[bcc_r])
          leaf_queue.push_back(bcc_r);
      }
    }

    if (cpt_bccs[ci].empty()) {
      CompositeMove cm;
      cm.anchor = cpt;
      cm.members = rest_c[ci];
      cm.members.push_back(cpt);
      std::sort(cm.members.begin(), cm.members.end());
      cm.members.erase(std::unique(cm.members.begin(), cm.members.end()),
                       cm.members.end());
      std::vector<char> in_set(instance.size(), 0);
      for (int u : cm.members) in_set[u] = 1;
      for (int u : cm.members) {
        const Unit& unit = instance.unit(u);
        cm.population += unit.population;
        cm.area += unit.area;
        cm.perimeter_sum += unit.perimeter;
        for (const Neighbor& nb : instance.neighbors(u))
          if (in_set[nb.unit] && nb.unit > u) cm.internal_shared += nb.shared_length;
      }
      result.push_back(std::move(cm));
    }
  }

  std::sort(result.begin(), result.end(),
            [&](const CompositeMove& a, const CompositeMove& b) {
              return instance.id_of(a.anchor) < instance.id_of(b.anchor);
            });
  return result;
}

namespace {

bool set_connected(const std::vector<std::vector<int>>& adj,
                   const std::vector<char>& in_set, int start, int expected) {
  std::vector<int> stack{start};
  std::vector<char> seen(adj.size(), 0);
  seen[start] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (in_set[v] && !seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == expected;
}

}  // namespace

std::vector<int> minimal_move_oracle(const Instance& instance,
                                     const std::vector<int>& member_set,
                                     int anchor) {
  const int m = static_cast<int>(member_set.size());
  if (m > 25)
    throw std::invalid_argument("minimal_move_oracle: size guard exceeded");
  LocalGraph g = build_local(instance, member_set);
  int anchor_local = g.global_to_local[anchor];
  if (anchor_local < 0)
    throw std::invalid_argument("minimal_move_oracle: anchor not in member set");

  // Enumerate connected vertex sets containing the anchor, one cardinality at
  // a time, via the standard fixed-root expansion (each set produced once).
  constexpr std::int64_t kEnumCap = 20000000;
  std::int64_t enumerated = 0;

  std::vector<int> best;
  std::int64_t best_complement_min_id = std::numeric_limits<std::int64_t>::max();

  std::vector<char> in_set(m, 0), banned(m, 0);
  std::vector<int> current;

  auto consider = [&](int target_size) {
    // current has target_size members; valid if complement connected, non-empty.
    int comp_size = m - target_size;
    if (comp_size == 0) return;
    int comp_start = -1;
    std::int64_t comp_min_id = std::numeric_limits<std::int64_t>::max();
    for (int i = 0; i < m; ++i) {
      if (!in_set[i]) {
        if (comp_start < 0) comp_start = i;
        comp_min_id = std::min(comp_min_id, instance.id_of(g.local_to_global[i]));
      }
    }
    std::vector<char> comp_mask(m, 0);
    for (int i = 0; i < m; ++i) comp_mask[i] = !in_set[i];
    if (!set_connected(g.adj, comp_mask, comp_start, comp_size)) return;
    // Tie rule: keep the complement (kept component) holding the lowest id.
    if (best.empty() || comp_min_id < best_complement_min_id) {
      best.clear();
      for (int i = 0; i < m; ++i)
        if (in_set[i]) best.push_back(g.local_to_global[i]);
      best_complement_min_id = comp_min_id;
    }
  };

  for (int target = 1; target < m; ++target) {
    best.clear();
    best_complement_min_id = std::numeric_limits<std::int64_t>::max();
    // Recursive expansion with an explicit frontier.
    std::fill(in_set.begin(), in_set.end(), 0);
    std::fill(banned.begin(), banned.end(), 0);

    struct Node {
      std::vector<int> frontier;
      std::size_t next = 0;
      int added = -1;
    };
    std::vector<Node> rec;
    in_set[anchor_local] = 1;
    {
      Node root;
      for (int v : g.adj[anchor_local])
        if (!root.frontier.empty() && root.frontier.back() == v)
          continue;
        else
          root.frontier.push_back(v);
      std::sort(root.frontier.begin(), root.frontier.end());
      root.frontier.erase(
          std::unique(root.frontier.begin(), root.frontier.end()),
          root.frontier.end());
      rec.push_back(std::move(root));
    }
    if (target == 1) consider(1);
    std::vector<int> ban_order;  // to restore banned flags on unwind
    std::vector<std::size_t> ban_marks{0};
    while (!rec.empty()) {
      Node& node = rec.back();
      int depth = static_cast<int>(rec.size());  // current set size == depth
      if (depth < target && node.next < node.frontier.size()) {
        int v = node.frontier[node.next++];
        if (in_set[v] || banned[v]) continue;
        if (++enumerated > kEnumCap)
          throw std::runtime_error("minimal_move_oracle: enumeration cap exceeded");
        in_set[v] = 1;
        // Once we return from exploring v, it becomes banned for the
        // remaining branches of this node.
        Node child;
        child.added = v;
        child.frontier = node.frontier;
        for (int w : g.adj[v])
          if (!in_set[w] && !banned[w]) child.frontier.push_back(w);
        std::sort(child.frontier.begin(), child.frontier.end());
        child.frontier.erase(
            std::unique(child.frontier.begin(), child.frontier.end()),
            child.frontier.end());
        ban_marks.push_back(ban_order.size());
        rec.push_back(std::move(child));
        if (static_cast<int>(rec.size()) == target) consider(target);
      } else {
        int v = node.added;
        rec.pop_back();
        if (v >= 0) {
          in_set[v] = 0;
          // Restore bans introduced below this node, then ban v itself.
          std::size_t mark = ban_marks.back();
          ban_marks.pop_back();
          while (ban_order.size() > mark) {
            banned[ban_order.back()] = 0;
            ban_order.pop_back();
          }
          banned[v] = 1;
          ban_order.push_back(v);
        }
      }
    }
    std::fill(banned.begin(), banned.end(), 0);
    if (!best.empty()) {
      std::sort(best.begin(), best.end());
      return best;
    }
  }
  throw std::runtime_error("minimal_move_oracle: no valid move set exists");
}

}  // namespace redist
