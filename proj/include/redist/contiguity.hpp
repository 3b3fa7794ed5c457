#pragma once

#include <vector>

#include "redist/instance.hpp"

namespace redist {

/// Biconnected-component decomposition of one district's induced subgraph.
/// Contracting each bcc to a node yields a tree linked through cut points.
struct BlockCutTree {
  std::vector<std::vector<int>> bccs;        // unit indices per component
  std::vector<int> cut_points;               // unit indices, sorted
  std::vector<std::vector<int>> bcc_to_cpts; // bcc -> its cut points (bcc.CPT)
  std::vector<std::vector<int>> cpt_to_bccs; // position in cut_points -> bcc ids
  std::vector<char> is_cut;                  // indexed by unit index (full size)
};

struct CompositeMove {
  int anchor = -1;                 // cut-point unit index
  std::vector<int> members;        // anchor plus its smaller components, sorted
  std::int64_t population = 0;
  double area = 0.0;
  double perimeter_sum = 0.0;      // raw sum of member perimeters
  double internal_shared = 0.0;    // shared length over edges inside members
};

/// Cut points and biconnected components via iterative DFS. Linear in the
/// district's units plus induced edges. Throws if member_set is disconnected.
BlockCutTree analyze_district(const Instance& instance,
                              const std::vector<int>& member_set);

/// Leaf-to-root peeling of the block-cut tree: exactly one composite move per
/// cut point. Component size is unit count; ties keep the component holding
/// the lowest unit id.
std::vector<CompositeMove> composite_moves(const Instance& instance,
                                           const std::vector<int>& member_set,
                                           const BlockCutTree& tree);

/// Independent brute force: smallest connected set M containing anchor such
/// that member_set minus M stays connected and non-empty. Iterative deepening
/// over connected vertex sets; guarded to ~25 units.
std::vector<int> minimal_move_oracle(const Instance& instance,
                                     const std::vector<int>& member_set,
                                     int anchor);

}  // namespace redist
