#include "causalst/dseparation.hpp"

#include <array>
#include <deque>
#include <utility>

namespace causalst {

namespace {

void validate_query(const CausalStructure& g, const NodeSet& x, const NodeSet& y,
                    const NodeSet& z) {
  if (x.empty() || y.empty()) throw QueryError("d-separation query needs non-empty X and Y");
  if (!sets_disjoint(x, y) || !sets_disjoint(x, z) || !sets_disjoint(y, z))
    throw QueryError("d-separation query sets must be pairwise disjoint");
  for (const NodeId id : x) g.require_node(id);
  for (const NodeId id : y) g.require_node(id);
  for (const NodeId id : z) g.require_node(id);
}

}  // namespace

bool d_separated(const CausalStructure& g, const NodeSet& x, const NodeSet& y, const NodeSet& z) {
  validate_query(g, x, y, z);
  const std::size_t n = g.node_count();

  std::vector<bool> in_z(n, false);
  for (const NodeId id : z) in_z[id.value] = true;
  std::vector<bool> z_or_anc(n, false);
  for (const NodeId id : g.ancestral_closure(z)) z_or_anc[id.value] = true;
  std::vector<bool> in_y(n, false);
  for (const NodeId id : y) in_y[id.value] = true;

  // State (node, entered-from): from_child means the trail reaches the node
  // against an edge (moving upstream); from_parent means along an edge.
  // Sources start as if entered from a child so both directions open up.
  enum : int { from_child = 0, from_parent = 1 };
  std::vector<std::array<bool, 2>> visited(n, {false, false});
  std::deque<std::pair<NodeId, int>> queue;
  for (const NodeId id : x) queue.emplace_back(id, from_child);

  while (!queue.empty()) {
    const auto [node, entered] = queue.front();
    queue.pop_front();
    if (visited[node.value][entered]) continue;
    visited[node.value][entered] = true;

    if (!in_z[node.value] && in_y[node.value]) return false;  // active trail reached Y

    if (entered == from_child) {
      if (!in_z[node.value]) {
        for (const NodeId p : g.parents(node)) queue.emplace_back(p, from_child);
        for (const NodeId c : g.children(node)) queue.emplace_back(c, from_parent);
      }
    } else {
      if (!in_z[node.value]) {
        for (const NodeId c : g.children(node)) queue.emplace_back(c, from_parent);
      }
      if (z_or_anc[node.value]) {
        // Collider centre whose descendants (or itself) meet Z: trail may
        // turn back up through the parents.
        for (const NodeId p : g.parents(node)) queue.emplace_back(p, from_child);
      }
    }
  }
  return true;
}

}  // namespace causalst
