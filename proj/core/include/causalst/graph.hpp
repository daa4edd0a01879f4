#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "causalst/errors.hpp"

namespace causalst {

enum class NodeRole { observed, unobserved };

/// Index of a node within one CausalStructure. Ids are assigned in
/// declaration order and are stable across do-surgery, so distributions and
/// interventions derived from a surgered structure stay comparable.
struct NodeId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

struct Edge {
  NodeId from;
  NodeId to;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Sorted, duplicate-free vector of node ids.
using NodeSet = std::vector<NodeId>;

NodeSet make_node_set(std::initializer_list<NodeId> ids);
NodeSet normalized_node_set(NodeSet ids);
bool set_contains(const NodeSet& set, NodeId id);
bool sets_disjoint(const NodeSet& a, const NodeSet& b);
NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);

struct NodeDecl {
  std::string name;
  NodeRole role = NodeRole::observed;
  friend bool operator==(const NodeDecl&, const NodeDecl&) = default;
};

/// Directed acyclic graph over named nodes, each either observed or
/// unobserved. Checked on construction: unique non-empty names, known edge
/// endpoints, no self-loops, no duplicate edges, no directed cycles.
/// Immutable afterwards; all queries are const and safe to run concurrently.
class CausalStructure {
 public:
  CausalStructure(std::vector<NodeDecl> nodes,
                  const std::vector<std::pair<std::string, std::string>>& edges_by_name);
  static CausalStructure from_edge_ids(std::vector<NodeDecl> nodes, std::vector<Edge> edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::span<const NodeDecl> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }

  bool has_node(std::string_view name) const;
  NodeId node(std::string_view name) const;  ///< throws UnknownNodeError
  const std::string& name(NodeId id) const;
  NodeRole role(NodeId id) const;
  bool is_observed(NodeId id) const { return role(id) == NodeRole::observed; }

  std::span<const NodeId> parents(NodeId id) const;
  std::span<const NodeId> children(NodeId id) const;
  bool has_edge(NodeId from, NodeId to) const;

  /// Nodes reachable from `id` along directed paths, excluding `id`.
  NodeSet descendants(NodeId id) const;
  /// Nodes from which `id` is reachable, excluding `id`.
  NodeSet ancestors(NodeId id) const;
  /// Union of `ids` and all their ancestors.
  NodeSet ancestral_closure(const NodeSet& ids) const;

  /// A fixed topological order (parents before children).
  std::span<const NodeId> topological_order() const { return topo_; }

  NodeSet observed_nodes() const;
  NodeSet all_nodes() const;

  NodeSet node_set(std::span<const std::string> names) const;
  std::vector<std::string> names_of(const NodeSet& ids) const;

  void require_node(NodeId id) const;

  friend bool operator==(const CausalStructure& a, const CausalStructure& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  void build_and_validate();

  std::vector<NodeDecl> nodes_;
  std::vector<Edge> edges_;  // sorted
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::vector<NodeId>> parents_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<NodeId> topo_;
};

}  // namespace causalst
