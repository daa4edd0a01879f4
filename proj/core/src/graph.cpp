#include "causalst/graph.hpp"

#include <algorithm>
#include <deque>

namespace causalst {

NodeSet make_node_set(std::initializer_list<NodeId> ids) {
  return normalized_node_set(NodeSet(ids));
}

NodeSet normalized_node_set(NodeSet ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool set_contains(const NodeSet& set, NodeId id) {
  return std::binary_search(set.begin(), set.end(), id);
}

bool sets_disjoint(const NodeSet& a, const NodeSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return false;
    if (*ia < *ib)
      ++ia;
    else
      ++ib;
  }
  return true;
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

CausalStructure::CausalStructure(
    std::vector<NodeDecl> nodes,
    const std::vector<std::pair<std::string, std::string>>& edges_by_name)
    : nodes_(std::move(nodes)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].name.empty()) throw InvariantError("node with empty name");
    auto [it, inserted] = index_.emplace(nodes_[i].name, NodeId{static_cast<std::uint32_t>(i)});
    if (!inserted) throw InvariantError("duplicate node name '" + nodes_[i].name + "'");
  }
  edges_.reserve(edges_by_name.size());
  for (const auto& [from, to] : edges_by_name) edges_.push_back({node(from), node(to)});
  build_and_validate();
}

CausalStructure CausalStructure::from_edge_ids(std::vector<NodeDecl> nodes,
                                               std::vector<Edge> edges) {
  std::vector<std::pair<std::string, std::string>> by_name;
  by_name.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.from.value >= nodes.size() || e.to.value >= nodes.size())
      throw UnknownNodeError("edge endpoint out of range");
    by_name.emplace_back(nodes[e.from.value].name, nodes[e.to.value].name);
  }
  return CausalStructure(std::move(nodes), by_name);
}

void CausalStructure::build_and_validate() {
  const std::size_t n = nodes_.size();
  std::sort(edges_.begin(), edges_.end());
  parents_.assign(n, {});
  children_.assign(n, {});
  for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
    if (edges_[i] == edges_[i + 1])
      throw InvariantError("duplicate edge " + name(edges_[i].from) + " -> " + name(edges_[i].to));
  }
  for (const Edge& e : edges_) {
    if (e.from.value >= n || e.to.value >= n) throw UnknownNodeError("edge endpoint out of range");
    if (e.from == e.to) throw InvariantError("self-loop on node '" + name(e.from) + "'");
    parents_[e.to.value].push_back(e.from);
    children_[e.from.value].push_back(e.to);
  }
  for (auto& p : parents_) std::sort(p.begin(), p.end());
  for (auto& c : children_) std::sort(c.begin(), c.end());

  // Kahn's algorithm; a leftover node means a directed cycle.
  std::vector<std::size_t> indegree(n);
  for (std::size_t i = 0; i < n; ++i) indegree[i] = parents_[i].size();
  std::deque<NodeId> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(NodeId{static_cast<std::uint32_t>(i)});
  topo_.clear();
  topo_.reserve(n);
  while (!ready.empty()) {
    const NodeId v = ready.front();
    ready.pop_front();
    topo_.push_back(v);
    for (const NodeId c : children_[v.value]) {
      if (--indegree[c.value] == 0) ready.push_back(c);
    }
  }
  if (topo_.size() != n) throw InvariantError("graph contains a directed cycle");
}

bool CausalStructure::has_node(std::string_view name) const {
  return index_.find(std::string(name)) != index_.end();
}

NodeId CausalStructure::node(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) throw UnknownNodeError("unknown node '" + std::string(name) + "'");
  return it->second;
}

const std::string& CausalStructure::name(NodeId id) const {
  require_node(id);
  return nodes_[id.value].name;
}

NodeRole CausalStructure::role(NodeId id) const {
  require_node(id);
  return nodes_[id.value].role;
}

std::span<const NodeId> CausalStructure::parents(NodeId id) const {
  require_node(id);
  return parents_[id.value];
}

std::span<const NodeId> CausalStructure::children(NodeId id) const {
  require_node(id);
  return children_[id.value];
}

bool CausalStructure::has_edge(NodeId from, NodeId to) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

NodeSet CausalStructure::descendants(NodeId id) const {
  require_node(id);
  std::vector<bool> seen(nodes_.size(), false);
  std::deque<NodeId> queue{id};
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (const NodeId c : children_[v.value]) {
      if (!seen[c.value]) {
        seen[c.value] = true;
        queue.push_back(c);
      }
    }
  }
  NodeSet out;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(NodeId{static_cast<std::uint32_t>(i)});
  return out;
}

NodeSet CausalStructure::ancestors(NodeId id) const {
  require_node(id);
  std::vector<bool> seen(nodes_.size(), false);
  std::deque<NodeId> queue{id};
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (const NodeId p : parents_[v.value]) {
      if (!seen[p.value]) {
        seen[p.value] = true;
        queue.push_back(p);
      }
    }
  }
  NodeSet out;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(NodeId{static_cast<std::uint32_t>(i)});
  // `id` may have been re-reached through a parent chain only if cyclic,
  // which construction rules out, so no need to erase it here.
  return out;
}

NodeSet CausalStructure::ancestral_closure(const NodeSet& ids) const {
  NodeSet out = ids;
  for (const NodeId id : ids) out = set_union(out, ancestors(id));
  return out;
}

NodeSet CausalStructure::observed_nodes() const {
  NodeSet out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].role == NodeRole::observed) out.push_back(NodeId{static_cast<std::uint32_t>(i)});
  return out;
}

NodeSet CausalStructure::all_nodes() const {
  NodeSet out(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) out[i] = NodeId{static_cast<std::uint32_t>(i)};
  return out;
}

NodeSet CausalStructure::node_set(std::span<const std::string> names) const {
  NodeSet out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(node(n));
  return normalized_node_set(std::move(out));
}

std::vector<std::string> CausalStructure::names_of(const NodeSet& ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (const NodeId id : ids) out.push_back(name(id));
  return out;
}

void CausalStructure::require_node(NodeId id) const {
  if (id.value >= nodes_.size()) throw UnknownNodeError("node id out of range");
}

}  // namespace causalst
