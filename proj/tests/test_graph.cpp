#include <doctest.h>

#include "causalst/graph.hpp"

using namespace causalst;

namespace {

CausalStructure chain_abc() {
  return CausalStructure({{"A"}, {"B"}, {"C"}}, {{"A", "B"}, {"B", "C"}});
}

// Relay graph: settings feed the relay, a hidden source feeds both outputs,
// and the relay feeds the second output.
CausalStructure relay_graph() {
  return CausalStructure({{"A", NodeRole::observed},
                          {"C", NodeRole::observed},
                          {"B", NodeRole::observed},
                          {"X", NodeRole::observed},
                          {"Z", NodeRole::observed},
                          {"L", NodeRole::unobserved}},
                         {{"A", "B"}, {"C", "B"}, {"L", "X"}, {"L", "Z"}, {"B", "Z"}});
}

}  // namespace

TEST_CASE("parents and children follow the edge list") {
  const auto g = chain_abc();
  const auto as_set = [](std::span<const NodeId> s) { return NodeSet(s.begin(), s.end()); };
  CHECK(as_set(g.parents(g.node("B"))) == NodeSet{g.node("A")});
  CHECK(g.parents(g.node("A")).empty());
  CHECK(as_set(g.children(g.node("B"))) == NodeSet{g.node("C")});

  const auto relay = relay_graph();
  CHECK(as_set(relay.parents(relay.node("B"))) ==
        relay.node_set(std::vector<std::string>{"A", "C"}));
}

TEST_CASE("descendants are the transitive closure, excluding the node") {
  const auto g = chain_abc();
  CHECK(g.descendants(g.node("A")) == g.node_set(std::vector<std::string>{"B", "C"}));
  CHECK(g.descendants(g.node("C")).empty());

  const auto relay = relay_graph();
  CHECK(relay.descendants(relay.node("A")) == relay.node_set(std::vector<std::string>{"B", "Z"}));
  CHECK(relay.ancestors(relay.node("Z")) ==
        relay.node_set(std::vector<std::string>{"A", "B", "C", "L"}));
}

TEST_CASE("construction validates names, edges and acyclicity") {
  CHECK_THROWS_AS(CausalStructure({{"A"}, {"A"}}, {}), InvariantError);
  CHECK_THROWS_AS(CausalStructure({{"A"}}, {{"A", "A"}}), InvariantError);
  CHECK_THROWS_AS(CausalStructure({{"A"}, {"B"}}, {{"A", "B"}, {"A", "B"}}), InvariantError);
  CHECK_THROWS_AS(CausalStructure({{"A"}, {"B"}}, {{"A", "B"}, {"B", "A"}}), InvariantError);
  CHECK_THROWS_AS(CausalStructure({{"A"}}, {{"A", "Q"}}), UnknownNodeError);
  CHECK_THROWS_AS(chain_abc().node("Q"), UnknownNodeError);
}

TEST_CASE("topological order puts parents first") {
  const auto g = relay_graph();
  const auto topo = g.topological_order();
  std::vector<std::size_t> position(g.node_count());
  for (std::size_t i = 0; i < topo.size(); ++i) position[topo[i].value] = i;
  for (const Edge& e : g.edges()) CHECK(position[e.from.value] < position[e.to.value]);
}

TEST_CASE("node set helpers") {
  const auto g = relay_graph();
  const NodeSet ac = g.node_set(std::vector<std::string>{"C", "A"});
  CHECK(ac.size() == 2);
  CHECK(ac[0] < ac[1]);
  CHECK(set_contains(ac, g.node("A")));
  CHECK(!set_contains(ac, g.node("B")));
  CHECK(sets_disjoint(ac, {g.node("B")}));
  CHECK(set_union(ac, {g.node("B")}).size() == 3);
  CHECK(set_difference(ac, {g.node("A")}) == NodeSet{g.node("C")});
  CHECK(g.observed_nodes().size() == 5);
}
