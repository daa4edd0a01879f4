#include <doctest.h>

#include <algorithm>

#include "causalst/dseparation.hpp"
#include "causalst/intervention.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace causalst;
using namespace causalst::testing;

namespace {

NodeSet ns(const CausalStructure& g, std::initializer_list<const char*> names) {
  NodeSet out;
  for (const char* n : names) out.push_back(g.node(n));
  return normalized_node_set(std::move(out));
}

bool relation_in(const std::vector<AffectsRelation>& relations,
                 std::vector<std::string> source, std::vector<std::string> target,
                 std::vector<std::string> do_set = {}) {
  std::sort(source.begin(), source.end());
  std::sort(target.begin(), target.end());
  std::sort(do_set.begin(), do_set.end());
  return std::any_of(relations.begin(), relations.end(), [&](const AffectsRelation& r) {
    return r.source == source && r.target == target && r.do_set == do_set;
  });
}

}  // namespace

TEST_CASE("surgery removes exactly the incoming edges of the targets") {
  const CausalStructure chain({{"A"}, {"B"}, {"C"}}, {{"A", "B"}, {"B", "C"}});
  const auto cut = do_surgery(chain, ns(chain, {"B"}));
  CHECK(cut.edges().size() == 1);
  CHECK(cut.has_edge(cut.node("B"), cut.node("C")));

  const auto same = do_surgery(chain, {});
  CHECK(same == chain);

  const auto g = relay_graph();
  const auto after = do_surgery(g, ns(g, {"B"}));
  CHECK(after.edges().size() == 3);
  CHECK(after.has_edge(after.node("L"), after.node("X")));
  CHECK(after.has_edge(after.node("L"), after.node("Z")));
  CHECK(after.has_edge(after.node("B"), after.node("Z")));

  CHECK(do_surgery(after, ns(g, {"B"})) == after);  // idempotent
  CHECK_THROWS_AS(do_surgery(g, ns(g, {"L"})), QueryError);
}

TEST_CASE("forcing the relay bit pins the output parity") {
  const auto m = relay_model();
  const auto& g = m.structure();
  const Intervention do_b1{{{g.node("B"), 1}}};
  const auto d = post_intervention_distribution(m, do_b1, ns(g, {"X", "Z"}));
  const std::size_t pos_x = d.position_of(g.node("X"));
  const std::size_t pos_z = d.position_of(g.node("Z"));
  for (std::size_t i = 0; i < d.table_size(); ++i) {
    const auto values = d.unrank(i);
    CHECK(d.at(i) == (((values[pos_x] ^ values[pos_z]) == 1) ? Rational(1, 2) : Rational(0)));
  }

  const auto dx = post_intervention_distribution(m, do_b1, ns(g, {"X"}));
  CHECK(dx.at(0) == Rational(1, 2));
  CHECK(dx.at(1) == Rational(1, 2));
}

TEST_CASE("intervening on a parentless node matches conditioning on it") {
  const auto m = relay_model();
  const auto& g = m.structure();
  const Intervention do_a1{{{g.node("A"), 1}}};
  const auto via_do =
      post_intervention_distribution(m, do_a1, ns(g, {"B", "X", "Z"}));
  const auto joint = joint_distribution(m, ns(g, {"A", "B", "X", "Z"}));
  const auto via_cond = joint.conditional(ns(g, {"B", "X", "Z"}), {{g.node("A"), 1}});
  CHECK(via_do.same_distribution(via_cond));
}

TEST_CASE("affects relations of the relay model") {
  const auto m = relay_model();
  const auto& g = m.structure();

  CHECK(affects(m, ns(g, {"A"}), ns(g, {"B"})).holds);
  CHECK(affects(m, ns(g, {"C"}), ns(g, {"B"})).holds);
  CHECK(affects(m, ns(g, {"B"}), ns(g, {"X", "Z"})).holds);
  CHECK(!affects(m, ns(g, {"B"}), ns(g, {"X"})).holds);
  CHECK(!affects(m, ns(g, {"B"}), ns(g, {"Z"})).holds);
  CHECK(affects(m, ns(g, {"A"}), ns(g, {"X", "Z"}), ns(g, {"C"})).holds);
  CHECK(affects(m, ns(g, {"A"}), ns(g, {"B"}), ns(g, {"X"})).holds);
}

TEST_CASE("affects witnesses record the first differing values") {
  const auto m = relay_model();
  const auto& g = m.structure();
  const auto r = affects(m, ns(g, {"A"}), ns(g, {"B"}), ns(g, {"C"}));
  REQUIRE(r.holds);
  REQUIRE(r.witness.has_value());
  // B = A.C: with do(C=0) the relay is stuck at 0 whatever A does, so the
  // first witness in lexicographic (a, c) order is a=0, c=1.
  CHECK(r.witness->source_values == std::vector<std::uint32_t>{0});
  CHECK(r.witness->do_values == std::vector<std::uint32_t>{1});
  CHECK(!r.witness->intervened.same_distribution(r.witness->baseline));
}

TEST_CASE("fixing the do-set values restricts the search") {
  const auto m = relay_model();
  const auto& g = m.structure();
  // Under do(C=0), no choice of A moves B.
  CHECK(!affects(m, ns(g, {"A"}), ns(g, {"B"}), ns(g, {"C"}),
                 std::vector<std::uint32_t>{0})
             .holds);
  CHECK(affects(m, ns(g, {"A"}), ns(g, {"B"}), ns(g, {"C"}), std::vector<std::uint32_t>{1})
            .holds);
}

TEST_CASE("irreducibility") {
  const auto m = relay_model();
  const auto& g = m.structure();

  auto singleton = affects(m, ns(g, {"A"}), ns(g, {"B"}));
  CHECK(is_irreducible(m, singleton));

  auto pair = affects(m, ns(g, {"A", "C"}), ns(g, {"X", "Z"}));
  REQUIRE(pair.holds);
  CHECK(is_irreducible(m, pair));

  // A relay-and-bystander source reduces: the bystander adds nothing.
  auto padded = affects(m, ns(g, {"A", "X"}), ns(g, {"B"}));
  REQUIRE(padded.holds);
  CHECK(!is_irreducible(m, padded));

  auto not_holding = affects(m, ns(g, {"B"}), ns(g, {"X"}));
  CHECK_THROWS_AS(is_irreducible(m, not_holding), QueryError);
}

TEST_CASE("enumerate_affects matches the relay inventory") {
  const auto m = relay_model();
  const auto relations = enumerate_affects(m, AffectsCaps{2, 2, 2});

  CHECK(relation_in(relations, {"A"}, {"B"}));
  CHECK(relation_in(relations, {"C"}, {"B"}));
  CHECK(relation_in(relations, {"B"}, {"X", "Z"}));
  CHECK(relation_in(relations, {"A", "C"}, {"X", "Z"}));
  CHECK(relation_in(relations, {"A"}, {"B"}, {"X"}));
  CHECK(!relation_in(relations, {"B"}, {"X"}));
  CHECK(!relation_in(relations, {"B"}, {"Z"}));

  for (const auto& r : relations) {
    CHECK(r.holds);
    CHECK(r.irreducible.has_value());
  }
}

TEST_CASE("a model without observed-to-observed influence has no relations") {
  const CausalStructure g({{"N1"}, {"N2"}}, {});
  const auto relations = enumerate_affects(ModelBuilder(g).build());
  CHECK(relations.empty());
}

TEST_CASE("d-separation after surgery rules out affects") {
  TestRng rng(31337);
  int separated_cases = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = random_dag(rng, 5, 40);
    const auto m = random_binary_model(rng, g);
    const auto obs = g.observed_nodes();
    if (obs.size() < 2) continue;
    NodeSet x{obs[rng.below(obs.size())]};
    NodeSet y, z;
    for (const NodeId id : obs) {
      if (set_contains(x, id)) continue;
      switch (rng.below(3)) {
        case 0: y.push_back(id); break;
        case 1: z.push_back(id); break;
        default: break;
      }
    }
    if (y.empty()) continue;
    const auto surgered = do_surgery(g, set_union(x, z));
    if (d_separated(surgered, x, y, z)) {
      ++separated_cases;
      CHECK(!affects(m, x, y, z).holds);
    }
  }
  CHECK(separated_cases >= 10);
}

TEST_CASE("every reducible holding relation reduces to a proper subset") {
  TestRng rng(424242);
  int reducible_seen = 0;
  for (int trial = 0; trial < 25 && reducible_seen < 8; ++trial) {
    const auto g = random_dag(rng, 4, 50);
    const auto m = random_binary_model(rng, g);
    for (const auto& r : enumerate_affects(m, AffectsCaps{3, 2, 1})) {
      if (*r.irreducible) continue;
      ++reducible_seen;
      const auto& gg = m.structure();
      const NodeSet source = gg.node_set(r.source);
      const NodeSet target = gg.node_set(r.target);
      const NodeSet do_set = gg.node_set(r.do_set);
      bool some_subset_holds = false;
      for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << source.size()); ++mask) {
        NodeSet sub;
        for (std::size_t i = 0; i < source.size(); ++i)
          if ((mask >> i) & 1) sub.push_back(source[i]);
        if (affects(m, sub, target, do_set).holds) {
          some_subset_holds = true;
          break;
        }
      }
      CHECK(some_subset_holds);
    }
  }
  CHECK(reducible_seen > 0);
}
