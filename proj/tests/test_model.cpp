#include <doctest.h>

#include "causalst/model.hpp"
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

}  // namespace

TEST_CASE("relay model: hidden coin makes the X marginal uniform") {
  const auto m = relay_model();
  const auto& g = m.structure();
  const auto d = joint_distribution(m, ns(g, {"X"}));
  CHECK(d.at(0) == Rational(1, 2));
  CHECK(d.at(1) == Rational(1, 2));
}

TEST_CASE("point-mass source gives a point-mass joint") {
  const CausalStructure g({{"N"}}, {});
  const auto m = ModelBuilder(g).exogenous("N", {Rational(1), Rational(0)}).build();
  const auto d = joint_distribution(m, ns(g, {"N"}));
  CHECK(d.at(0) == 1);
  CHECK(d.at(1) == 0);
}

TEST_CASE("relay model: output parity equals the relay bit") {
  const auto m = relay_model();
  const auto& g = m.structure();
  const auto d = joint_distribution(m, ns(g, {"X", "Z"}));

  // Independent check: walk the eight (L, A, C) combinations by hand.
  int parity_one = 0;
  for (int l = 0; l < 2; ++l)
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c) {
        const int x = l, z = l ^ (a & c);
        if ((x ^ z) == 1) ++parity_one;
      }
  CHECK(parity_one == 2);  // of 8 equally likely combinations

  const std::size_t pos_x = d.position_of(g.node("X"));
  const std::size_t pos_z = d.position_of(g.node("Z"));
  Rational p_parity_one = 0;
  for (std::size_t i = 0; i < d.table_size(); ++i) {
    const auto values = d.unrank(i);
    if ((values[pos_x] ^ values[pos_z]) == 1) p_parity_one += d.at(i);
  }
  CHECK(p_parity_one == Rational(1, 4));
}

TEST_CASE("conditionals on the relay bit") {
  const auto m = relay_model();
  const auto& g = m.structure();
  const auto d = joint_distribution(m, ns(g, {"B", "X", "Z"}));
  const Assignment b1{{g.node("B"), 1}};

  const auto xz_given_b1 = d.conditional(ns(g, {"X", "Z"}), b1);
  const std::size_t pos_x = xz_given_b1.position_of(g.node("X"));
  const std::size_t pos_z = xz_given_b1.position_of(g.node("Z"));
  for (std::size_t i = 0; i < xz_given_b1.table_size(); ++i) {
    const auto values = xz_given_b1.unrank(i);
    if ((values[pos_x] ^ values[pos_z]) == 1)
      CHECK(xz_given_b1.at(i) == Rational(1, 2));
    else
      CHECK(xz_given_b1.at(i) == 0);
  }

  const auto x_given_b1 = d.conditional(ns(g, {"X"}), b1);
  CHECK(x_given_b1.at(0) == Rational(1, 2));
  CHECK(x_given_b1.at(1) == Rational(1, 2));
}

TEST_CASE("conditioning on the full certain event is the identity") {
  const CausalStructure g({{"N"}, {"M"}}, {});
  const auto m = ModelBuilder(g).exogenous("N", {Rational(1, 3), Rational(2, 3)}).build();
  const auto d = joint_distribution(m, ns(g, {"N", "M"}));
  const auto cond = d.conditional(ns(g, {"N"}), {});
  CHECK(cond.same_distribution(d.marginal(ns(g, {"N"}))));
}

TEST_CASE("zero-probability conditioning is an error") {
  const CausalStructure g({{"N"}}, {});
  const auto m = ModelBuilder(g).exogenous("N", {Rational(1), Rational(0)}).build();
  const auto d = joint_distribution(m, ns(g, {"N"}));
  CHECK_THROWS_AS(d.conditional({}, Assignment{{g.node("N"), 1}}), ZeroProbabilityError);
}

TEST_CASE("joint mass is exactly 1 and marginalization commutes") {
  TestRng rng(5150);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_dag(rng, 5, 40);
    const auto m = random_binary_model(rng, g);
    const auto d = joint_distribution(m, g.all_nodes());
    Rational mass = 0;
    for (std::size_t i = 0; i < d.table_size(); ++i) mass += d.at(i);
    CHECK(mass == 1);

    NodeSet big, small;
    for (std::uint32_t i = 0; i < g.node_count(); ++i) {
      if (rng.below(3) != 0) big.push_back(NodeId{i});
    }
    for (const NodeId id : big)
      if (rng.coin()) small.push_back(id);
    if (small.empty() && !big.empty()) small.push_back(big.front());
    if (big.empty()) continue;
    CHECK(d.marginal(big).marginal(small).same_distribution(d.marginal(small)));
    CHECK(joint_distribution(m, small).same_distribution(d.marginal(small)));
  }
}

TEST_CASE("model validation rejects ill-formed pieces") {
  const auto g = relay_graph();
  // Mechanism on the wrong parent set.
  CHECK_THROWS_AS(ModelBuilder(g)
                      .mechanism_table("B", std::vector<std::string>{"A"}, {0, 1})
                      .mechanism("X", MechanismPrimitive::identity)
                      .mechanism("Z", MechanismPrimitive::exclusive_or)
                      .build(),
                  InvariantError);
  // Non-total table.
  CHECK_THROWS_AS(ModelBuilder(g)
                      .mechanism_table("B", std::vector<std::string>{"A", "C"}, {0, 1})
                      .mechanism("X", MechanismPrimitive::identity)
                      .mechanism("Z", MechanismPrimitive::exclusive_or)
                      .build(),
                  InvariantError);
  // Exogenous pmf off mass.
  CHECK_THROWS_AS(ModelBuilder(g)
                      .mechanism("B", MechanismPrimitive::conjunction)
                      .mechanism("X", MechanismPrimitive::identity)
                      .mechanism("Z", MechanismPrimitive::exclusive_or)
                      .exogenous("A", {Rational(1, 2), Rational(1, 3)})
                      .build(),
                  InvariantError);
  // Missing mechanism for a node with parents.
  CHECK_THROWS_AS(ModelBuilder(g)
                      .mechanism("X", MechanismPrimitive::identity)
                      .mechanism("Z", MechanismPrimitive::exclusive_or)
                      .build(),
                  InvariantError);
}

TEST_CASE("enumeration bound is enforced") {
  const auto m = relay_model();
  EnumerationLimits limits;
  limits.max_states = 4;  // three binary sources need 8
  CHECK_THROWS_AS(joint_distribution(m, m.structure().observed_nodes(), limits),
                  BoundExceededError);
}

TEST_CASE("d-separation property holds for the relay model") {
  const auto report = verify_dsep_property(relay_model());
  CHECK(report.passed);
  CHECK(report.separations_checked > 0);
}

TEST_CASE("d-separation property holds for two independent coins") {
  const CausalStructure g({{"N1"}, {"N2"}}, {});
  const auto report = verify_dsep_property(ModelBuilder(g).build());
  CHECK(report.passed);
  const auto d = joint_distribution(ModelBuilder(g).build(), g.all_nodes());
  for (std::size_t i = 0; i < 4; ++i) CHECK(d.at(i) == Rational(1, 4));
}

TEST_CASE("distribution that ignores the graph fails the property check") {
  // X copies Z, but the declared graph has no edge between them.
  const CausalStructure wired({{"Z"}, {"X"}}, {{"Z", "X"}});
  const auto copying = ModelBuilder(wired)
                           .mechanism("X", MechanismPrimitive::identity)
                           .build();
  const auto d = joint_distribution(copying, wired.all_nodes());

  const CausalStructure edgeless({{"Z"}, {"X"}}, {});
  const auto report = verify_dsep_property(edgeless, d);
  CHECK(!report.passed);
  REQUIRE(report.counterexample.has_value());
  CHECK(report.counterexample->z.empty());
}

TEST_CASE("d-separation property holds on random models") {
  TestRng rng(99123);
  for (int trial = 0; trial < 12; ++trial) {
    const auto g = random_dag(rng, 5, 45, 70);
    const auto m = random_binary_model(rng, g);
    CHECK(verify_dsep_property(m).passed);
  }
}
