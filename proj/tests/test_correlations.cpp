#include <doctest.h>

#include "causalst/correlations.hpp"
#include "causalst/dseparation.hpp"
#include "causalst/intervention.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace causalst;
using namespace causalst::testing;

namespace {

BellNodes relay_bell_nodes(const ClassicalCausalModel& m) {
  const auto& g = m.structure();
  return {g.node("A"), g.node("C"), g.node("X"), g.node("Z")};
}

}  // namespace

TEST_CASE("relay model produces the PR box under intervention") {
  const auto m = relay_model();
  const auto b = behavior_from_model(m, relay_bell_nodes(m), BehaviorMode::do_intervention);
  CHECK(b == BellBehavior::pr_box());
}

TEST_CASE("do-mode and observe-mode agree when the settings are parentless") {
  const auto m = relay_model();
  const auto nodes = relay_bell_nodes(m);
  CHECK(behavior_from_model(m, nodes, BehaviorMode::do_intervention) ==
        behavior_from_model(m, nodes, BehaviorMode::observe_uniform));
}

TEST_CASE("independent coins give the all-uniform behaviour") {
  const CausalStructure g({{"A"}, {"C"}, {"X"}, {"Z"}}, {});
  const auto m = ModelBuilder(g).build();
  const auto b = behavior_from_model(m, {g.node("A"), g.node("C"), g.node("X"), g.node("Z")},
                                     BehaviorMode::do_intervention);
  for (const Rational& cell : b.cells()) CHECK(cell == Rational(1, 4));
  CHECK(chsh_value(b) == 0);
}

TEST_CASE("behaviour nodes must be observed and binary") {
  const CausalStructure g({{"A"}, {"C"}, {"X"}, {"Z", NodeRole::unobserved}}, {});
  auto builder = ModelBuilder(g);
  builder.alphabet("X", 3);
  const auto m = builder.build();
  CHECK_THROWS_AS(behavior_from_model(m, {g.node("A"), g.node("C"), g.node("X"), g.node("Z")},
                                      BehaviorMode::do_intervention),
                  QueryError);
}

TEST_CASE("CHSH values of the landmark behaviours") {
  CHECK(chsh_value(BellBehavior::pr_box()) == 4);

  LocalModelWitness deterministic_zero;
  deterministic_zero.weights.fill(Rational(0));
  deterministic_zero.weights[0] = 1;  // x = 0, z = 0
  CHECK(chsh_value(behavior_of_witness(deterministic_zero)) == 2);
}

TEST_CASE("CHSH over the no-signalling extreme points") {
  const auto vertices = no_signalling_extreme_points();
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const Rational s = chsh_value(vertices[v]);
    CHECK(s <= 4);
    if (v < 16)
      CHECK(s == 2);  // deterministic local points sit on the facets
    else
      CHECK(s == 4);  // parity boxes
  }
}

TEST_CASE("random no-signalling behaviours stay within the CHSH bound") {
  TestRng rng(60221023);
  for (int trial = 0; trial < 300; ++trial) {
    const auto b = random_no_signalling_behavior(rng);
    CHECK(b.no_signalling());
    CHECK(chsh_value(b) <= 4);
  }
}

TEST_CASE("locality verdicts on landmark behaviours") {
  const auto pr = is_local(BellBehavior::pr_box());
  CHECK(pr.no_signalling);
  CHECK(!pr.local);
  CHECK(!pr.witness.has_value());

  LocalModelWitness point;
  point.weights.fill(Rational(0));
  point.weights[6] = 1;  // x = a, z = c
  const auto deterministic = is_local(behavior_of_witness(point));
  CHECK(deterministic.local);
  REQUIRE(deterministic.witness.has_value());
  CHECK(behavior_of_witness(*deterministic.witness) == behavior_of_witness(point));

  std::array<Rational, 16> uniform_cells;
  uniform_cells.fill(Rational(1, 4));
  const auto uniform = is_local(BellBehavior::from_table(std::move(uniform_cells)));
  CHECK(uniform.local);
  REQUIRE(uniform.witness.has_value());
  Rational weight_mass = 0;
  for (const auto& w : uniform.witness->weights) {
    CHECK(w >= 0);
    weight_mass += w;
  }
  CHECK(weight_mass == 1);
}

TEST_CASE("facet decision matches exact feasibility on random behaviours") {
  TestRng rng(271828);
  for (int trial = 0; trial < 120; ++trial) {
    const auto b = random_no_signalling_behavior(rng);
    const bool by_facets = chsh_value(b) <= 2;
    const auto decomposition = local_decomposition(b);
    CHECK(by_facets == decomposition.has_value());
    if (decomposition) CHECK(behavior_of_witness(*decomposition) == b);
  }
}

TEST_CASE("signalling behaviours are flagged, not rejected") {
  // Alice's outcome copies Charlie's setting: maximally signalling.
  std::array<Rational, 16> cells;
  cells.fill(Rational(0));
  for (unsigned a = 0; a < 2; ++a)
    for (unsigned c = 0; c < 2; ++c) cells[BellBehavior::index(c, 0, a, c)] = 1;
  const auto b = BellBehavior::from_table(std::move(cells));
  CHECK(!b.no_signalling());
  const auto verdict = is_local(b);
  CHECK(!verdict.no_signalling);
  CHECK(!verdict.local);
}

TEST_CASE("jamming conditions hold for the relay model") {
  const auto m = relay_model();
  const auto& g = m.structure();
  const auto verdict = jamming_conditions(m, g.node("B"), g.node("X"), g.node("Z"));
  CHECK(verdict.joint_dependence);
  CHECK(verdict.x_marginal_invariant);
  CHECK(verdict.z_marginal_invariant);
  CHECK(verdict.is_jamming);
  CHECK(verdict.skipped_b_values.empty());
}

TEST_CASE("an isolated relay bit jams nothing") {
  const CausalStructure g({{"B"}, {"X"}, {"Z"}, {"L", NodeRole::unobserved}},
                          {{"L", "X"}, {"L", "Z"}});
  const auto m = ModelBuilder(g)
                     .mechanism("X", MechanismPrimitive::identity)
                     .mechanism("Z", MechanismPrimitive::identity)
                     .build();
  const auto verdict = jamming_conditions(m, g.node("B"), g.node("X"), g.node("Z"));
  CHECK(!verdict.joint_dependence);
  CHECK(verdict.x_marginal_invariant);
  CHECK(verdict.z_marginal_invariant);
  CHECK(!verdict.is_jamming);
}

TEST_CASE("a pinned hidden source breaks only the Z marginal condition") {
  const auto m = relay_model({Rational(1), Rational(0)});
  const auto& g = m.structure();
  const auto verdict = jamming_conditions(m, g.node("B"), g.node("X"), g.node("Z"));
  CHECK(verdict.joint_dependence);
  CHECK(verdict.x_marginal_invariant);
  CHECK(!verdict.z_marginal_invariant);
  CHECK(!verdict.is_jamming);
}

TEST_CASE("surgical d-separation from the settings forces equal columns") {
  TestRng rng(112358);
  int exercised = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const auto g = random_dag(rng, 5, 40, 100);
    const NodeSet settings{NodeId{0}, NodeId{1}};
    const NodeSet outcomes{NodeId{2}, NodeId{3}};
    if (!d_separated(do_surgery(g, settings), outcomes, settings, {})) continue;
    const auto m = random_binary_model(rng, g);
    const auto b = behavior_from_model(m, {NodeId{0}, NodeId{1}, NodeId{2}, NodeId{3}},
                                       BehaviorMode::do_intervention);
    for (unsigned column = 1; column < 4; ++column)
      for (unsigned cell = 0; cell < 4; ++cell)
        CHECK(b.cells()[column * 4 + cell] == b.cells()[cell]);
    ++exercised;
  }
  CHECK(exercised >= 15);
}
