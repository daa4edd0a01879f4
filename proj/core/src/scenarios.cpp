#include "causalst/scenarios.hpp"

#include <algorithm>

namespace causalst {

namespace {

// Canonical coordinates (c = 1): smallest integers satisfying every task
// constraint; all constraints are re-verified below, so the specific
// numbers carry no hidden assumptions.
const MinkowskiPoint kA{0, 0};
const MinkowskiPoint kC{0, 4};
const MinkowskiPoint kB{2, 2};
const MinkowskiPoint kLatent{-5, 2};
const MinkowskiPoint kTask1X{1, 0};
const MinkowskiPoint kTask1Z{1, 4};
const MinkowskiPoint kTask2X{0, -1};
const MinkowskiPoint kTask2Z{0, 5};

void verify_common(const Embedding& e, const DesignatedRoles& roles) {
  if (roles.b && e.located(*roles.b)) {
    if (!at_or_before(e.compare(roles.a, *roles.b)) ||
        !at_or_before(e.compare(roles.c, *roles.b)))
      throw InvariantError("relay node is not in the causal future of both inputs");
    const std::vector<std::string> outputs{roles.x, roles.z};
    if (!region_contains(future_of(e, *roles.b), joint_future(e, outputs)))
      throw InvariantError("outputs' joint future escapes the relay's future");
  }
  for (const auto& latent : roles.latents) {
    if (!e.located(latent)) continue;
    for (const std::string* other :
         {&roles.a, &roles.c, &roles.x, &roles.z}) {
      if (!at_or_before(e.compare(latent, *other)))
        throw InvariantError("latent node is not in the joint past of the designated nodes");
    }
    if (roles.b && e.located(*roles.b) && !at_or_before(e.compare(latent, *roles.b)))
      throw InvariantError("latent node is not in the past of the relay");
  }
}

Embedding make_embedding(int task, const DesignatedRoles& roles) {
  std::map<std::string, MinkowskiPoint> loc;
  loc[roles.a] = kA;
  loc[roles.c] = kC;
  loc[roles.x] = task == 1 ? kTask1X : kTask2X;
  loc[roles.z] = task == 1 ? kTask1Z : kTask2Z;
  if (roles.b) loc[*roles.b] = kB;
  for (const auto& latent : roles.latents) loc[latent] = kLatent;
  Embedding e = Embedding::minkowski(std::move(loc));
  if (task == 1)
    verify_task1_embedding(e, roles);
  else
    verify_task2_embedding(e, roles);
  return e;
}

ScenarioSpec finish(std::string name, ClassicalCausalModel model, DesignatedRoles roles,
                    std::optional<Rational> noise) {
  ScenarioSpec spec{std::move(name), std::move(model), {}, std::move(roles), std::move(noise)};
  spec.embeddings.emplace("task1", make_embedding(1, spec.roles));
  spec.embeddings.emplace("task2", make_embedding(2, spec.roles));
  return spec;
}

ClassicalCausalModel jamming_pr_model() {
  CausalStructure g({{"A", NodeRole::observed},
                     {"C", NodeRole::observed},
                     {"B", NodeRole::observed},
                     {"X", NodeRole::observed},
                     {"Z", NodeRole::observed},
                     {"L", NodeRole::unobserved}},
                    {{"A", "B"}, {"C", "B"}, {"L", "X"}, {"L", "Z"}, {"B", "Z"}});
  return ModelBuilder(std::move(g))
      .mechanism("B", MechanismPrimitive::conjunction)
      .mechanism("X", MechanismPrimitive::identity)
      .mechanism("Z", MechanismPrimitive::exclusive_or)
      .exogenous("A", {Rational(1, 2), Rational(1, 2)})
      .exogenous("C", {Rational(1, 2), Rational(1, 2)})
      .exogenous("L", {Rational(1, 2), Rational(1, 2)})
      .build();
}

ClassicalCausalModel jamming_noisy_model(const Rational& p) {
  if (p < 0 || p > 1) throw QueryError("noise parameter must lie in [0, 1]");
  CausalStructure g({{"A", NodeRole::observed},
                     {"C", NodeRole::observed},
                     {"B", NodeRole::observed},
                     {"X", NodeRole::observed},
                     {"Z", NodeRole::observed},
                     {"E", NodeRole::unobserved},
                     {"F", NodeRole::unobserved}},
                    {{"A", "B"}, {"C", "B"}, {"E", "X"}, {"E", "Z"}, {"F", "Z"}, {"B", "Z"}});
  return ModelBuilder(std::move(g))
      .mechanism("B", MechanismPrimitive::conjunction)
      .mechanism("X", MechanismPrimitive::identity)
      .mechanism("Z", MechanismPrimitive::exclusive_or)
      .exogenous("A", {Rational(1, 2), Rational(1, 2)})
      .exogenous("C", {Rational(1, 2), Rational(1, 2)})
      .exogenous("E", {Rational(1, 2), Rational(1, 2)})
      .exogenous("F", {1 - p, p})
      .build();
}

ClassicalCausalModel jamming_symmetric_model() {
  CausalStructure g({{"A", NodeRole::observed},
                     {"C", NodeRole::observed},
                     {"B", NodeRole::observed},
                     {"X", NodeRole::observed},
                     {"Z", NodeRole::observed},
                     {"E", NodeRole::unobserved},
                     {"F", NodeRole::unobserved},
                     {"G", NodeRole::unobserved}},
                    {{"A", "B"},
                     {"C", "B"},
                     {"B", "X"},
                     {"E", "X"},
                     {"F", "X"},
                     {"G", "X"},
                     {"B", "Z"},
                     {"E", "Z"},
                     {"F", "Z"},
                     {"G", "Z"}});
  // Parent order (B, E, F, G); the relay flips exactly one output, the
  // symmetrising bit G deciding which.
  const std::vector<std::string> parents{"B", "E", "F", "G"};
  std::vector<std::uint32_t> x_table(16), z_table(16);
  for (std::uint32_t row = 0; row < 16; ++row) {
    const std::uint32_t b = (row >> 3) & 1, e = (row >> 2) & 1, f = (row >> 1) & 1, gg = row & 1;
    x_table[row] = e ^ ((gg ^ 1) & (f ^ b));
    z_table[row] = e ^ (gg & (f ^ b));
  }
  return ModelBuilder(std::move(g))
      .mechanism("B", MechanismPrimitive::conjunction)
      .mechanism_table("X", parents, std::move(x_table))
      .mechanism_table("Z", parents, std::move(z_table))
      .exogenous("A", {Rational(1, 2), Rational(1, 2)})
      .exogenous("C", {Rational(1, 2), Rational(1, 2)})
      .exogenous("E", {Rational(1, 2), Rational(1, 2)})
      .exogenous("F", {Rational(1), Rational(0)})
      .exogenous("G", {Rational(1, 2), Rational(1, 2)})
      .build();
}

ClassicalCausalModel nlhv_model() {
  CausalStructure g({{"A", NodeRole::observed},
                     {"C", NodeRole::observed},
                     {"X", NodeRole::observed},
                     {"Z", NodeRole::observed},
                     {"L", NodeRole::unobserved}},
                    {{"A", "X"}, {"C", "X"}, {"L", "X"}, {"L", "Z"}});
  const std::vector<std::string> parents{"A", "C", "L"};
  std::vector<std::uint32_t> x_table(8);
  for (std::uint32_t row = 0; row < 8; ++row) {
    const std::uint32_t a = (row >> 2) & 1, c = (row >> 1) & 1, l = row & 1;
    x_table[row] = l ^ (a & c);
  }
  return ModelBuilder(std::move(g))
      .mechanism_table("X", parents, std::move(x_table))
      .mechanism("Z", MechanismPrimitive::identity)
      .exogenous("A", {Rational(1, 2), Rational(1, 2)})
      .exogenous("C", {Rational(1, 2), Rational(1, 2)})
      .exogenous("L", {Rational(1, 2), Rational(1, 2)})
      .build();
}

}  // namespace

void verify_task1_embedding(const Embedding& e, const DesignatedRoles& roles) {
  if (!at_or_before(e.compare(roles.a, roles.x)))
    throw InvariantError("task-1 embedding: input A must precede output X");
  if (!at_or_before(e.compare(roles.c, roles.z)))
    throw InvariantError("task-1 embedding: input C must precede output Z");
  const std::pair<const std::string*, const std::string*> spacelike_pairs[] = {
      {&roles.a, &roles.c}, {&roles.a, &roles.z}, {&roles.c, &roles.x}, {&roles.x, &roles.z}};
  for (const auto& [p, q] : spacelike_pairs) {
    if (e.compare(*p, *q) != Order::spacelike)
      throw InvariantError("task-1 embedding: '" + *p + "' and '" + *q +
                           "' must be spacelike separated");
  }
  verify_common(e, roles);
}

void verify_task2_embedding(const Embedding& e, const DesignatedRoles& roles) {
  const std::string* nodes[] = {&roles.a, &roles.c, &roles.x, &roles.z};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (e.compare(*nodes[i], *nodes[j]) != Order::spacelike)
        throw InvariantError("task-2 embedding: '" + *nodes[i] + "' and '" + *nodes[j] +
                             "' must be spacelike separated");
  const std::vector<std::string> outputs{roles.x, roles.z};
  const std::vector<std::string> inputs{roles.a, roles.c};
  if (!region_contains(joint_future(e, inputs), joint_future(e, outputs)))
    throw InvariantError(
        "task-2 embedding: outputs' joint future must lie inside the inputs' joint future");
  verify_common(e, roles);
}

ScenarioSpec builtin_scenario(std::string_view name_spec) {
  std::string base(name_spec);
  std::optional<Rational> noise;
  const auto open = base.find('(');
  if (open != std::string::npos) {
    if (base.back() != ')') throw QueryError("malformed scenario name '" + base + "'");
    noise = parse_rational(base.substr(open + 1, base.size() - open - 2));
    base = base.substr(0, open);
  }
  return builtin_scenario(base, noise);
}

ScenarioSpec builtin_scenario(std::string_view base_name, const std::optional<Rational>& noise) {
  if (noise && base_name != "jamming-noisy")
    throw QueryError("only jamming-noisy takes a noise parameter");
  if (base_name == "jamming-pr") {
    return finish("jamming-pr", jamming_pr_model(),
                  DesignatedRoles{"A", "C", "X", "Z", "B", {"L"}}, std::nullopt);
  }
  if (base_name == "jamming-noisy") {
    const Rational p = noise.value_or(Rational(1, 8));
    return finish("jamming-noisy", jamming_noisy_model(p),
                  DesignatedRoles{"A", "C", "X", "Z", "B", {"E", "F"}}, p);
  }
  if (base_name == "jamming-symmetric") {
    return finish("jamming-symmetric", jamming_symmetric_model(),
                  DesignatedRoles{"A", "C", "X", "Z", "B", {"E", "F", "G"}}, std::nullopt);
  }
  if (base_name == "nlhv") {
    return finish("nlhv", nlhv_model(), DesignatedRoles{"A", "C", "X", "Z", std::nullopt, {"L"}},
                  std::nullopt);
  }
  throw QueryError("unknown scenario '" + std::string(base_name) + "'");
}

std::vector<std::string> builtin_scenario_names() {
  return {"jamming-pr", "jamming-noisy", "jamming-symmetric", "nlhv"};
}

BellNodes bell_nodes(const ScenarioSpec& spec) {
  const CausalStructure& g = spec.model.structure();
  return BellNodes{g.node(spec.roles.a), g.node(spec.roles.c), g.node(spec.roles.x),
                   g.node(spec.roles.z)};
}

std::vector<AffectsRelation> scenario_affects_relations(const ScenarioSpec& spec,
                                                        const EnumerationLimits& limits) {
  const std::size_t n = spec.model.structure().observed_nodes().size();
  return enumerate_affects(spec.model, AffectsCaps{n, n, n}, limits);
}

TimingReport timing(const Rational& xa, const Rational& xc, const Rational& c,
                    const TimingConfig& config) {
  if (xa == xc) throw QueryError("degenerate geometry: the two parties coincide");
  if (xc < xa) throw QueryError("expected xa < xc");
  if (c <= 0) throw QueryError("signal speed must be positive");

  // Scale space by 1/c so light rays have unit slope.
  const Rational ax = xa / c;
  const Rational cx = xc / c;
  const Rational t_nsc = cx - ax;
  const Rational t_relay = t_nsc / 2;
  const MinkowskiPoint relay{t_relay, (ax + cx) / 2};

  TimingReport report;
  report.t_nsc = t_nsc;
  if (config.kind == TimingConfig::Kind::colocated_outputs) {
    DesignatedRoles roles{"A", "C", "X", "Z", "B", {}};
    Embedding e = Embedding::minkowski({{"A", MinkowskiPoint{0, ax}},
                                        {"C", MinkowskiPoint{0, cx}},
                                        {"X", MinkowskiPoint{t_relay, ax}},
                                        {"Z", MinkowskiPoint{t_relay, cx}},
                                        {"B", relay}});
    verify_task1_embedding(e, roles);
    report.t_jam = t_relay;
    report.frame_note =
        "common rest frame of the stationary parties; relay halfway, zero processing delay";
  } else {
    if (config.slide_amount < 0) throw QueryError("slide amount must be non-negative");
    DesignatedRoles roles{"A", "C", "X", "Z", "B", {}};
    const Embedding base = Embedding::minkowski({{"A", MinkowskiPoint{0, ax}},
                                                 {"C", MinkowskiPoint{0, cx}},
                                                 {"X", MinkowskiPoint{0, ax - 1}},
                                                 {"Z", MinkowskiPoint{0, cx + 1}},
                                                 {"B", relay}});
    const Embedding slid = slide_outputs(base, roles, config.slide_amount);
    report.t_jam = slid.point("X").t;
    report.frame_note =
        "base-frame output time; t_nsc keeps the colocated-outputs lower bound, which displaced "
        "outputs only increase";
  }
  return report;
}

Embedding slide_outputs(const Embedding& base, const DesignatedRoles& roles, const Rational& s) {
  if (base.kind() != SpaceKind::minkowski11)
    throw QueryError("output slides are defined for Minkowski embeddings");
  if (s < 0) throw QueryError("slide amount must be non-negative");
  verify_task2_embedding(base, roles);

  const MinkowskiPoint x0 = base.point(roles.x);
  const MinkowskiPoint z0 = base.point(roles.z);
  if (!(x0.x < z0.x))
    throw InvariantError("expected the X output left of the Z output");

  std::map<std::string, MinkowskiPoint> loc = base.minkowski_locations();
  loc[roles.x] = MinkowskiPoint{x0.t - s, x0.x - s};  // constant u
  loc[roles.z] = MinkowskiPoint{z0.t - s, z0.x + s};  // constant v
  Embedding slid = Embedding::minkowski(std::move(loc));

  const std::vector<std::string> outputs{roles.x, roles.z};
  const ConeRegion before = joint_future(base, outputs);
  const ConeRegion after = joint_future(slid, outputs);
  if (before.apex_u() != after.apex_u() || before.apex_v() != after.apex_v())
    throw InvariantError("slide changed the outputs' joint future");
  verify_task2_embedding(slid, roles);
  return slid;
}

}  // namespace causalst
