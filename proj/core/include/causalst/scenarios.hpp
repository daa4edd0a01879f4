#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causalst/correlations.hpp"
#include "causalst/intervention.hpp"
#include "causalst/model.hpp"
#include "causalst/spacetime.hpp"

namespace causalst {

/// Names of the designated setting/outcome nodes (plus the relay node and
/// the latent sources, when the scenario has them).
struct DesignatedRoles {
  std::string a = "A";
  std::string c = "C";
  std::string x = "X";
  std::string z = "Z";
  std::optional<std::string> b;
  std::vector<std::string> latents;
};

/// A ready-to-run scenario: model, named embeddings and role designations.
struct ScenarioSpec {
  std::string name;
  ClassicalCausalModel model;
  std::map<std::string, Embedding> embeddings;
  DesignatedRoles roles;
  std::optional<Rational> noise;
};

/// Built-in scenarios:
///   jamming-pr         relay sets B = A.C and jams the outputs into
///                      X xor Z = B; produces the PR box exactly
///   jamming-noisy(p)   same with a noise bit flipping the parity with
///                      probability p (default 1/8); "jamming-noisy(p/q)"
///                      sets p
///   jamming-symmetric  relay influences both outputs symmetrically;
///                      still the PR box
///   nlhv               no relay: a hidden source plus a direct
///                      setting-to-outcome influence, same behaviour
/// Each comes with canonical "task1" and "task2" Minkowski embeddings whose
/// defining constraints are re-verified at construction.
ScenarioSpec builtin_scenario(std::string_view name_spec);
ScenarioSpec builtin_scenario(std::string_view base_name, const std::optional<Rational>& noise);
std::vector<std::string> builtin_scenario_names();

/// The designated nodes as a BellNodes bundle for behaviour computations.
BellNodes bell_nodes(const ScenarioSpec& spec);

/// Every holding affects relation of the scenario's model, annotated with
/// irreducibility; set sizes are uncapped (the built-in scenarios have at
/// most five observed nodes).
std::vector<AffectsRelation> scenario_affects_relations(const ScenarioSpec& spec,
                                                        const EnumerationLimits& limits = {});

/// Checks the canonical task-1 layout: inputs precede their own outputs,
/// every other pair of the four is spacelike; relay (if located) in the
/// causal future of both inputs with the outputs' joint future inside its
/// own; latents (if located) weakly precede every located node.
void verify_task1_embedding(const Embedding& e, const DesignatedRoles& roles);

/// Checks the canonical task-2 layout: the four designated nodes pairwise
/// spacelike and the outputs' joint future contained in the inputs' joint
/// future; relay and latents as in task 1.
void verify_task2_embedding(const Embedding& e, const DesignatedRoles& roles);

/// How a timing figure is set up: both outputs produced at their own
/// input's location, or outputs slid down light rays by `slide_amount`.
struct TimingConfig {
  enum class Kind { colocated_outputs, slide };
  Kind kind = Kind::colocated_outputs;
  Rational slide_amount = 0;
};

struct TimingReport {
  Rational t_nsc;
  Rational t_jam;
  std::string frame_note;
};

/// Minimum correlation-establishment times for stationary parties at
/// spatial positions xa < xc with signal speed cap `c`. Colocated outputs:
/// t_nsc = (xc-xa)/c and t_jam = t_nsc/2 (relay halfway, zero processing
/// delay). Slide(s): outputs occur at base-frame time -s, unbounded below,
/// while t_nsc keeps the colocated lower bound. The witnessing embedding is
/// constructed and its constraints re-verified on every call.
TimingReport timing(const Rational& xa, const Rational& xc, const Rational& c,
                    const TimingConfig& config = {});

/// Moves the left output down its constant-u light ray and the right output
/// down its constant-v light ray by `s`, leaving their joint future
/// untouched. The base must be a Minkowski task-2 embedding; the result is
/// re-verified against the task-2 constraints and the joint-future apex is
/// checked invariant.
Embedding slide_outputs(const Embedding& base, const DesignatedRoles& roles, const Rational& s);

}  // namespace causalst
