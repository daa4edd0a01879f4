#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causalst/model.hpp"

namespace causalst {

/// A do()-intervention: the targeted observed nodes and the values forced
/// on them. Values are checked against the model's alphabets at use.
struct Intervention {
  Assignment assignments;
};

/// Removes every edge into a node of `targets`; nodes, roles and all other
/// edges are untouched, and node ids remain stable. Targets must be
/// observed. Idempotent.
CausalStructure do_surgery(const CausalStructure& g, const NodeSet& targets);

/// The model after surgery: targeted nodes become point-mass exogenous at
/// their assigned values, everything else is untouched.
ClassicalCausalModel apply_intervention(const ClassicalCausalModel& m, const Intervention& iv);

/// Exact P_{G_do(targets)}(over | targets = values). Intervened nodes may
/// appear in `over` (they are then deterministic).
JointDistribution post_intervention_distribution(const ClassicalCausalModel& m,
                                                 const Intervention& iv, const NodeSet& over,
                                                 const EnumerationLimits& limits = {});

/// The pair of distributions exhibiting an affects relation: the target
/// distribution under do(source = source_values, do_set = do_values) next
/// to the baseline under do(do_set = do_values) alone.
struct AffectsWitness {
  std::vector<std::uint32_t> source_values;
  std::vector<std::uint32_t> do_values;
  JointDistribution intervened;
  JointDistribution baseline;
};

/// Source affects target given do(do_set): some choice of values makes the
/// intervened target distribution differ from the baseline. Node sets are
/// stored as sorted name lists so relation sets stand on their own (they
/// can be checked against an embedding without the generating model).
struct AffectsRelation {
  std::vector<std::string> source;
  std::vector<std::string> target;
  std::vector<std::string> do_set;
  bool holds = false;
  std::optional<bool> irreducible;
  std::optional<AffectsWitness> witness;
};

/// Decides whether `source` affects `target` given do(`do_set`), comparing
/// exact distributions over every (source, do_set) value combination — or
/// only the given `do_values` when supplied. The witness records the first
/// differing combination in lexicographic (source, do_set) value order.
AffectsRelation affects(const ClassicalCausalModel& m, const NodeSet& source,
                        const NodeSet& target, const NodeSet& do_set = {},
                        const std::optional<std::vector<std::uint32_t>>& do_values = std::nullopt,
                        const EnumerationLimits& limits = {});

/// True iff every non-empty proper subset s of the relation's source still
/// affects the target once the rest of the source joins the do-set.
/// Singleton sources are irreducible vacuously. Requires r.holds.
bool is_irreducible(const ClassicalCausalModel& m, const AffectsRelation& r,
                    const EnumerationLimits& limits = {});

struct AffectsCaps {
  std::size_t max_source = 2;
  std::size_t max_target = 2;
  std::size_t max_do = 2;
};

/// All holding affects relations among observed nodes with set sizes within
/// the caps, each annotated with irreducibility. Deterministic order.
std::vector<AffectsRelation> enumerate_affects(const ClassicalCausalModel& m,
                                               const AffectsCaps& caps = {},
                                               const EnumerationLimits& limits = {});

}  // namespace causalst
