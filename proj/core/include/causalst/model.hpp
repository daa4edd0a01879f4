#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causalst/distribution.hpp"
#include "causalst/graph.hpp"
#include "causalst/rational.hpp"

namespace causalst {

/// Finite alphabet {0, ..., size-1}.
struct Alphabet {
  std::uint32_t size = 2;
};

/// Named deterministic gates accepted by configs and the model builder.
enum class MechanismPrimitive { identity, negation, exclusive_or, conjunction };

std::optional<MechanismPrimitive> mechanism_primitive_from_name(std::string_view name);
std::string_view mechanism_primitive_name(MechanismPrimitive p);

/// Deterministic function from a tuple of parent values to a node value.
/// `table` is indexed in mixed radix over `parent_order` with the first
/// parent most significant; totality and range are checked at model build.
class Mechanism {
 public:
  Mechanism(NodeId node, std::vector<NodeId> parent_order, std::vector<std::uint32_t> table)
      : node_(node), parent_order_(std::move(parent_order)), table_(std::move(table)) {}

  NodeId node() const { return node_; }
  const std::vector<NodeId>& parent_order() const { return parent_order_; }
  const std::vector<std::uint32_t>& table() const { return table_; }

  friend bool operator==(const Mechanism&, const Mechanism&) = default;

 private:
  NodeId node_;
  std::vector<NodeId> parent_order_;
  std::vector<std::uint32_t> table_;
};

/// Exact distribution for a parentless node; pmf indexed by value.
struct ExogenousDistribution {
  NodeId node;
  std::vector<Rational> pmf;
  friend bool operator==(const ExogenousDistribution&, const ExogenousDistribution&) = default;
};

/// Caps for exact enumeration. `max_states` bounds both the number of
/// exogenous assignments walked and the output table size.
struct EnumerationLimits {
  std::uint64_t max_states = std::uint64_t(1) << 22;
};

/// A classical causal model: an acyclic structure, one finite alphabet per
/// node, a deterministic mechanism for every node with parents and an exact
/// exogenous distribution for every parentless node. Stochastic nodes are
/// expressed by routing an exogenous noise parent into a deterministic
/// mechanism. Immutable once built.
class ClassicalCausalModel {
 public:
  ClassicalCausalModel(CausalStructure structure, std::vector<Alphabet> alphabets,
                       std::vector<std::optional<Mechanism>> mechanisms,
                       std::vector<std::optional<ExogenousDistribution>> exogenous);

  const CausalStructure& structure() const { return structure_; }
  std::uint32_t cardinality(NodeId id) const;
  bool is_exogenous(NodeId id) const;
  const ExogenousDistribution& exogenous(NodeId id) const;
  const Mechanism& mechanism(NodeId id) const;

  /// Applies the node's mechanism to a full value vector indexed by node id.
  std::uint32_t evaluate(NodeId id, std::span<const std::uint32_t> values_by_node) const;

  NodeSet exogenous_nodes() const;

  friend bool operator==(const ClassicalCausalModel&, const ClassicalCausalModel&);

 private:
  CausalStructure structure_;
  std::vector<Alphabet> alphabets_;
  std::vector<std::optional<Mechanism>> mechanisms_;
  std::vector<std::optional<ExogenousDistribution>> exogenous_;
};

/// Convenience builder. Alphabets default to binary; parentless nodes
/// without an explicit pmf get the uniform distribution (the symmetric
/// default for freely chosen settings).
class ModelBuilder {
 public:
  explicit ModelBuilder(CausalStructure structure);

  ModelBuilder& alphabet(std::string_view node, std::uint32_t size);
  ModelBuilder& exogenous(std::string_view node, std::vector<Rational> pmf);
  ModelBuilder& mechanism_table(std::string_view node, std::span<const std::string> parent_order,
                                std::vector<std::uint32_t> table);
  ModelBuilder& mechanism(std::string_view node, MechanismPrimitive primitive);

  ClassicalCausalModel build() const;

 private:
  CausalStructure structure_;
  std::vector<Alphabet> alphabets_;
  std::vector<std::optional<Mechanism>> mechanisms_;
  std::vector<std::optional<ExogenousDistribution>> exogenous_;
};

/// Exact observed-or-not joint distribution over `over`: enumerates every
/// combination of exogenous values, pushes it through the mechanisms in
/// topological order and marginalizes. Mass is exactly 1 by construction.
/// Throws BoundExceededError if the exogenous state space or the output
/// table would exceed `limits`.
JointDistribution joint_distribution(const ClassicalCausalModel& m, const NodeSet& over,
                                     const EnumerationLimits& limits = {});

struct DsepPropertyCounterexample {
  NodeSet x, y, z;
  std::vector<std::uint32_t> z_values;
  std::string detail;
};

struct DsepPropertyReport {
  bool passed = true;
  std::uint64_t triples_examined = 0;
  std::uint64_t separations_checked = 0;
  std::optional<DsepPropertyCounterexample> counterexample;
};

/// Checks that `distribution` (over exactly the observed nodes of `g`)
/// satisfies every conditional independence promised by d-separation in
/// `g`: for all disjoint observed triples (X, Y, Z) with X, Y non-empty and
/// X d-separated from Y by Z, P(XY|z) == P(X|z) P(Y|z) for every z of
/// positive probability. Stops at the first counterexample.
DsepPropertyReport verify_dsep_property(const CausalStructure& g,
                                        const JointDistribution& distribution);

/// Same check with the distribution computed from the model's mechanisms.
DsepPropertyReport verify_dsep_property(const ClassicalCausalModel& m,
                                        const EnumerationLimits& limits = {});

}  // namespace causalst
