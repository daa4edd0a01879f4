#pragma once

#include <array>
#include <optional>

#include "causalst/model.hpp"
#include "causalst/rational.hpp"

namespace causalst {

/// Bipartite binary behaviour P(x, z | a, c): sixteen exact rationals,
/// each setting column non-negative and summing to 1. Cell layout is
/// a*8 + c*4 + x*2 + z.
class BellBehavior {
 public:
  static BellBehavior from_table(std::array<Rational, 16> cells);
  static BellBehavior pr_box();

  const Rational& p(unsigned x, unsigned z, unsigned a, unsigned c) const {
    return cells_[index(x, z, a, c)];
  }
  const std::array<Rational, 16>& cells() const { return cells_; }
  static constexpr std::size_t index(unsigned x, unsigned z, unsigned a, unsigned c) {
    return a * 8 + c * 4 + x * 2 + z;
  }

  /// E(a,c) with outcomes mapped 0 -> +1, 1 -> -1.
  Rational correlator(unsigned a, unsigned c) const;

  /// Bipartite no-signalling: each side's marginal independent of the
  /// other side's setting.
  bool no_signalling() const;

  friend bool operator==(const BellBehavior&, const BellBehavior&) = default;

 private:
  std::array<Rational, 16> cells_;
};

/// All eight CHSH expressions (sign patterns with an odd number of minus
/// signs over the four correlators).
std::array<Rational, 8> chsh_values(const BellBehavior& b);

/// Maximum of the eight CHSH expressions. 2 bounds the local set, 4 the
/// no-signalling set.
Rational chsh_value(const BellBehavior& b);

/// Convex weights over the sixteen deterministic local strategies
/// (x = f(a), z = g(c); f, g range over the four unary gates). Index is
/// f*4 + g with gates ordered const-0, const-1, copy, negate.
struct LocalModelWitness {
  std::array<Rational, 16> weights;
};

unsigned unary_gate_output(unsigned gate, unsigned input);
BellBehavior behavior_of_witness(const LocalModelWitness& w);

struct LocalityVerdict {
  bool no_signalling = true;
  bool local = false;
  std::optional<LocalModelWitness> witness;
};

/// Local-set membership. For no-signalling behaviours the decision is the
/// CHSH facet test (complete in the 2x2x2 scenario); a witness is then
/// produced by exact rational feasibility and verified by reconstruction.
/// Signalling input does not throw: the verdict carries no_signalling =
/// false and the decision falls back to the feasibility route.
LocalityVerdict is_local(const BellBehavior& b, bool with_witness = true);

/// Independent decision route: exact rational linear feasibility over the
/// sixteen deterministic strategies (phase-1 simplex, Bland's rule).
/// Returns the decomposition when one exists.
std::optional<LocalModelWitness> local_decomposition(const BellBehavior& b);

enum class BehaviorMode { do_intervention, observe_uniform };

struct BellNodes {
  NodeId a, c, x, z;
};

/// Behaviour table of a model over designated setting/outcome nodes.
/// do_intervention fills each column from the post-intervention
/// distribution under do(A=a, C=c); observe_uniform conditions the
/// observational joint on (a, c) and requires every setting combination to
/// have positive probability. All four nodes must be observed and binary.
BellBehavior behavior_from_model(const ClassicalCausalModel& m, const BellNodes& nodes,
                                 BehaviorMode mode, const EnumerationLimits& limits = {});

/// The three jamming conditions on the observational distribution:
/// P(XZ|B) != P(XZ) while P(X|B) == P(X) and P(Z|B) == P(Z), with B values
/// of probability zero skipped and reported.
struct JammingVerdict {
  bool joint_dependence = false;
  bool x_marginal_invariant = true;
  bool z_marginal_invariant = true;
  bool is_jamming = false;
  std::vector<std::uint32_t> skipped_b_values;
};

JammingVerdict jamming_conditions(const ClassicalCausalModel& m, NodeId b_node, NodeId x_node,
                                  NodeId z_node, const EnumerationLimits& limits = {});

}  // namespace causalst
