#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "causalst/graph.hpp"
#include "causalst/rational.hpp"

namespace causalst {

/// Partial assignment of values to nodes, kept sorted by node id.
using Assignment = std::vector<std::pair<NodeId, std::uint32_t>>;

Assignment normalized_assignment(Assignment a);
NodeSet assignment_nodes(const Assignment& a);

/// Exact probability table over an ordered list of finite-alphabet
/// variables. Entries are rationals, non-negative and summing to exactly 1;
/// both facts are checked at construction. Cells are laid out in
/// mixed-radix order with the first variable most significant, so walking
/// the table front to back enumerates value tuples lexicographically.
class JointDistribution {
 public:
  JointDistribution(std::vector<NodeId> variables, std::vector<std::uint32_t> cardinalities,
                    std::vector<Rational> table);

  const std::vector<NodeId>& variables() const { return variables_; }
  const std::vector<std::uint32_t>& cardinalities() const { return cardinalities_; }
  std::size_t table_size() const { return table_.size(); }
  const std::vector<Rational>& table() const { return table_; }

  const Rational& at(std::size_t index) const { return table_[index]; }
  const Rational& probability(std::span<const std::uint32_t> values) const;

  std::size_t rank(std::span<const std::uint32_t> values) const;
  std::vector<std::uint32_t> unrank(std::size_t index) const;

  bool has_variable(NodeId id) const;
  std::size_t position_of(NodeId id) const;  ///< throws UnknownNodeError

  /// Marginal over `keep` (subset of variables); remaining variables keep
  /// their relative order.
  JointDistribution marginal(const NodeSet& keep) const;

  /// Total probability of the event described by `partial`.
  Rational event_probability(const Assignment& partial) const;

  /// Exact conditional P(target | given). Throws ZeroProbabilityError if
  /// the conditioning event has probability zero.
  JointDistribution conditional(const NodeSet& target, const Assignment& given) const;

  /// Exact equality as distributions over the same variable set; variable
  /// orders may differ.
  bool same_distribution(const JointDistribution& other) const;

  /// 1/2 * sum |p - q| over aligned cells; same variable set required.
  Rational total_variation_distance(const JointDistribution& other) const;

 private:
  std::vector<NodeId> variables_;
  std::vector<std::uint32_t> cardinalities_;
  std::vector<std::size_t> strides_;
  std::vector<Rational> table_;
};

/// Exact test of X independent of Y given S within `d`: for every s with
/// P(s) > 0, P(X Y | s) == P(X | s) * P(Y | s) cell for cell.
bool conditionally_independent(const JointDistribution& d, const NodeSet& x, const NodeSet& y,
                               const NodeSet& s);

}  // namespace causalst
