#include "causalst/distribution.hpp"

#include <algorithm>
#include <optional>

namespace causalst {

Assignment normalized_assignment(Assignment a) {
  std::sort(a.begin(), a.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (a[i].first == a[i + 1].first) throw QueryError("assignment mentions a node twice");
  }
  return a;
}

NodeSet assignment_nodes(const Assignment& a) {
  NodeSet out;
  out.reserve(a.size());
  for (const auto& [id, value] : a) out.push_back(id);
  return normalized_node_set(std::move(out));
}

JointDistribution::JointDistribution(std::vector<NodeId> variables,
                                     std::vector<std::uint32_t> cardinalities,
                                     std::vector<Rational> table)
    : variables_(std::move(variables)),
      cardinalities_(std::move(cardinalities)),
      table_(std::move(table)) {
  if (variables_.size() != cardinalities_.size())
    throw InvariantError("distribution variables/cardinalities mismatch");
  for (std::size_t i = 0; i + 1 < variables_.size(); ++i) {
    for (std::size_t j = i + 1; j < variables_.size(); ++j)
      if (variables_[i] == variables_[j]) throw InvariantError("duplicate distribution variable");
  }
  std::size_t cells = 1;
  for (const std::uint32_t c : cardinalities_) {
    if (c == 0) throw InvariantError("variable with empty alphabet");
    cells *= c;
  }
  if (table_.size() != cells) throw InvariantError("distribution table has wrong size");
  strides_.assign(variables_.size(), 1);
  for (std::size_t i = variables_.size(); i-- > 1;)
    strides_[i - 1] = strides_[i] * cardinalities_[i];
  Rational mass = 0;
  for (const Rational& p : table_) {
    if (p < 0) throw InvariantError("negative probability entry");
    mass += p;
  }
  if (mass != 1) throw InvariantError("distribution mass is " + format_rational(mass) + ", not 1");
}

const Rational& JointDistribution::probability(std::span<const std::uint32_t> values) const {
  return table_[rank(values)];
}

std::size_t JointDistribution::rank(std::span<const std::uint32_t> values) const {
  if (values.size() != variables_.size()) throw QueryError("value tuple has wrong arity");
  std::size_t index = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= cardinalities_[i]) throw QueryError("value outside alphabet");
    index += strides_[i] * values[i];
  }
  return index;
}

std::vector<std::uint32_t> JointDistribution::unrank(std::size_t index) const {
  std::vector<std::uint32_t> values(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    values[i] = static_cast<std::uint32_t>(index / strides_[i]);
    index %= strides_[i];
  }
  return values;
}

bool JointDistribution::has_variable(NodeId id) const {
  return std::find(variables_.begin(), variables_.end(), id) != variables_.end();
}

std::size_t JointDistribution::position_of(NodeId id) const {
  const auto it = std::find(variables_.begin(), variables_.end(), id);
  if (it == variables_.end()) throw UnknownNodeError("node not among distribution variables");
  return static_cast<std::size_t>(it - variables_.begin());
}

JointDistribution JointDistribution::marginal(const NodeSet& keep) const {
  std::vector<std::size_t> kept_positions;
  std::vector<NodeId> kept_vars;
  std::vector<std::uint32_t> kept_cards;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (set_contains(keep, variables_[i])) {
      kept_positions.push_back(i);
      kept_vars.push_back(variables_[i]);
      kept_cards.push_back(cardinalities_[i]);
    }
  }
  if (kept_vars.size() != keep.size())
    throw UnknownNodeError("marginal over a node not in the distribution");
  std::size_t cells = 1;
  for (const std::uint32_t c : kept_cards) cells *= c;
  std::vector<Rational> out(cells, Rational(0));
  std::vector<std::uint32_t> values;
  for (std::size_t idx = 0; idx < table_.size(); ++idx) {
    if (table_[idx] == 0) continue;
    values = unrank(idx);
    std::size_t out_idx = 0;
    for (const std::size_t pos : kept_positions) out_idx = out_idx * cardinalities_[pos] + values[pos];
    out[out_idx] += table_[idx];
  }
  return JointDistribution(std::move(kept_vars), std::move(kept_cards), std::move(out));
}

Rational JointDistribution::event_probability(const Assignment& partial) const {
  std::vector<std::pair<std::size_t, std::uint32_t>> constraints;
  constraints.reserve(partial.size());
  for (const auto& [id, value] : partial) {
    const std::size_t pos = position_of(id);
    if (value >= cardinalities_[pos]) throw QueryError("assignment value outside alphabet");
    constraints.emplace_back(pos, value);
  }
  Rational mass = 0;
  for (std::size_t idx = 0; idx < table_.size(); ++idx) {
    if (table_[idx] == 0) continue;
    const auto values = unrank(idx);
    bool match = true;
    for (const auto& [pos, value] : constraints) {
      if (values[pos] != value) {
        match = false;
        break;
      }
    }
    if (match) mass += table_[idx];
  }
  return mass;
}

JointDistribution JointDistribution::conditional(const NodeSet& target,
                                                 const Assignment& given) const {
  const NodeSet given_nodes = assignment_nodes(given);
  if (!sets_disjoint(target, given_nodes))
    throw QueryError("conditional target overlaps conditioning assignment");
  const Rational denom = event_probability(given);
  if (denom == 0) throw ZeroProbabilityError("conditioning event has probability zero");

  std::vector<std::pair<std::size_t, std::uint32_t>> constraints;
  for (const auto& [id, value] : given) constraints.emplace_back(position_of(id), value);

  std::vector<std::size_t> target_positions;
  std::vector<NodeId> target_vars;
  std::vector<std::uint32_t> target_cards;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (set_contains(target, variables_[i])) {
      target_positions.push_back(i);
      target_vars.push_back(variables_[i]);
      target_cards.push_back(cardinalities_[i]);
    }
  }
  if (target_vars.size() != target.size())
    throw UnknownNodeError("conditional target not in the distribution");

  std::size_t cells = 1;
  for (const std::uint32_t c : target_cards) cells *= c;
  std::vector<Rational> out(cells, Rational(0));
  for (std::size_t idx = 0; idx < table_.size(); ++idx) {
    if (table_[idx] == 0) continue;
    const auto values = unrank(idx);
    bool match = true;
    for (const auto& [pos, value] : constraints) {
      if (values[pos] != value) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    std::size_t out_idx = 0;
    for (const std::size_t pos : target_positions) out_idx = out_idx * cardinalities_[pos] + values[pos];
    out[out_idx] += table_[idx];
  }
  for (Rational& p : out) p /= denom;
  return JointDistribution(std::move(target_vars), std::move(target_cards), std::move(out));
}

bool JointDistribution::same_distribution(const JointDistribution& other) const {
  return total_variation_distance(other) == 0;
}

Rational JointDistribution::total_variation_distance(const JointDistribution& other) const {
  if (variables_.size() != other.variables_.size())
    throw QueryError("comparing distributions over different variable sets");
  if (variables_ == other.variables_) {
    Rational tv = 0;
    for (std::size_t i = 0; i < table_.size(); ++i) tv += rational_abs(table_[i] - other.table_[i]);
    return tv / 2;
  }
  // Align by permuting this distribution's tuples into the other's order.
  std::vector<std::size_t> perm(variables_.size());
  for (std::size_t i = 0; i < other.variables_.size(); ++i) {
    perm[i] = position_of(other.variables_[i]);
    if (cardinalities_[perm[i]] != other.cardinalities_[i])
      throw QueryError("comparing distributions with mismatched alphabets");
  }
  Rational tv = 0;
  std::vector<std::uint32_t> reordered(variables_.size());
  for (std::size_t idx = 0; idx < other.table_.size(); ++idx) {
    const auto values = other.unrank(idx);
    std::vector<std::uint32_t> mine(variables_.size());
    for (std::size_t i = 0; i < values.size(); ++i) mine[perm[i]] = values[i];
    tv += rational_abs(probability(mine) - other.table_[idx]);
  }
  return tv / 2;
}

bool conditionally_independent(const JointDistribution& d, const NodeSet& x, const NodeSet& y,
                               const NodeSet& s) {
  if (x.empty() || y.empty()) throw QueryError("independence test needs non-empty X and Y");
  if (!sets_disjoint(x, y) || !sets_disjoint(x, s) || !sets_disjoint(y, s))
    throw QueryError("independence test sets must be pairwise disjoint");
  const NodeSet xy = set_union(x, y);
  const NodeSet all = set_union(xy, s);
  const JointDistribution joint = d.marginal(all);

  // Enumerate assignments of S by walking the S-marginal's table.
  std::optional<JointDistribution> s_marginal;
  if (!s.empty()) s_marginal.emplace(joint.marginal(s));
  const std::size_t s_cells = s_marginal ? s_marginal->table_size() : 1;
  for (std::size_t s_idx = 0; s_idx < s_cells; ++s_idx) {
    Assignment given;
    if (s_marginal) {
      if (s_marginal->at(s_idx) == 0) continue;
      const auto s_values = s_marginal->unrank(s_idx);
      for (std::size_t i = 0; i < s.size(); ++i)
        given.emplace_back(s_marginal->variables()[i], s_values[i]);
      given = normalized_assignment(std::move(given));
    }
    const JointDistribution joint_xy = joint.conditional(xy, given);
    const JointDistribution px = joint_xy.marginal(x);
    const JointDistribution py = joint_xy.marginal(y);
    // Compare P(XY|s) with the product of its own marginals.
    for (std::size_t idx = 0; idx < joint_xy.table_size(); ++idx) {
      const auto values = joint_xy.unrank(idx);
      std::vector<std::uint32_t> xv, yv;
      for (std::size_t i = 0; i < joint_xy.variables().size(); ++i) {
        if (set_contains(x, joint_xy.variables()[i]))
          xv.push_back(values[i]);
        else
          yv.push_back(values[i]);
      }
      if (joint_xy.at(idx) != px.probability(xv) * py.probability(yv)) return false;
    }
  }
  return true;
}

}  // namespace causalst
