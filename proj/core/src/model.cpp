#include "causalst/model.hpp"

#include <algorithm>

#include "causalst/dseparation.hpp"

namespace causalst {

std::optional<MechanismPrimitive> mechanism_primitive_from_name(std::string_view name) {
  if (name == "ID") return MechanismPrimitive::identity;
  if (name == "NOT") return MechanismPrimitive::negation;
  if (name == "XOR") return MechanismPrimitive::exclusive_or;
  if (name == "AND") return MechanismPrimitive::conjunction;
  return std::nullopt;
}

std::string_view mechanism_primitive_name(MechanismPrimitive p) {
  switch (p) {
    case MechanismPrimitive::identity: return "ID";
    case MechanismPrimitive::negation: return "NOT";
    case MechanismPrimitive::exclusive_or: return "XOR";
    case MechanismPrimitive::conjunction: return "AND";
  }
  return "?";
}

ClassicalCausalModel::ClassicalCausalModel(CausalStructure structure,
                                           std::vector<Alphabet> alphabets,
                                           std::vector<std::optional<Mechanism>> mechanisms,
                                           std::vector<std::optional<ExogenousDistribution>> exogenous)
    : structure_(std::move(structure)),
      alphabets_(std::move(alphabets)),
      mechanisms_(std::move(mechanisms)),
      exogenous_(std::move(exogenous)) {
  const std::size_t n = structure_.node_count();
  if (alphabets_.size() != n || mechanisms_.size() != n || exogenous_.size() != n)
    throw InvariantError("model arrays must have one entry per node");
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId id{static_cast<std::uint32_t>(i)};
    const std::string& nm = structure_.name(id);
    if (alphabets_[i].size < 1) throw InvariantError("node '" + nm + "' has an empty alphabet");
    const bool parentless = structure_.parents(id).empty();
    if (mechanisms_[i].has_value() == exogenous_[i].has_value())
      throw InvariantError("node '" + nm + "' needs exactly one of mechanism or exogenous pmf");
    if (parentless != exogenous_[i].has_value())
      throw InvariantError(parentless
                               ? "parentless node '" + nm + "' needs an exogenous distribution"
                               : "node '" + nm + "' has parents and needs a mechanism");
    if (exogenous_[i]) {
      const auto& pmf = exogenous_[i]->pmf;
      if (exogenous_[i]->node != id) throw InvariantError("exogenous pmf bound to wrong node");
      if (pmf.size() != alphabets_[i].size)
        throw InvariantError("exogenous pmf for '" + nm + "' has wrong support size");
      Rational mass = 0;
      for (const Rational& p : pmf) {
        if (p < 0) throw InvariantError("negative exogenous probability on '" + nm + "'");
        mass += p;
      }
      if (mass != 1) throw InvariantError("exogenous pmf for '" + nm + "' does not sum to 1");
    } else {
      const Mechanism& f = *mechanisms_[i];
      if (f.node() != id) throw InvariantError("mechanism bound to wrong node");
      NodeSet declared(f.parent_order().begin(), f.parent_order().end());
      declared = normalized_node_set(std::move(declared));
      if (declared.size() != f.parent_order().size())
        throw InvariantError("mechanism for '" + nm + "' repeats a parent");
      const auto real_parents = structure_.parents(id);
      if (declared != NodeSet(real_parents.begin(), real_parents.end()))
        throw InvariantError("mechanism parent order for '" + nm +
                             "' does not match structure parents");
      std::size_t rows = 1;
      for (const NodeId p : f.parent_order()) rows *= alphabets_[p.value].size;
      if (f.table().size() != rows)
        throw InvariantError("mechanism table for '" + nm + "' is not total");
      for (const std::uint32_t v : f.table())
        if (v >= alphabets_[i].size)
          throw InvariantError("mechanism table for '" + nm + "' outputs outside alphabet");
    }
  }
}

std::uint32_t ClassicalCausalModel::cardinality(NodeId id) const {
  structure_.require_node(id);
  return alphabets_[id.value].size;
}

bool ClassicalCausalModel::is_exogenous(NodeId id) const {
  structure_.require_node(id);
  return exogenous_[id.value].has_value();
}

const ExogenousDistribution& ClassicalCausalModel::exogenous(NodeId id) const {
  structure_.require_node(id);
  if (!exogenous_[id.value]) throw QueryError("node has no exogenous distribution");
  return *exogenous_[id.value];
}

const Mechanism& ClassicalCausalModel::mechanism(NodeId id) const {
  structure_.require_node(id);
  if (!mechanisms_[id.value]) throw QueryError("node has no mechanism");
  return *mechanisms_[id.value];
}

std::uint32_t ClassicalCausalModel::evaluate(NodeId id,
                                             std::span<const std::uint32_t> values_by_node) const {
  const Mechanism& f = mechanism(id);
  std::size_t index = 0;
  for (const NodeId p : f.parent_order())
    index = index * alphabets_[p.value].size + values_by_node[p.value];
  return f.table()[index];
}

NodeSet ClassicalCausalModel::exogenous_nodes() const {
  NodeSet out;
  for (std::size_t i = 0; i < exogenous_.size(); ++i)
    if (exogenous_[i]) out.push_back(NodeId{static_cast<std::uint32_t>(i)});
  return out;
}

bool operator==(const ClassicalCausalModel& a, const ClassicalCausalModel& b) {
  if (!(a.structure_ == b.structure_)) return false;
  for (std::size_t i = 0; i < a.alphabets_.size(); ++i)
    if (a.alphabets_[i].size != b.alphabets_[i].size) return false;
  return a.mechanisms_ == b.mechanisms_ && a.exogenous_ == b.exogenous_;
}

ModelBuilder::ModelBuilder(CausalStructure structure) : structure_(std::move(structure)) {
  const std::size_t n = structure_.node_count();
  alphabets_.assign(n, Alphabet{2});
  mechanisms_.assign(n, std::nullopt);
  exogenous_.assign(n, std::nullopt);
}

ModelBuilder& ModelBuilder::alphabet(std::string_view node, std::uint32_t size) {
  alphabets_[structure_.node(node).value] = Alphabet{size};
  return *this;
}

ModelBuilder& ModelBuilder::exogenous(std::string_view node, std::vector<Rational> pmf) {
  const NodeId id = structure_.node(node);
  exogenous_[id.value] = ExogenousDistribution{id, std::move(pmf)};
  return *this;
}

ModelBuilder& ModelBuilder::mechanism_table(std::string_view node,
                                            std::span<const std::string> parent_order,
                                            std::vector<std::uint32_t> table) {
  const NodeId id = structure_.node(node);
  std::vector<NodeId> parents;
  parents.reserve(parent_order.size());
  for (const auto& p : parent_order) parents.push_back(structure_.node(p));
  mechanisms_[id.value] = Mechanism(id, std::move(parents), std::move(table));
  return *this;
}

ModelBuilder& ModelBuilder::mechanism(std::string_view node, MechanismPrimitive primitive) {
  const NodeId id = structure_.node(node);
  const auto parent_span = structure_.parents(id);
  std::vector<NodeId> parents(parent_span.begin(), parent_span.end());
  // Primitive gates are binary; sort parents by name for a stable order.
  std::sort(parents.begin(), parents.end(), [&](NodeId a, NodeId b) {
    return structure_.name(a) < structure_.name(b);
  });
  const std::size_t arity = parents.size();
  if ((primitive == MechanismPrimitive::identity || primitive == MechanismPrimitive::negation) &&
      arity != 1)
    throw InvariantError("ID/NOT mechanism needs exactly one parent");
  if (arity == 0) throw InvariantError("primitive mechanism needs parents");
  for (const NodeId p : parents)
    if (alphabets_[p.value].size != 2 || alphabets_[id.value].size != 2)
      throw InvariantError("primitive mechanisms require binary alphabets");
  std::vector<std::uint32_t> table(std::size_t(1) << arity);
  for (std::size_t row = 0; row < table.size(); ++row) {
    std::uint32_t acc = 0;
    switch (primitive) {
      case MechanismPrimitive::identity:
        acc = static_cast<std::uint32_t>(row & 1);
        break;
      case MechanismPrimitive::negation:
        acc = static_cast<std::uint32_t>((row & 1) ^ 1);
        break;
      case MechanismPrimitive::exclusive_or: {
        for (std::size_t b = 0; b < arity; ++b) acc ^= (row >> (arity - 1 - b)) & 1;
        break;
      }
      case MechanismPrimitive::conjunction: {
        acc = 1;
        for (std::size_t b = 0; b < arity; ++b) acc &= (row >> (arity - 1 - b)) & 1;
        break;
      }
    }
    table[row] = acc;
  }
  mechanisms_[id.value] = Mechanism(id, std::move(parents), std::move(table));
  return *this;
}

ClassicalCausalModel ModelBuilder::build() const {
  auto mechanisms = mechanisms_;
  auto exogenous = exogenous_;
  for (std::size_t i = 0; i < structure_.node_count(); ++i) {
    const NodeId id{static_cast<std::uint32_t>(i)};
    if (structure_.parents(id).empty() && !exogenous[i] && !mechanisms[i]) {
      const std::uint32_t k = alphabets_[i].size;
      exogenous[i] = ExogenousDistribution{id, std::vector<Rational>(k, Rational(1, k))};
    }
  }
  return ClassicalCausalModel(structure_, alphabets_, std::move(mechanisms), std::move(exogenous));
}

JointDistribution joint_distribution(const ClassicalCausalModel& m, const NodeSet& over,
                                     const EnumerationLimits& limits) {
  const CausalStructure& g = m.structure();
  for (const NodeId id : over) g.require_node(id);

  const NodeSet exo = m.exogenous_nodes();
  std::uint64_t exo_states = 1;
  for (const NodeId id : exo) {
    exo_states *= m.cardinality(id);
    if (exo_states > limits.max_states)
      throw BoundExceededError("exogenous state space exceeds enumeration bound");
  }
  std::uint64_t out_states = 1;
  std::vector<std::uint32_t> out_cards;
  out_cards.reserve(over.size());
  for (const NodeId id : over) {
    out_cards.push_back(m.cardinality(id));
    out_states *= m.cardinality(id);
    if (out_states > limits.max_states)
      throw BoundExceededError("output table exceeds enumeration bound");
  }

  std::vector<Rational> table(static_cast<std::size_t>(out_states), Rational(0));
  std::vector<std::uint32_t> exo_values(exo.size(), 0);
  std::vector<std::uint32_t> values(g.node_count(), 0);
  const auto topo = g.topological_order();

  for (;;) {
    Rational weight = 1;
    for (std::size_t i = 0; i < exo.size(); ++i) {
      weight *= m.exogenous(exo[i]).pmf[exo_values[i]];
      if (weight == 0) break;
    }
    if (weight != 0) {
      for (std::size_t i = 0; i < exo.size(); ++i) values[exo[i].value] = exo_values[i];
      for (const NodeId id : topo)
        if (!m.is_exogenous(id)) values[id.value] = m.evaluate(id, values);
      std::size_t index = 0;
      for (std::size_t i = 0; i < over.size(); ++i)
        index = index * out_cards[i] + values[over[i].value];
      table[index] += weight;
    }
    // mixed-radix increment of exo_values
    std::size_t pos = exo.size();
    bool wrapped = true;
    while (pos > 0) {
      --pos;
      if (++exo_values[pos] < m.cardinality(exo[pos])) {
        wrapped = false;
        break;
      }
      exo_values[pos] = 0;
    }
    if (wrapped) break;
  }

  return JointDistribution(NodeSet(over), std::move(out_cards), std::move(table));
}

namespace {

// Labels each observed node X / Y / Z / out; 4^n assignments walked in a
// fixed order so the "first" counterexample is deterministic. Symmetric
// (X, Y) duplicates are skipped by requiring the lowest X|Y-labelled node
// to carry the X label.
DsepPropertyReport verify_dsep_impl(const CausalStructure& g, const JointDistribution& dist) {
  const NodeSet obs = g.observed_nodes();
  {
    NodeSet dvars = dist.variables();
    dvars = normalized_node_set(std::move(dvars));
    if (dvars != obs)
      throw QueryError("distribution variables must be exactly the observed nodes");
  }
  DsepPropertyReport report;
  const std::size_t n = obs.size();
  std::vector<int> label(n, 0);  // 0=out, 1=X, 2=Y, 3=Z
  const std::uint64_t total = [&] {
    std::uint64_t t = 1;
    for (std::size_t i = 0; i < n; ++i) t *= 4;
    return t;
  }();
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      label[i] = static_cast<int>(c & 3);
      c >>= 2;
    }
    NodeSet x, y, z;
    int first_xy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] == 1) {
        if (first_xy == 0) first_xy = 1;
        x.push_back(obs[i]);
      } else if (label[i] == 2) {
        if (first_xy == 0) first_xy = 2;
        y.push_back(obs[i]);
      } else if (label[i] == 3) {
        z.push_back(obs[i]);
      }
    }
    if (x.empty() || y.empty() || first_xy != 1) continue;
    ++report.triples_examined;
    if (!d_separated(g, x, y, z)) continue;
    ++report.separations_checked;
    if (conditionally_independent(dist, x, y, z)) continue;

    report.passed = false;
    DsepPropertyCounterexample ce;
    ce.x = x;
    ce.y = y;
    ce.z = z;
    // Recover the first failing conditioning assignment for the report.
    const JointDistribution joint = dist.marginal(set_union(set_union(x, y), z));
    if (z.empty()) {
      ce.detail = "unconditional factorization fails";
    } else {
      const JointDistribution zm = joint.marginal(z);
      for (std::size_t zi = 0; zi < zm.table_size(); ++zi) {
        if (zm.at(zi) == 0) continue;
        const auto zv = zm.unrank(zi);
        Assignment given;
        for (std::size_t i = 0; i < z.size(); ++i) given.emplace_back(zm.variables()[i], zv[i]);
        const JointDistribution cond = joint.conditional(set_union(x, y), given);
        if (!conditionally_independent(cond, x, y, {})) {
          ce.z_values = zv;
          break;
        }
      }
      ce.detail = "factorization fails at the recorded conditioning values";
    }
    report.counterexample = std::move(ce);
    return report;
  }
  return report;
}

}  // namespace

DsepPropertyReport verify_dsep_property(const CausalStructure& g,
                                        const JointDistribution& distribution) {
  return verify_dsep_impl(g, distribution);
}

DsepPropertyReport verify_dsep_property(const ClassicalCausalModel& m,
                                        const EnumerationLimits& limits) {
  const JointDistribution obs = joint_distribution(m, m.structure().observed_nodes(), limits);
  return verify_dsep_impl(m.structure(), obs);
}

}  // namespace causalst
