#include "causalst/intervention.hpp"

#include <algorithm>

namespace causalst {

namespace {

void validate_targets_observed(const CausalStructure& g, const NodeSet& targets) {
  for (const NodeId id : targets) {
    g.require_node(id);
    if (!g.is_observed(id))
      throw QueryError("intervention target '" + g.name(id) + "' is not observed");
  }
}

std::vector<std::uint32_t> cardinalities_of(const ClassicalCausalModel& m, const NodeSet& set) {
  std::vector<std::uint32_t> out;
  out.reserve(set.size());
  for (const NodeId id : set) out.push_back(m.cardinality(id));
  return out;
}

bool next_tuple(std::vector<std::uint32_t>& values, const std::vector<std::uint32_t>& radix) {
  std::size_t pos = values.size();
  while (pos > 0) {
    --pos;
    if (++values[pos] < radix[pos]) return true;
    values[pos] = 0;
  }
  return false;
}

Assignment zip_assignment(const NodeSet& nodes, const std::vector<std::uint32_t>& values) {
  Assignment a;
  a.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) a.emplace_back(nodes[i], values[i]);
  return a;  // nodes sorted, so already normalized
}

}  // namespace

CausalStructure do_surgery(const CausalStructure& g, const NodeSet& targets) {
  validate_targets_observed(g, targets);
  std::vector<Edge> kept;
  kept.reserve(g.edges().size());
  for (const Edge& e : g.edges())
    if (!set_contains(targets, e.to)) kept.push_back(e);
  return CausalStructure::from_edge_ids(
      std::vector<NodeDecl>(g.nodes().begin(), g.nodes().end()), std::move(kept));
}

ClassicalCausalModel apply_intervention(const ClassicalCausalModel& m, const Intervention& iv) {
  const CausalStructure& g = m.structure();
  const Assignment assignments = normalized_assignment(iv.assignments);
  const NodeSet targets = assignment_nodes(assignments);
  validate_targets_observed(g, targets);
  for (const auto& [id, value] : assignments) {
    if (value >= m.cardinality(id))
      throw QueryError("intervention value outside alphabet of '" + g.name(id) + "'");
  }
  const CausalStructure surgered = do_surgery(g, targets);

  const std::size_t n = g.node_count();
  std::vector<Alphabet> alphabets;
  alphabets.reserve(n);
  std::vector<std::optional<Mechanism>> mechanisms(n);
  std::vector<std::optional<ExogenousDistribution>> exogenous(n);
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId id{static_cast<std::uint32_t>(i)};
    alphabets.push_back(Alphabet{m.cardinality(id)});
    if (set_contains(targets, id)) {
      std::vector<Rational> pmf(m.cardinality(id), Rational(0));
      const auto it = std::find_if(assignments.begin(), assignments.end(),
                                   [&](const auto& kv) { return kv.first == id; });
      pmf[it->second] = 1;
      exogenous[i] = ExogenousDistribution{id, std::move(pmf)};
    } else if (m.is_exogenous(id)) {
      exogenous[i] = m.exogenous(id);
    } else {
      mechanisms[i] = m.mechanism(id);
    }
  }
  return ClassicalCausalModel(surgered, std::move(alphabets), std::move(mechanisms),
                              std::move(exogenous));
}

JointDistribution post_intervention_distribution(const ClassicalCausalModel& m,
                                                 const Intervention& iv, const NodeSet& over,
                                                 const EnumerationLimits& limits) {
  return joint_distribution(apply_intervention(m, iv), over, limits);
}

AffectsRelation affects(const ClassicalCausalModel& m, const NodeSet& source,
                        const NodeSet& target, const NodeSet& do_set,
                        const std::optional<std::vector<std::uint32_t>>& do_values,
                        const EnumerationLimits& limits) {
  const CausalStructure& g = m.structure();
  if (source.empty() || target.empty())
    throw QueryError("affects query needs non-empty source and target");
  if (!sets_disjoint(source, target) || !sets_disjoint(source, do_set) ||
      !sets_disjoint(target, do_set))
    throw QueryError("affects query sets must be pairwise disjoint");
  validate_targets_observed(g, source);
  validate_targets_observed(g, do_set);
  for (const NodeId id : target) {
    g.require_node(id);
    if (!g.is_observed(id)) throw QueryError("affects target '" + g.name(id) + "' is not observed");
  }

  AffectsRelation r;
  r.source = g.names_of(source);
  r.target = g.names_of(target);
  r.do_set = g.names_of(do_set);
  std::sort(r.source.begin(), r.source.end());
  std::sort(r.target.begin(), r.target.end());
  std::sort(r.do_set.begin(), r.do_set.end());

  const auto source_cards = cardinalities_of(m, source);
  const auto do_cards = cardinalities_of(m, do_set);

  // Baselines P_{do(Z=z)}(target) are cached per z; the witness scan order
  // stays lexicographic over (source values, do values).
  std::vector<std::vector<std::uint32_t>> do_tuples;
  if (do_values) {
    if (do_values->size() != do_set.size())
      throw QueryError("do_values arity does not match the do-set");
    do_tuples.push_back(*do_values);
  } else {
    std::vector<std::uint32_t> z(do_set.size(), 0);
    do {
      do_tuples.push_back(z);
    } while (next_tuple(z, do_cards));
  }
  std::vector<std::optional<JointDistribution>> baselines(do_tuples.size());
  for (std::size_t zi = 0; zi < do_tuples.size(); ++zi) {
    baselines[zi] = post_intervention_distribution(
        m, Intervention{zip_assignment(do_set, do_tuples[zi])}, target, limits);
  }

  std::vector<std::uint32_t> x(source.size(), 0);
  do {
    for (std::size_t zi = 0; zi < do_tuples.size(); ++zi) {
      Assignment a = zip_assignment(source, x);
      const Assignment za = zip_assignment(do_set, do_tuples[zi]);
      a.insert(a.end(), za.begin(), za.end());
      a = normalized_assignment(std::move(a));
      JointDistribution intervened =
          post_intervention_distribution(m, Intervention{a}, target, limits);
      if (!intervened.same_distribution(*baselines[zi])) {
        r.holds = true;
        r.witness = AffectsWitness{x, do_tuples[zi], std::move(intervened),
                                   std::move(*baselines[zi])};
        return r;
      }
    }
  } while (next_tuple(x, source_cards));
  r.holds = false;
  return r;
}

bool is_irreducible(const ClassicalCausalModel& m, const AffectsRelation& r,
                    const EnumerationLimits& limits) {
  if (!r.holds) throw QueryError("irreducibility is defined for holding affects relations only");
  const CausalStructure& g = m.structure();
  const NodeSet source = g.node_set(r.source);
  const NodeSet target = g.node_set(r.target);
  const NodeSet do_set = g.node_set(r.do_set);
  if (source.size() <= 1) return true;

  const std::size_t k = source.size();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << k); ++mask) {
    NodeSet sub, rest;
    for (std::size_t i = 0; i < k; ++i)
      ((mask >> i) & 1 ? sub : rest).push_back(source[i]);
    if (!affects(m, sub, target, set_union(do_set, rest), std::nullopt, limits).holds)
      return false;
  }
  return true;
}

std::vector<AffectsRelation> enumerate_affects(const ClassicalCausalModel& m,
                                               const AffectsCaps& caps,
                                               const EnumerationLimits& limits) {
  const NodeSet obs = m.structure().observed_nodes();
  const std::size_t n = obs.size();
  if (n > 16) throw BoundExceededError("affects enumeration over more than 16 observed nodes");

  std::vector<AffectsRelation> out;
  std::vector<int> label(n, 0);  // 0=out, 1=source, 2=target, 3=do
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 4;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    NodeSet source, target, do_set;
    for (std::size_t i = 0; i < n; ++i) {
      switch (c & 3) {
        case 1: source.push_back(obs[i]); break;
        case 2: target.push_back(obs[i]); break;
        case 3: do_set.push_back(obs[i]); break;
        default: break;
      }
      c >>= 2;
    }
    if (source.empty() || target.empty()) continue;
    if (source.size() > caps.max_source || target.size() > caps.max_target ||
        do_set.size() > caps.max_do)
      continue;
    AffectsRelation r = affects(m, source, target, do_set, std::nullopt, limits);
    if (!r.holds) continue;
    r.irreducible = is_irreducible(m, r, limits);
    out.push_back(std::move(r));
  }
  // Deterministic report order: by source, then target, then do-set names.
  std::sort(out.begin(), out.end(), [](const AffectsRelation& a, const AffectsRelation& b) {
    if (a.source != b.source) return a.source < b.source;
    if (a.target != b.target) return a.target < b.target;
    return a.do_set < b.do_set;
  });
  return out;
}

}  // namespace causalst
