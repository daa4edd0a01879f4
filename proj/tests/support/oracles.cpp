#include "oracles.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace causalst::testing {

namespace {

// One step of a not-necessarily-directed path: the node reached and whether
// the edge was traversed along its direction (tail to head).
struct Step {
  NodeId node;
  bool along_edge;
};

bool path_is_blocked(const CausalStructure& g, const std::vector<Step>& path, const NodeSet& z) {
  // path[0].along_edge is meaningless; triples live at internal positions.
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const NodeId centre = path[i].node;
    const bool into_centre = path[i].along_edge;        // edge i-1 -> i points at centre
    const bool out_of_centre = path[i + 1].along_edge;  // edge i -> i+1 leaves centre
    const bool collider = into_centre && !out_of_centre;
    if (collider) {
      bool meets_z = set_contains(z, centre);
      if (!meets_z)
        for (const NodeId d : g.descendants(centre))
          if (set_contains(z, d)) {
            meets_z = true;
            break;
          }
      if (!meets_z) return true;  // collider with conditioning nowhere below
    } else {
      if (set_contains(z, centre)) return true;  // chain or fork centre conditioned on
    }
  }
  return false;
}

bool connected_dfs(const CausalStructure& g, std::vector<Step>& path, std::vector<bool>& on_path,
                   const NodeSet& y, const NodeSet& z) {
  const NodeId here = path.back().node;
  const auto try_step = [&](NodeId next, bool along_edge) -> bool {
    if (on_path[next.value]) return false;
    path.push_back({next, along_edge});
    on_path[next.value] = true;
    bool found = false;
    if (set_contains(y, next) && !path_is_blocked(g, path, z)) {
      found = true;
    } else if (!set_contains(y, next)) {
      // Paths must stop at the first Y node they meet: a longer walk through
      // Y is a different pair's path and gets enumerated from that Y anyway.
      found = connected_dfs(g, path, on_path, y, z);
    }
    on_path[next.value] = false;
    path.pop_back();
    return found;
  };
  for (const NodeId c : g.children(here))
    if (try_step(c, true)) return true;
  for (const NodeId p : g.parents(here))
    if (try_step(p, false)) return true;
  return false;
}

}  // namespace

bool d_separated_by_path_enumeration(const CausalStructure& g, const NodeSet& x, const NodeSet& y,
                                     const NodeSet& z) {
  if (g.node_count() > 12) throw QueryError("path-enumeration oracle capped at 12 nodes");
  if (x.empty() || y.empty()) throw QueryError("oracle needs non-empty X and Y");
  if (!sets_disjoint(x, y) || !sets_disjoint(x, z) || !sets_disjoint(y, z))
    throw QueryError("oracle sets must be pairwise disjoint");
  for (const NodeId start : x) {
    std::vector<Step> path{{start, false}};
    std::vector<bool> on_path(g.node_count(), false);
    on_path[start.value] = true;
    if (connected_dfs(g, path, on_path, y, z)) return false;
  }
  return true;
}

std::vector<CausalStructure> all_ordered_dags(std::size_t n) {
  std::vector<std::pair<std::string, std::string>> slots;
  std::vector<NodeDecl> decls;
  for (std::size_t i = 0; i < n; ++i) decls.push_back({"n" + std::to_string(i)});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(decls[i].name, decls[j].name);
  std::vector<CausalStructure> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << slots.size()); ++mask) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if ((mask >> s) & 1) edges.push_back(slots[s]);
    out.emplace_back(decls, edges);
  }
  return out;
}

std::vector<CausalStructure> all_labeled_dags(std::size_t n) {
  if (n > 4) throw QueryError("all_labeled_dags capped at 4 nodes");
  std::vector<NodeDecl> decls;
  for (std::size_t i = 0; i < n; ++i) decls.push_back({"n" + std::to_string(i)});
  std::vector<std::pair<std::string, std::string>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) slots.emplace_back(decls[i].name, decls[j].name);
  std::vector<CausalStructure> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << slots.size()); ++mask) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if ((mask >> s) & 1) edges.push_back(slots[s]);
    try {
      out.emplace_back(decls, edges);
    } catch (const InvariantError&) {
      // cyclic; skip
    }
  }
  return out;
}

std::vector<BellBehavior> no_signalling_extreme_points() {
  std::vector<BellBehavior> out;
  for (unsigned f = 0; f < 4; ++f) {
    for (unsigned g = 0; g < 4; ++g) {
      LocalModelWitness w;
      w.weights.fill(Rational(0));
      w.weights[f * 4 + g] = 1;
      out.push_back(behavior_of_witness(w));
    }
  }
  for (unsigned alpha = 0; alpha < 2; ++alpha)
    for (unsigned beta = 0; beta < 2; ++beta)
      for (unsigned gamma = 0; gamma < 2; ++gamma) {
        std::array<Rational, 16> cells;
        for (unsigned a = 0; a < 2; ++a)
          for (unsigned c = 0; c < 2; ++c)
            for (unsigned x = 0; x < 2; ++x)
              for (unsigned z = 0; z < 2; ++z)
                cells[BellBehavior::index(x, z, a, c)] =
                    ((x ^ z) == ((a & c) ^ (alpha & a) ^ (beta & c) ^ gamma)) ? Rational(1, 2)
                                                                              : Rational(0);
        out.push_back(BellBehavior::from_table(std::move(cells)));
      }
  return out;
}

std::uint64_t TestRng::below(std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  for (;;) {
    const std::uint64_t v = engine_();
    if (v < limit) return v % n;
  }
}

CausalStructure random_dag(TestRng& rng, std::size_t n, unsigned edge_percent,
                           unsigned observed_percent) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

  std::vector<NodeDecl> decls;
  for (std::size_t i = 0; i < n; ++i) {
    const bool observed = rng.below(100) < observed_percent;
    decls.push_back({"n" + std::to_string(i), observed ? NodeRole::observed : NodeRole::unobserved});
  }
  bool any_observed = false;
  for (const auto& d : decls) any_observed |= d.role == NodeRole::observed;
  if (!any_observed) decls.front().role = NodeRole::observed;

  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.below(100) < edge_percent)
        edges.emplace_back(decls[order[i]].name, decls[order[j]].name);
  return CausalStructure(decls, edges);
}

ClassicalCausalModel random_binary_model(TestRng& rng, const CausalStructure& g) {
  const std::size_t n = g.node_count();
  std::vector<Alphabet> alphabets(n, Alphabet{2});
  std::vector<std::optional<Mechanism>> mechanisms(n);
  std::vector<std::optional<ExogenousDistribution>> exogenous(n);
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId id{static_cast<std::uint32_t>(i)};
    const auto parents = g.parents(id);
    if (parents.empty()) {
      const std::uint64_t w0 = 1 + rng.below(8);
      const std::uint64_t w1 = 1 + rng.below(8);
      exogenous[i] = ExogenousDistribution{
          id, {Rational(w0, w0 + w1), Rational(w1, w0 + w1)}};
    } else {
      std::vector<std::uint32_t> table(std::size_t(1) << parents.size());
      for (auto& cell : table) cell = static_cast<std::uint32_t>(rng.below(2));
      mechanisms[i] =
          Mechanism(id, std::vector<NodeId>(parents.begin(), parents.end()), std::move(table));
    }
  }
  return ClassicalCausalModel(g, std::move(alphabets), std::move(mechanisms),
                              std::move(exogenous));
}

BellBehavior random_no_signalling_behavior(TestRng& rng) {
  static const std::vector<BellBehavior> vertices = no_signalling_extreme_points();
  std::array<std::uint64_t, 24> weights{};
  std::uint64_t total = 0;
  // Sparse mixtures: a handful of vertices, often including a parity box so
  // the non-local region gets exercised.
  const std::size_t terms = 1 + rng.below(5);
  for (std::size_t t = 0; t < terms; ++t) {
    weights[rng.below(24)] += 1 + rng.below(64);
  }
  if (rng.coin()) weights[16 + rng.below(8)] += 1 + rng.below(64);
  for (const auto w : weights) total += w;

  std::array<Rational, 16> cells;
  cells.fill(Rational(0));
  for (std::size_t v = 0; v < 24; ++v) {
    if (weights[v] == 0) continue;
    const Rational w(weights[v], total);
    for (std::size_t cell = 0; cell < 16; ++cell) cells[cell] += w * vertices[v].cells()[cell];
  }
  return BellBehavior::from_table(std::move(cells));
}

}  // namespace causalst::testing
