#include "causalst/correlations.hpp"

#include <algorithm>

#include "causalst/intervention.hpp"

namespace causalst {

BellBehavior BellBehavior::from_table(std::array<Rational, 16> cells) {
  BellBehavior b;
  b.cells_ = std::move(cells);
  for (unsigned a = 0; a < 2; ++a) {
    for (unsigned c = 0; c < 2; ++c) {
      Rational mass = 0;
      for (unsigned x = 0; x < 2; ++x) {
        for (unsigned z = 0; z < 2; ++z) {
          const Rational& p = b.cells_[index(x, z, a, c)];
          if (p < 0) throw InvariantError("negative behaviour entry");
          mass += p;
        }
      }
      if (mass != 1) throw InvariantError("behaviour column does not sum to 1");
    }
  }
  return b;
}

BellBehavior BellBehavior::pr_box() {
  std::array<Rational, 16> cells;
  for (unsigned a = 0; a < 2; ++a)
    for (unsigned c = 0; c < 2; ++c)
      for (unsigned x = 0; x < 2; ++x)
        for (unsigned z = 0; z < 2; ++z)
          cells[index(x, z, a, c)] = ((x ^ z) == (a & c)) ? Rational(1, 2) : Rational(0);
  return from_table(std::move(cells));
}

Rational BellBehavior::correlator(unsigned a, unsigned c) const {
  Rational e = 0;
  for (unsigned x = 0; x < 2; ++x)
    for (unsigned z = 0; z < 2; ++z)
      e += (x == z ? Rational(1) : Rational(-1)) * p(x, z, a, c);
  return e;
}

bool BellBehavior::no_signalling() const {
  for (unsigned a = 0; a < 2; ++a)
    for (unsigned x = 0; x < 2; ++x)
      if (p(x, 0, a, 0) + p(x, 1, a, 0) != p(x, 0, a, 1) + p(x, 1, a, 1)) return false;
  for (unsigned c = 0; c < 2; ++c)
    for (unsigned z = 0; z < 2; ++z)
      if (p(0, z, 0, c) + p(1, z, 0, c) != p(0, z, 1, c) + p(1, z, 1, c)) return false;
  return true;
}

std::array<Rational, 8> chsh_values(const BellBehavior& b) {
  const std::array<Rational, 4> e = {b.correlator(0, 0), b.correlator(0, 1), b.correlator(1, 0),
                                     b.correlator(1, 1)};
  std::array<Rational, 8> out;
  std::size_t i = 0;
  // Sign patterns (-1)^(a.c + alpha.a + beta.c + gamma): exactly the eight
  // with an odd number of minus signs.
  for (unsigned alpha = 0; alpha < 2; ++alpha) {
    for (unsigned beta = 0; beta < 2; ++beta) {
      for (unsigned gamma = 0; gamma < 2; ++gamma) {
        Rational s = 0;
        for (unsigned a = 0; a < 2; ++a)
          for (unsigned c = 0; c < 2; ++c) {
            const unsigned sign = ((a & c) ^ (alpha & a) ^ (beta & c) ^ gamma) & 1;
            s += (sign ? Rational(-1) : Rational(1)) * e[a * 2 + c];
          }
        out[i++] = std::move(s);
      }
    }
  }
  return out;
}

Rational chsh_value(const BellBehavior& b) {
  const auto values = chsh_values(b);
  return *std::max_element(values.begin(), values.end());
}

unsigned unary_gate_output(unsigned gate, unsigned input) {
  switch (gate) {
    case 0: return 0;
    case 1: return 1;
    case 2: return input;
    default: return input ^ 1;
  }
}

BellBehavior behavior_of_witness(const LocalModelWitness& w) {
  std::array<Rational, 16> cells;
  cells.fill(Rational(0));
  for (unsigned f = 0; f < 4; ++f) {
    for (unsigned g = 0; g < 4; ++g) {
      const Rational& weight = w.weights[f * 4 + g];
      if (weight == 0) continue;
      if (weight < 0) throw InvariantError("negative witness weight");
      for (unsigned a = 0; a < 2; ++a)
        for (unsigned c = 0; c < 2; ++c)
          cells[BellBehavior::index(unary_gate_output(f, a), unary_gate_output(g, c), a, c)] +=
              weight;
    }
  }
  return BellBehavior::from_table(std::move(cells));  // also enforces total weight 1
}

namespace {

// Phase-1 simplex over exact rationals: minimize the sum of artificial
// variables subject to A w + artificials = rhs, w >= 0, rhs >= 0. Feasible
// iff the optimum is zero. Bland's rule throughout, so no cycling.
std::optional<std::vector<Rational>> solve_feasibility(
    const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& rhs) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a.front().size();
  const std::size_t cols = n + m;

  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][cols] = rhs[i];
    if (rhs[i] < 0) throw QueryError("feasibility rhs must be non-negative");
    basis[i] = n + i;
  }
  // Reduced-cost row for minimizing the artificial sum: z_j - c_j.
  std::vector<Rational> obj(cols + 1, Rational(0));
  for (std::size_t j = 0; j <= cols; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s += t[i][j];
    obj[j] = s;
  }
  for (std::size_t i = 0; i < m; ++i) obj[n + i] -= 1;

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (obj[j] > 0) {
        enter = j;
        break;  // Bland: smallest improving index
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      const Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) return std::nullopt;  // unbounded: cannot happen here, treat as infeasible
    const Rational pivot = t[leave][enter];
    for (auto& cell : t[leave]) cell /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational factor = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    if (obj[enter] != 0) {
      const Rational factor = obj[enter];
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }

  if (obj[cols] != 0) return std::nullopt;  // leftover artificial mass: infeasible
  std::vector<Rational> w(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) w[basis[i]] = t[i][cols];
  return w;
}

}  // namespace

std::optional<LocalModelWitness> local_decomposition(const BellBehavior& b) {
  // One equality per behaviour cell; the weight normalization is implied
  // because every strategy column sums to 1 per setting.
  std::vector<std::vector<Rational>> a(16, std::vector<Rational>(16, Rational(0)));
  std::vector<Rational> rhs(16);
  for (unsigned setting_a = 0; setting_a < 2; ++setting_a) {
    for (unsigned setting_c = 0; setting_c < 2; ++setting_c) {
      for (unsigned x = 0; x < 2; ++x) {
        for (unsigned z = 0; z < 2; ++z) {
          const std::size_t row = BellBehavior::index(x, z, setting_a, setting_c);
          rhs[row] = b.p(x, z, setting_a, setting_c);
          for (unsigned f = 0; f < 4; ++f)
            for (unsigned g = 0; g < 4; ++g)
              if (unary_gate_output(f, setting_a) == x && unary_gate_output(g, setting_c) == z)
                a[row][f * 4 + g] = 1;
        }
      }
    }
  }
  const auto w = solve_feasibility(a, rhs);
  if (!w) return std::nullopt;
  LocalModelWitness witness;
  std::copy(w->begin(), w->end(), witness.weights.begin());
  if (!(behavior_of_witness(witness) == b))
    throw InvariantError("feasibility solution fails exact reconstruction");
  return witness;
}

LocalityVerdict is_local(const BellBehavior& b, bool with_witness) {
  LocalityVerdict verdict;
  verdict.no_signalling = b.no_signalling();
  if (!verdict.no_signalling) {
    // CHSH facets are complete only inside the no-signalling set; decide
    // membership directly instead and flag the input.
    verdict.witness = local_decomposition(b);
    verdict.local = verdict.witness.has_value();
    if (!with_witness) verdict.witness.reset();
    return verdict;
  }
  verdict.local = chsh_value(b) <= 2;
  if (verdict.local && with_witness) {
    verdict.witness = local_decomposition(b);
    if (!verdict.witness)
      throw InvariantError("facet test accepted a behaviour the exact decomposition rejects");
  }
  return verdict;
}

BellBehavior behavior_from_model(const ClassicalCausalModel& m, const BellNodes& nodes,
                                 BehaviorMode mode, const EnumerationLimits& limits) {
  const CausalStructure& g = m.structure();
  for (const NodeId id : {nodes.a, nodes.c, nodes.x, nodes.z}) {
    g.require_node(id);
    if (!g.is_observed(id))
      throw QueryError("behaviour node '" + g.name(id) + "' is not observed");
    if (m.cardinality(id) != 2)
      throw QueryError("behaviour node '" + g.name(id) + "' is not binary");
  }
  const NodeSet outcomes = make_node_set({nodes.x, nodes.z});
  std::array<Rational, 16> cells;

  const auto fill_column = [&](unsigned a, unsigned c, const JointDistribution& d) {
    const std::size_t pos_x = d.position_of(nodes.x);
    const std::size_t pos_z = d.position_of(nodes.z);
    for (std::size_t idx = 0; idx < d.table_size(); ++idx) {
      const auto values = d.unrank(idx);
      cells[BellBehavior::index(values[pos_x], values[pos_z], a, c)] = d.at(idx);
    }
  };

  if (mode == BehaviorMode::do_intervention) {
    for (unsigned a = 0; a < 2; ++a) {
      for (unsigned c = 0; c < 2; ++c) {
        const Intervention iv{normalized_assignment({{nodes.a, a}, {nodes.c, c}})};
        fill_column(a, c, post_intervention_distribution(m, iv, outcomes, limits));
      }
    }
  } else {
    const NodeSet all = set_union(outcomes, make_node_set({nodes.a, nodes.c}));
    const JointDistribution joint = joint_distribution(m, all, limits);
    for (unsigned a = 0; a < 2; ++a) {
      for (unsigned c = 0; c < 2; ++c) {
        const Assignment given = normalized_assignment({{nodes.a, a}, {nodes.c, c}});
        fill_column(a, c, joint.conditional(outcomes, given));
      }
    }
  }
  return BellBehavior::from_table(std::move(cells));
}

JammingVerdict jamming_conditions(const ClassicalCausalModel& m, NodeId b_node, NodeId x_node,
                                  NodeId z_node, const EnumerationLimits& limits) {
  const CausalStructure& g = m.structure();
  for (const NodeId id : {b_node, x_node, z_node}) {
    g.require_node(id);
    if (!g.is_observed(id)) throw QueryError("jamming node '" + g.name(id) + "' is not observed");
  }
  const NodeSet bxz = make_node_set({b_node, x_node, z_node});
  const NodeSet xz = make_node_set({x_node, z_node});
  const JointDistribution joint = joint_distribution(m, bxz, limits);
  const JointDistribution p_xz = joint.marginal(xz);
  const JointDistribution p_x = joint.marginal({x_node});
  const JointDistribution p_z = joint.marginal({z_node});
  const JointDistribution p_b = joint.marginal({b_node});

  JammingVerdict verdict;
  bool any_b = false;
  for (std::uint32_t b = 0; b < m.cardinality(b_node); ++b) {
    if (p_b.at(b) == 0) {
      verdict.skipped_b_values.push_back(b);
      continue;
    }
    any_b = true;
    const Assignment given{{b_node, b}};
    if (!joint.conditional(xz, given).same_distribution(p_xz)) verdict.joint_dependence = true;
    if (!joint.conditional({x_node}, given).same_distribution(p_x))
      verdict.x_marginal_invariant = false;
    if (!joint.conditional({z_node}, given).same_distribution(p_z))
      verdict.z_marginal_invariant = false;
  }
  if (!any_b) throw ZeroProbabilityError("every value of the jamming node has probability zero");
  verdict.is_jamming =
      verdict.joint_dependence && verdict.x_marginal_invariant && verdict.z_marginal_invariant;
  return verdict;
}

}  // namespace causalst
