#include "causalst/sweep.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "causalst/correlations.hpp"
#include "causalst/dseparation.hpp"

namespace causalst {

namespace {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  for (;;) {
    const std::uint64_t v = rng();
    if (v < limit) return v % n;
  }
}

// All pmfs over `k` outcomes whose entries are rationals with denominator
// at most `d`, enumerated depth-first in ascending entry order.
std::vector<std::vector<Rational>> rational_grid_pmfs(std::uint32_t k, std::uint32_t d) {
  std::vector<Rational> values;
  for (std::uint32_t den = 1; den <= d; ++den)
    for (std::uint32_t num = 0; num <= den; ++num) values.emplace_back(num, den);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<std::vector<Rational>> out;
  std::vector<Rational> current(k);
  const auto recurse = [&](auto&& self, std::uint32_t pos, const Rational& remaining) -> void {
    if (pos + 1 == k) {
      if (std::binary_search(values.begin(), values.end(), remaining)) {
        current[pos] = remaining;
        out.push_back(current);
      }
      return;
    }
    for (const Rational& v : values) {
      if (v > remaining) break;
      current[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  recurse(recurse, 0, Rational(1));
  return out;
}

std::string bits_string(std::uint64_t mask, std::size_t rows) {
  std::string s(rows, '0');
  for (std::size_t i = 0; i < rows; ++i)
    if ((mask >> i) & 1) s[i] = '1';
  return s;
}

std::string pmf_string(const std::vector<Rational>& pmf) {
  std::string s;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    if (i) s += ",";
    s += format_rational(pmf[i]);
  }
  return s;
}

struct SweepFixture {
  CausalStructure structure;
  NodeId a, c, x, z, l;
  std::vector<NodeId> x_parents;  // name-sorted, defines f's table indexing
  std::vector<NodeId> z_parents;
  std::size_t f_rows = 1, g_rows = 1;
};

SweepFixture make_fixture(const SweepConfig& cfg, const Embedding& e) {
  const std::vector<std::string> names{"A", "C", "X", "Z", "L"};
  const auto allowed = nsc_allowed_edges(names, {"A", "C"}, e);
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& ae : allowed) edges.emplace_back(ae.from, ae.to);
  CausalStructure g({{"A", NodeRole::observed},
                     {"C", NodeRole::observed},
                     {"X", NodeRole::observed},
                     {"Z", NodeRole::observed},
                     {"L", NodeRole::unobserved}},
                    edges);
  SweepFixture fx{std::move(g)};
  fx.a = fx.structure.node("A");
  fx.c = fx.structure.node("C");
  fx.x = fx.structure.node("X");
  fx.z = fx.structure.node("Z");
  fx.l = fx.structure.node("L");
  const auto by_name = [&](NodeId p, NodeId q) {
    return fx.structure.name(p) < fx.structure.name(q);
  };
  const auto xp = fx.structure.parents(fx.x);
  const auto zp = fx.structure.parents(fx.z);
  fx.x_parents.assign(xp.begin(), xp.end());
  fx.z_parents.assign(zp.begin(), zp.end());
  std::sort(fx.x_parents.begin(), fx.x_parents.end(), by_name);
  std::sort(fx.z_parents.begin(), fx.z_parents.end(), by_name);
  for (const NodeId p : fx.x_parents) fx.f_rows *= (p == fx.l ? cfg.latent_k : 2);
  for (const NodeId p : fx.z_parents) fx.g_rows *= (p == fx.l ? cfg.latent_k : 2);
  if (fx.f_rows > 62 || fx.g_rows > 62)
    throw BoundExceededError("latent cardinality makes the function space unenumerable");
  return fx;
}

ClassicalCausalModel make_model(const SweepFixture& fx, std::uint32_t latent_k,
                                std::uint64_t f_mask, std::uint64_t g_mask,
                                const std::vector<Rational>& lambda_pmf) {
  const std::size_t n = fx.structure.node_count();
  std::vector<Alphabet> alphabets(n, Alphabet{2});
  alphabets[fx.l.value] = Alphabet{latent_k};
  std::vector<std::optional<Mechanism>> mechanisms(n);
  std::vector<std::optional<ExogenousDistribution>> exogenous(n);

  std::vector<std::uint32_t> f_table(fx.f_rows), g_table(fx.g_rows);
  for (std::size_t i = 0; i < fx.f_rows; ++i) f_table[i] = (f_mask >> i) & 1;
  for (std::size_t i = 0; i < fx.g_rows; ++i) g_table[i] = (g_mask >> i) & 1;
  mechanisms[fx.x.value] = Mechanism(fx.x, fx.x_parents, std::move(f_table));
  mechanisms[fx.z.value] = Mechanism(fx.z, fx.z_parents, std::move(g_table));

  const std::vector<Rational> half{Rational(1, 2), Rational(1, 2)};
  exogenous[fx.a.value] = ExogenousDistribution{fx.a, half};
  exogenous[fx.c.value] = ExogenousDistribution{fx.c, half};
  exogenous[fx.l.value] = ExogenousDistribution{fx.l, lambda_pmf};
  return ClassicalCausalModel(fx.structure, std::move(alphabets), std::move(mechanisms),
                              std::move(exogenous));
}

}  // namespace

std::vector<AllowedEdge> nsc_allowed_edges(std::span<const std::string> nodes,
                                           const std::vector<std::string>& free_nodes,
                                           const Embedding& e) {
  for (const auto& n : nodes)
    if (!e.located(n)) throw QueryError("node '" + n + "' is not located");
  std::vector<AllowedEdge> out;
  for (const auto& from : nodes) {
    for (const auto& to : nodes) {
      if (from == to) continue;
      if (std::find(free_nodes.begin(), free_nodes.end(), to) != free_nodes.end()) continue;
      if (at_or_before(e.compare(from, to))) out.push_back({from, to});
    }
  }
  return out;
}

Embedding sweep_embedding(int task) {
  if (task != 1 && task != 2) throw QueryError("task must be 1 or 2");
  std::map<std::string, MinkowskiPoint> loc{
      {"A", {0, 0}},
      {"C", {0, 4}},
      {"X", task == 1 ? MinkowskiPoint{1, 0} : MinkowskiPoint{0, -1}},
      {"Z", task == 1 ? MinkowskiPoint{1, 4} : MinkowskiPoint{0, 5}},
      {"L", {-5, 2}}};
  return Embedding::minkowski(std::move(loc));
}

SweepReport run_sweep(const SweepConfig& config) {
  if (config.latent_k < 1) throw QueryError("latent cardinality must be at least 1");
  const Embedding embedding = sweep_embedding(config.task);
  const SweepFixture fx = make_fixture(config, embedding);
  const BellNodes nodes{fx.a, fx.c, fx.x, fx.z};

  std::vector<std::vector<Rational>> lambda_pmfs;
  if (config.lambda_dists == SweepConfig::LambdaDists::uniform_only) {
    lambda_pmfs.push_back(
        std::vector<Rational>(config.latent_k, Rational(1, config.latent_k)));
  } else {
    lambda_pmfs = rational_grid_pmfs(config.latent_k, config.grid_max_denominator);
  }

  const std::uint64_t f_count = std::uint64_t(1) << fx.f_rows;
  const std::uint64_t g_count = std::uint64_t(1) << fx.g_rows;

  SweepReport report;
  report.config = config;

  // Proof-trace node sets, resolved once.
  const NodeSet set_l{fx.l};
  const NodeSet set_ac = normalized_node_set({fx.a, fx.c});
  const NodeSet set_x{fx.x};
  const NodeSet set_z{fx.z};
  const NodeSet set_la = normalized_node_set({fx.l, fx.a});
  const NodeSet set_lc = normalized_node_set({fx.l, fx.c});
  const NodeSet set_lac = normalized_node_set({fx.l, fx.a, fx.c});
  const NodeSet all_nodes = fx.structure.all_nodes();

  const auto check_model = [&](std::uint64_t model_index, std::uint64_t f_mask,
                               std::uint64_t g_mask, const std::vector<Rational>& lambda_pmf) {
    const ClassicalCausalModel model = make_model(fx, config.latent_k, f_mask, g_mask, lambda_pmf);
    const BellBehavior behavior =
        behavior_from_model(model, nodes, BehaviorMode::do_intervention);
    std::vector<std::string> failures;

    if (config.task == 1) {
      const Rational chsh = chsh_value(behavior);
      if (chsh > report.max_chsh) report.max_chsh = chsh;
      if (chsh > 2) failures.push_back("CHSH value " + format_rational(chsh) + " exceeds 2");
      const LocalityVerdict verdict = is_local(behavior, true);
      if (!verdict.local || !verdict.witness)
        failures.push_back("behaviour admits no local decomposition");
      if (config.proof_trace) {
        const JointDistribution joint = joint_distribution(model, all_nodes);
        if (!conditionally_independent(joint, set_l, set_ac, {}))
          failures.push_back("proof trace: latent correlates with the settings");
        if (!conditionally_independent(joint, set_x, set_z, set_lac))
          failures.push_back("proof trace: outputs correlate given latent and settings");
        if (!conditionally_independent(joint, set_x, {fx.c}, set_la))
          failures.push_back("proof trace: X depends on the remote setting");
        if (!conditionally_independent(joint, set_z, {fx.a}, set_lc))
          failures.push_back("proof trace: Z depends on the remote setting");
      }
    } else {
      // Settings independence: all four columns must agree exactly.
      for (unsigned s = 1; s < 4; ++s) {
        Rational tv = 0;
        for (unsigned o = 0; o < 4; ++o)
          tv += rational_abs(behavior.cells()[s * 4 + o] - behavior.cells()[o]);
        tv /= 2;
        if (tv > report.max_column_tv) report.max_column_tv = tv;
        if (tv != 0)
          failures.push_back("behaviour column " + std::to_string(s) +
                             " differs from column 0 by TV " + format_rational(tv));
      }
    }

    ++report.models_checked;
    for (const auto& what : failures) {
      ++report.counterexample_count;
      if (report.counterexamples.size() < SweepReport::kMaxRecorded) {
        report.counterexamples.push_back({model_index, what, bits_string(f_mask, fx.f_rows),
                                          bits_string(g_mask, fx.g_rows),
                                          pmf_string(lambda_pmf)});
      }
    }
  };

  if (config.mode == SweepConfig::Mode::exhaustive) {
    const std::uint64_t total = f_count * g_count * lambda_pmfs.size();
    if (fx.f_rows + fx.g_rows >= 62 || total > config.max_models)
      throw BoundExceededError("exhaustive sweep of " + std::to_string(total) +
                               " models exceeds the cap of " + std::to_string(config.max_models));
    std::uint64_t index = 0;
    for (const auto& pmf : lambda_pmfs)
      for (std::uint64_t f = 0; f < f_count; ++f)
        for (std::uint64_t g = 0; g < g_count; ++g) check_model(index++, f, g, pmf);
  } else {
    std::mt19937_64 rng(config.seed);
    for (std::uint64_t i = 0; i < config.budget; ++i) {
      const std::uint64_t f = uniform_below(rng, f_count);
      const std::uint64_t g = uniform_below(rng, g_count);
      const std::size_t pmf_index =
          lambda_pmfs.size() == 1 ? 0 : uniform_below(rng, lambda_pmfs.size());
      check_model(i, f, g, lambda_pmfs[pmf_index]);
    }
  }
  return report;
}

}  // namespace causalst
