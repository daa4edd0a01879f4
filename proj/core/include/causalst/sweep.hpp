#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "causalst/rational.hpp"
#include "causalst/scenarios.hpp"
#include "causalst/spacetime.hpp"

namespace causalst {

/// Brute-force verification over all classical models allowed by
/// no-superluminal-causation in the canonical task geometries.
///
/// Task 1 (inputs precede their own outputs): outputs are arbitrary
/// functions X = f(A, L), Z = g(C, L) of a shared k-ary latent. Every
/// model must stay within the local set: all CHSH values at most 2, an
/// exact local decomposition, and the three proof-trace conditional
/// independences (latent independent of the settings; outputs independent
/// given latent and settings; each output independent of the remote
/// setting given the latent and its own setting).
///
/// Task 2 (all four pairwise spacelike): X = f(L), Z = g(L); every
/// behaviour must be settings-independent, column for column.
struct SweepConfig {
  int task = 1;
  std::uint32_t latent_k = 4;
  enum class Mode { exhaustive, sampled } mode = Mode::exhaustive;
  std::uint64_t budget = 100000;  ///< sampled mode only
  std::uint64_t seed = 1;         ///< sampled mode only
  enum class LambdaDists { uniform_only, rational_grid } lambda_dists = LambdaDists::uniform_only;
  std::uint32_t grid_max_denominator = 4;
  std::uint64_t max_models = std::uint64_t(1) << 20;  ///< exhaustive cap
  bool proof_trace = true;
};

struct SweepCounterexample {
  std::uint64_t model_index = 0;
  std::string what;
  std::string f_table;
  std::string g_table;
  std::string lambda_pmf;
};

struct SweepReport {
  SweepConfig config;
  std::uint64_t models_checked = 0;
  Rational max_chsh = 0;       ///< task 1
  Rational max_column_tv = 0;  ///< task 2: largest TV distance between setting columns
  std::uint64_t counterexample_count = 0;
  std::vector<SweepCounterexample> counterexamples;  ///< first few, see kMaxRecorded
  static constexpr std::size_t kMaxRecorded = 10;
};

/// Every directed edge the no-superluminal-causation principle admits
/// between the located nodes: from weakly precedes to, with edges into the
/// free-choice nodes excluded. All listed nodes must be located.
struct AllowedEdge {
  std::string from, to;
};
std::vector<AllowedEdge> nsc_allowed_edges(std::span<const std::string> nodes,
                                           const std::vector<std::string>& free_nodes,
                                           const Embedding& e);

/// The canonical sweep geometry for a task: inputs, outputs and the latent
/// at the canonical coordinates (no relay node).
Embedding sweep_embedding(int task);

SweepReport run_sweep(const SweepConfig& config);

}  // namespace causalst
