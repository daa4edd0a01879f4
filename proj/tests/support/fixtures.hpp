#pragma once

#include "causalst/model.hpp"

namespace causalst::testing {

// Relay fixture used across the suites: settings A, C feed relay B = A.C,
// a hidden fair coin L feeds both outputs, X = L and Z = L xor B.
inline CausalStructure relay_graph() {
  return CausalStructure({{"A", NodeRole::observed},
                          {"C", NodeRole::observed},
                          {"B", NodeRole::observed},
                          {"X", NodeRole::observed},
                          {"Z", NodeRole::observed},
                          {"L", NodeRole::unobserved}},
                         {{"A", "B"}, {"C", "B"}, {"L", "X"}, {"L", "Z"}, {"B", "Z"}});
}

inline ClassicalCausalModel relay_model(
    std::vector<Rational> hidden_pmf = {Rational(1, 2), Rational(1, 2)}) {
  return ModelBuilder(relay_graph())
      .mechanism("B", MechanismPrimitive::conjunction)
      .mechanism("X", MechanismPrimitive::identity)
      .mechanism("Z", MechanismPrimitive::exclusive_or)
      .exogenous("L", std::move(hidden_pmf))
      .build();
}

}  // namespace causalst::testing
