#pragma once

#include "causalst/graph.hpp"

namespace causalst {

/// True iff every undirected path between `x` and `y` is blocked by `z`:
/// a chain or fork centre on the path that lies in `z`, or a collider
/// centre with neither itself nor any of its descendants in `z`.
///
/// Runs the linear-time active-trail reachability procedure (ancestor
/// marking plus a BFS over (node, entry-direction) states) rather than
/// enumerating paths. Roles play no part here: unobserved nodes separate
/// and connect exactly like observed ones.
///
/// Throws QueryError if `x` or `y` is empty or if the three sets overlap.
bool d_separated(const CausalStructure& g, const NodeSet& x, const NodeSet& y, const NodeSet& z);

}  // namespace causalst
