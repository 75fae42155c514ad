#pragma once

#include "partite/graph.hpp"

#include <cstdint>
#include <vector>

namespace partite {

/// Exact maximum independent set, computed as a maximum clique of the
/// complement with a greedy-coloring bound. `node_budget` caps branch-and-
/// bound nodes; exhausting it throws ResourceLimitError rather than returning
/// an approximate set.
std::vector<int> max_independent_set(const MultipartiteGraph& g,
                                     std::int64_t node_budget = 20'000'000);

} // namespace partite
