#pragma once

#include "partite/graph.hpp"

#include <optional>
#include <vector>

namespace partite {

/// Finds k pairwise-adjacent vertices, or nullopt if none exist. Any clique
/// in an l-partite graph is transversal (parts are independent sets), so the
/// search walks parts in ascending-size order (ties by part index), keeps the
/// running common neighborhood as a bit row, and prunes a branch as soon as
/// the remaining parts cannot complete the clique. k > l returns nullopt
/// immediately; k < 1 is invalid.
std::optional<std::vector<int>> find_clique(const MultipartiteGraph& g, int k);

namespace detail {

/// Kernel shared with search-time states that mutate their own adjacency.
std::optional<std::vector<int>> find_clique(const PartLayout& layout,
                                            const AdjacencyMatrix& adj, int k);

/// A k-clique containing the edge uv, if any. Used by the local-search
/// repair step, where every new clique must pass through the toggled edge.
std::optional<std::vector<int>> find_clique_with_edge(const PartLayout& layout,
                                                      const AdjacencyMatrix& adj, int u,
                                                      int v, int k);

} // namespace detail
} // namespace partite
