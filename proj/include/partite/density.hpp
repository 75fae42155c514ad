#pragma once

#include "partite/graph.hpp"
#include "partite/rational.hpp"

#include <cstdint>
#include <vector>

namespace partite {

/// Symmetric table of exact pairwise densities; the diagonal is unused.
class DensityMatrix {
public:
    DensityMatrix(int part_count, std::vector<Rational> upper);

    int part_count() const { return part_count_; }

    /// d(V_i, V_j) for i != j.
    const Rational& entry(int i, int j) const;

    /// min over i < j.
    Rational min_entry() const;

    /// Entries in (i, j) order with i < j.
    const std::vector<Rational>& upper_triangle() const { return upper_; }

    bool operator==(const DensityMatrix&) const = default;

private:
    int part_count_;
    std::vector<Rational> upper_;
};

/// Number of edges between parts i and j.
std::int64_t cross_edge_count(const MultipartiteGraph& g, int i, int j);

/// edge_count(i,j) / (|V_i|*|V_j|) as a reduced rational; i != j required.
Rational pairwise_density(const MultipartiteGraph& g, int i, int j);

/// All pairwise densities. The default implementation counts with bit-row
/// popcounts and parallelizes over vertices; the _serial variant is a naive
/// reference (per-pair adjacency scans) kept for cross-checking.
DensityMatrix density_matrix(const MultipartiteGraph& g);
DensityMatrix density_matrix_serial(const MultipartiteGraph& g);

Rational min_pairwise_density(const MultipartiteGraph& g);

/// Score of one edge xy with x in V_i, y in V_j:
///   s(xy) = d(x) - d_j(x) + d(y) - d_i(y),
/// i.e. both endpoint degrees minus the edges they send into each other's
/// parts. Always a nonnegative integer.
struct EdgeScore {
    int u, v;
    std::int64_t score;
    bool operator==(const EdgeScore&) const = default;
};

/// Per-edge scores plus both sides of the double-counting identity
///   sum_{xy in E} s(xy) = sum_x ( d(x)^2 - sum_j d_j(x)^2 ),
/// evaluated as exact integers.
struct EdgeScoreSummary {
    std::vector<EdgeScore> scores; // edges in (u, v) order, u < v
    std::int64_t score_total;
    std::int64_t degree_identity;
    bool identity_holds() const { return score_total == degree_identity; }
};

EdgeScoreSummary edge_scores(const MultipartiteGraph& g);
EdgeScoreSummary edge_scores_serial(const MultipartiteGraph& g);

} // namespace partite
