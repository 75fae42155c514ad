#pragma once

#include "partite/graph.hpp"
#include "partite/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace partite {

/// Parameters of the class-structured family: l parts, k-1 class labels, and
/// a table class_sizes[i][s] giving how many vertices of part i carry class
/// s. Vertices of distinct parts are joined exactly when their classes
/// differ, so every clique takes at most one vertex per class and the graphs
/// are K^k-free by construction.
struct ExtremalParams {
    int k = 3;
    int part_count = 0;
    std::vector<std::vector<std::int64_t>> class_sizes; // part_count rows, k-1 columns

    /// All n_i^s equal to `size`.
    static ExtremalParams balanced(int k, int part_count, std::int64_t size = 1);
};

struct ParamViolation {
    std::string message;
};

/// Checks the family's parameter constraints:
///   - shape: k >= 3, part_count >= (k-1)!, rows of k-1 nonnegative entries;
///   - for i < (k-1)!: row i sorted descending under the i-th permutation of
///     the classes (lexicographic enumeration);
///   - for i >= (k-1)!: all entries of row i equal;
///   - every row sums to something positive.
/// Violations are data, not errors; an empty list means the params are valid.
std::vector<ParamViolation> validate_params(const ExtremalParams& params);

/// All permutations of {0..m-1} in lexicographic order.
std::vector<std::vector<int>> lexicographic_permutations(int m);

/// Class label per vertex (0-based, values in 0..k-2).
struct ClassColoring {
    std::vector<int> classes;
    bool operator==(const ClassColoring&) const = default;
};

/// Edges to remove from the full construction, as vertex-id pairs of the
/// generated graph. Permitted deletions join distinct classes of distinct
/// parts that both lie among the first (k-1)! parts.
using DeletionList = std::vector<std::pair<int, int>>;

struct ExtremalGraph {
    MultipartiteGraph graph;
    ClassColoring coloring;
};

/// Builds the family member for `params` minus `deletions`. Throws
/// std::invalid_argument if the params are invalid or a deletion pair is
/// malformed (same class, unknown id, or a part outside the first (k-1)!).
ExtremalGraph generate_extremal(const ExtremalParams& params,
                                const DeletionList& deletions = {});

struct DensityShortfall {
    int i, j;
    Rational density;
    Rational threshold;
};

/// All part pairs with d_ij < (k-2)/(k-1), exact comparison. Empty result
/// means the density hypothesis for forcing K^k holds.
std::vector<DensityShortfall> check_density_condition(const MultipartiteGraph& g, int k);

struct ZonePairInfo {
    int part_i, part_j;
    std::int64_t deleted_edges;
    Rational density; // pairwise density of the pair after deletions
};

/// Witness that a graph belongs to the family: a class labeling, the
/// permutation slot assigned to each of the first (k-1)! parts, and, for
/// every zone pair that actually carries deletions, its residual density
/// (reported, not judged: for k = 3 extremality additionally wants the zone
/// density to stay >= 1/2, which callers can read off here).
struct MembershipWitness {
    ClassColoring coloring;
    std::vector<int> slot_of_part;
    std::vector<ZonePairInfo> zone_pairs;
};

/// Structural membership test. The partition and the part order are taken as
/// given: deletions are recognized only between the first (k-1)! parts.
/// Class labels are free, and the assignment of the first (k-1)! parts to
/// permutation slots is free. Labeling is found by constraint propagation
/// (forced same-class / forced distinct-class relations) plus backtracking
/// over the residual choices; `budget` caps backtracking nodes and exhausting
/// it throws ResourceLimitError. Requires part_count >= (k-1)!.
std::optional<MembershipWitness> check_membership(const MultipartiteGraph& g, int k,
                                                  std::int64_t budget = 1'000'000);

} // namespace partite
