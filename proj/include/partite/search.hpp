#pragma once

#include "partite/graph.hpp"
#include "partite/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace partite {

enum class SearchMode { Exhaustive, Anneal, Tabu };
enum class InitialKind { Empty, ExtremalSeed, File };

std::string mode_cli_name(SearchMode mode);
std::optional<SearchMode> mode_from_cli_name(const std::string& name);

/// Balanced search space: part_count parts of part_size vertices each, and
/// the objective is to maximize the minimum pairwise density subject to the
/// graph staying K^k-free. The full objective is lexicographic: min density,
/// then total edges, then the sorted density vector.
struct SearchConfig {
    int k = 3;
    int part_count = 3;
    int part_size = 1;
    SearchMode mode = SearchMode::Anneal;
    std::uint64_t seed = 1;
    std::int64_t iteration_budget = 100'000;

    InitialKind initial = InitialKind::Empty;
    std::string initial_path;                       // echo only; CLI loads the file
    std::optional<MultipartiteGraph> initial_graph; // required when initial == File

    /// Annealing: restarts run in parallel on independent PRNG substreams and
    /// the best result wins (ties to the lowest restart index), so parallel
    /// and serial runs agree. T0 is set so a minimal worsening move (one edge
    /// off a minimum pair, density loss 1/n^2) starts at ~50% acceptance;
    /// cooling is geometric down to cooling_ratio * T0 over the budget.
    int restarts = 4;
    double cooling_ratio = 1e-4;

    /// Tabu: each iteration scores a sample of candidate toggles, skips slots
    /// toggled within the last tenure iterations (aspiration: a candidate
    /// beating the best-seen minimum is always allowed) and applies the best.
    int tabu_tenure = 50;
    int tabu_candidates = 24;

    bool parallel = true;
};

struct SearchTrace {
    std::int64_t iterations = 0; // summed over restarts
    std::int64_t accepted = 0;
    std::int64_t repairs = 0;
    std::int64_t improvements = 0;
    std::int64_t best_iteration = 0; // within the winning restart
    int best_restart = 0;
    std::int64_t states_examined = 0; // exhaustive mode
};

struct SearchResult {
    SearchConfig config;
    MultipartiteGraph graph;
    Rational min_density; // equals min_pairwise_density(graph) exactly
    bool kfree_verified;  // re-verified post hoc (brute force when |V| <= 14)
    SearchTrace trace;
};

/// Provably optimal max-min density over all labeled graphs on the fixed
/// partition. Enumerates every subset of the cross-part edge slots, so it
/// requires part_count*part_size <= 14 and at most 28 slots; anything larger
/// is rejected. The default implementation splits the mask space into chunks
/// across threads; the _serial variant is the sequential reference.
SearchResult exhaustive_frontier(const SearchConfig& cfg);
SearchResult exhaustive_frontier_serial(const SearchConfig& cfg);

/// Seeded stochastic search (anneal or tabu). Moves toggle cross-part edges,
/// favoring the currently minimal pair; a move that creates a K^k is repaired
/// by deleting the clique edge whose pair density stays highest (ties by
/// vertex ids). Returns the best K^k-free state seen. Deterministic given the
/// config, including the seed.
SearchResult local_search(const SearchConfig& cfg);

struct ExperimentOverrides {
    std::optional<std::int64_t> iters;
    std::optional<std::uint64_t> seed;
    std::optional<int> k, l, n;
};

struct ExperimentRun {
    SearchResult result;
    Rational anchor;   // the relevant threshold for this preset
    bool above_anchor; // strictly above
};

struct ExperimentReport {
    std::string preset;
    int k;
    std::vector<std::pair<std::string, std::string>> anchors; // label -> exact value
    std::vector<ExperimentRun> runs;
};

/// Scripted batteries over (l, n, seed) grids:
///   d33    — 3 parts: exhaustive at n <= 2, annealing above; anchored by the
///            golden-ratio proxy 6181/10000 from above and 1/2 from below.
///   d34    — 4 parts, seeded from the balanced family member; records
///            whether any run beats 1/2.
///   d35    — 5 parts; report only (whether 1/2 can be beaten here is open).
///   d-k-ell — general k (default 4), seeded from the family member;
///            anchored by (k-2)/(k-1).
ExperimentReport run_experiment(const std::string& preset,
                                const ExperimentOverrides& overrides = {});

} // namespace partite
