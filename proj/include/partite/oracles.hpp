#pragma once

#include "partite/density.hpp"
#include "partite/graph.hpp"
#include "partite/prng.hpp"
#include "partite/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace partite {

/// One checked inequality or predicate. Inequalities carry an exact margin;
/// `strict` records whether the underlying statement demands > rather than >=.
struct CheckItem {
    std::string label;
    bool ok;
    bool strict = false;
    std::optional<Rational> margin;
};

struct HypothesisReport {
    std::string hypothesis;
    bool holds; // every item ok
    std::vector<CheckItem> items;
};

/// Margins d_ij*d_ik + d_jk - 1 for the three choices of apex part i of a
/// 3-part density matrix.
std::array<Rational, 3> density_product_margins(const DensityMatrix& dm);

/// Hypothesis of the classical triangle criterion for 3-partite graphs:
/// d_ij*d_ik + d_jk > 1 for every labeling {i,j,k} = {1,2,3}. When it holds,
/// the graph must contain a triangle.
HypothesisReport check_density_product_hypothesis(const DensityMatrix& dm);
HypothesisReport check_density_product_hypothesis(const MultipartiteGraph& g);

/// Hypothesis of the independent-cover triangle criterion: X independent,
/// all three pairwise densities >= 1/2, |X ∩ V_i| >= |V_i|/2 for each part,
/// and at least two of those six inequalities strict. When it holds, the
/// graph must contain a triangle.
HypothesisReport check_independent_cover_hypothesis(const MultipartiteGraph& g,
                                                    const std::vector<int>& independent_set);

/// Independence-number bound for balanced l-partite graphs (parts of size n)
/// that are triangle-free with all pairwise densities >= 1/2: any independent
/// set X satisfies |X| <= (l+1)n/2. Unbalanced parts are invalid input; the
/// other hypotheses are checked and reported.
HypothesisReport check_independence_bound(const MultipartiteGraph& g,
                                          const std::vector<int>& independent_set);

struct RandomGraphConfig {
    int min_parts = 3, max_parts = 3;
    int min_part_size = 1, max_part_size = 6;
    double density_lo = 0.0, density_hi = 1.0;
};

/// Seeded random l-partite graph: per-pair target density drawn uniformly
/// from [density_lo, density_hi], then each cross edge sampled independently.
MultipartiteGraph random_multipartite(SplitMix64& rng, const RandomGraphConfig& cfg);

/// Random maximal independent set (greedy over a random vertex order).
std::vector<int> random_maximal_independent_set(SplitMix64& rng, const MultipartiteGraph& g);

enum class Suite { DensityProduct, IndependentCover, AlphaBound };
enum class TrialGenerator { Random, CompleteMultipartite, ExtremalBalanced };

/// CLI names: bondy2, lemma, alpha-bound (after the classical results the
/// suites exercise).
std::string suite_cli_name(Suite suite);
std::optional<Suite> suite_from_cli_name(const std::string& name);

struct SuiteConfig {
    Suite suite = Suite::DensityProduct;
    std::int64_t trials = 1000;
    std::uint64_t seed = 1;
    int parts = 3; // part count for triangle suites, max part count for alpha
    int max_part_size = 6;
    double density_lo = 0.5, density_hi = 1.0;
    TrialGenerator generator = TrialGenerator::Random;
    bool parallel = true;
};

/// A hypothesis-satisfying trial whose guaranteed conclusion failed. The
/// theorems say none can exist, so a violation is a bug detector for the
/// clique / density / independence code, and the offending graph is returned
/// as the falsifying artifact.
struct TrialViolation {
    std::int64_t trial;
    std::string detail;
    MultipartiteGraph graph;
};

struct SuiteReport {
    std::string suite;
    std::int64_t trials;
    std::int64_t hypothesis_hits;
    std::uint64_t seed;
    std::vector<TrialViolation> violations;
    std::int64_t wall_ms = 0;
};

/// Runs `trials` independent trials. Each trial derives its own PRNG stream
/// from (seed, trial index), so parallel and serial runs produce identical
/// reports (modulo wall_ms).
SuiteReport run_suite(const SuiteConfig& cfg);

} // namespace partite
