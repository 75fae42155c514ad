#include "partite/oracles.hpp"

#include "partite/clique.hpp"
#include "partite/extremal.hpp"
#include "partite/independent_set.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace partite {
namespace {

const Rational kHalf(1, 2);

std::vector<std::int64_t> per_part_counts(const MultipartiteGraph& g,
                                          const std::vector<int>& vertices) {
    std::vector<std::int64_t> counts(g.part_count(), 0);
    for (int v : vertices) {
        if (v < 0 || v >= g.vertex_count())
            throw std::invalid_argument("vertex set references unknown vertex " +
                                        std::to_string(v));
        ++counts[g.layout().part_of(v)];
    }
    return counts;
}

bool is_independent(const MultipartiteGraph& g, const std::vector<int>& vertices) {
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            if (g.adjacent(vertices[a], vertices[b])) return false;
    return true;
}

} // namespace

std::array<Rational, 3> density_product_margins(const DensityMatrix& dm) {
    if (dm.part_count() != 3)
        throw std::invalid_argument("density_product_margins: need exactly 3 parts");
    const Rational d01 = dm.entry(0, 1), d02 = dm.entry(0, 2), d12 = dm.entry(1, 2);
    return {d01 * d02 + d12 - Rational(1), // apex part 0
            d01 * d12 + d02 - Rational(1), // apex part 1
            d02 * d12 + d01 - Rational(1)}; // apex part 2
}

HypothesisReport check_density_product_hypothesis(const DensityMatrix& dm) {
    const auto margins = density_product_margins(dm);
    HypothesisReport report{"d_ij*d_ik + d_jk > 1 for all labelings", true, {}};
    for (int apex = 0; apex < 3; ++apex) {
        CheckItem item{"apex part " + std::to_string(apex), margins[apex] > Rational(0), true,
                       margins[apex]};
        report.holds = report.holds && item.ok;
        report.items.push_back(std::move(item));
    }
    return report;
}

HypothesisReport check_density_product_hypothesis(const MultipartiteGraph& g) {
    if (g.part_count() != 3)
        throw std::invalid_argument("check_density_product_hypothesis: need exactly 3 parts");
    return check_density_product_hypothesis(density_matrix(g));
}

HypothesisReport check_independent_cover_hypothesis(const MultipartiteGraph& g,
                                                    const std::vector<int>& independent_set) {
    if (g.part_count() != 3)
        throw std::invalid_argument("check_independent_cover_hypothesis: need exactly 3 parts");
    HypothesisReport report{"independent cover forces a triangle", true, {}};

    report.items.push_back({"X independent", is_independent(g, independent_set), false, {}});

    const DensityMatrix dm = density_matrix(g);
    int strict = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const Rational margin = dm.entry(i, j) - kHalf;
            if (margin > Rational(0)) ++strict;
            report.items.push_back({"d(V_" + std::to_string(i) + ",V_" + std::to_string(j) +
                                        ") >= 1/2",
                                    margin >= Rational(0), false, margin});
        }
    const auto counts = per_part_counts(g, independent_set);
    for (int i = 0; i < 3; ++i) {
        const Rational margin =
            Rational(counts[i], g.layout().part_size(i)) - kHalf;
        if (margin > Rational(0)) ++strict;
        report.items.push_back({"|X ∩ V_" + std::to_string(i) + "| >= |V_" + std::to_string(i) +
                                    "|/2",
                                margin >= Rational(0), false, margin});
    }
    report.items.push_back({"at least two of the six inequalities strict", strict >= 2, false,
                            Rational(strict - 2)});
    for (const auto& item : report.items) report.holds = report.holds && item.ok;
    return report;
}

HypothesisReport check_independence_bound(const MultipartiteGraph& g,
                                          const std::vector<int>& independent_set) {
    const int l = g.part_count();
    const int n = g.layout().part_size(0);
    for (int i = 1; i < l; ++i)
        if (g.layout().part_size(i) != n)
            throw std::invalid_argument("check_independence_bound: parts must be balanced");

    HypothesisReport report{"independence number bound |X| <= (l+1)n/2", true, {}};
    const Rational min_margin = min_pairwise_density(g) - kHalf;
    report.items.push_back({"min pairwise density >= 1/2", min_margin >= Rational(0), false,
                            min_margin});
    report.items.push_back({"triangle-free", !find_clique(g, 3).has_value(), false, {}});
    report.items.push_back({"X independent", is_independent(g, independent_set), false, {}});
    const Rational bound_margin =
        Rational(static_cast<std::int64_t>(l + 1) * n, 2) -
        Rational(static_cast<std::int64_t>(independent_set.size()));
    report.items.push_back({"|X| <= (l+1)n/2", bound_margin >= Rational(0), false, bound_margin});
    for (const auto& item : report.items) report.holds = report.holds && item.ok;
    return report;
}

MultipartiteGraph random_multipartite(SplitMix64& rng, const RandomGraphConfig& cfg) {
    if (cfg.min_parts < 2 || cfg.max_parts < cfg.min_parts || cfg.min_part_size < 1 ||
        cfg.max_part_size < cfg.min_part_size)
        throw std::invalid_argument("random_multipartite: bad configuration");
    const int l = cfg.min_parts +
                  static_cast<int>(rng.below(cfg.max_parts - cfg.min_parts + 1));
    std::vector<int> sizes(l);
    for (int i = 0; i < l; ++i)
        sizes[i] = cfg.min_part_size +
                   static_cast<int>(rng.below(cfg.max_part_size - cfg.min_part_size + 1));
    PartLayout layout = PartLayout::from_sizes(sizes);
    AdjacencyMatrix adj(layout.vertex_count());
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) {
            const double p = cfg.density_lo + rng.unit() * (cfg.density_hi - cfg.density_lo);
            for (int u = layout.part_begin(i); u < layout.part_end(i); ++u)
                for (int v = layout.part_begin(j); v < layout.part_end(j); ++v)
                    if (rng.chance(p)) adj.set(u, v);
        }
    return {std::move(layout), std::move(adj)};
}

std::vector<int> random_maximal_independent_set(SplitMix64& rng, const MultipartiteGraph& g) {
    std::vector<int> order(g.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    for (int i = g.vertex_count() - 1; i > 0; --i)
        std::swap(order[i], order[rng.below(i + 1)]);
    std::vector<int> picked;
    for (int v : order) {
        bool ok = true;
        for (int u : picked)
            if (g.adjacent(u, v)) {
                ok = false;
                break;
            }
        if (ok) picked.push_back(v);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

std::string suite_cli_name(Suite suite) {
    switch (suite) {
    case Suite::DensityProduct: return "bondy2";
    case Suite::IndependentCover: return "lemma";
    case Suite::AlphaBound: return "alpha-bound";
    }
    return "?";
}

std::optional<Suite> suite_from_cli_name(const std::string& name) {
    if (name == "bondy2") return Suite::DensityProduct;
    if (name == "lemma") return Suite::IndependentCover;
    if (name == "alpha-bound") return Suite::AlphaBound;
    return std::nullopt;
}

namespace {

MultipartiteGraph trial_graph(SplitMix64& rng, const SuiteConfig& cfg) {
    switch (cfg.generator) {
    case TrialGenerator::Random: {
        RandomGraphConfig rc;
        rc.min_parts = rc.max_parts = cfg.parts;
        rc.max_part_size = cfg.max_part_size;
        rc.density_lo = cfg.density_lo;
        rc.density_hi = cfg.density_hi;
        return random_multipartite(rng, rc);
    }
    case TrialGenerator::CompleteMultipartite: {
        RandomGraphConfig rc;
        rc.min_parts = rc.max_parts = cfg.parts;
        rc.max_part_size = cfg.max_part_size;
        rc.density_lo = rc.density_hi = 1.0;
        return random_multipartite(rng, rc);
    }
    case TrialGenerator::ExtremalBalanced: {
        const std::int64_t c =
            1 + static_cast<std::int64_t>(rng.below(std::max(1, cfg.max_part_size / 2)));
        return generate_extremal(ExtremalParams::balanced(3, cfg.parts, c)).graph;
    }
    }
    throw std::invalid_argument("trial_graph: unknown generator");
}

/// Returns violation detail, or empty when the trial is clean; counts a
/// hypothesis hit through `hit`.
std::string run_trial(const SuiteConfig& cfg, std::int64_t trial, bool& hit,
                      std::optional<MultipartiteGraph>& bad_graph) {
    SplitMix64 rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    hit = false;
    switch (cfg.suite) {
    case Suite::DensityProduct: {
        MultipartiteGraph g = trial_graph(rng, cfg);
        const HypothesisReport report = check_density_product_hypothesis(g);
        if (!report.holds) return {};
        hit = true;
        if (find_clique(g, 3)) return {};
        bad_graph = std::move(g);
        return "hypothesis holds but no triangle found";
    }
    case Suite::IndependentCover: {
        MultipartiteGraph g = trial_graph(rng, cfg);
        const auto x = random_maximal_independent_set(rng, g);
        const HypothesisReport report = check_independent_cover_hypothesis(g, x);
        if (!report.holds) return {};
        hit = true;
        if (find_clique(g, 3)) return {};
        bad_graph = std::move(g);
        return "independent cover hypothesis holds but no triangle found";
    }
    case Suite::AlphaBound: {
        const int max_l = std::max(3, cfg.parts);
        const int l = 3 + static_cast<int>(rng.below(max_l - 2));
        const std::int64_t c =
            1 + static_cast<std::int64_t>(rng.below(std::max(1, cfg.max_part_size / 2)));
        ExtremalParams params = ExtremalParams::balanced(3, l, c);
        ExtremalGraph member = generate_extremal(params);

        // Random permitted deletions between the first two parts.
        DeletionList deletions;
        const auto& cls = member.coloring.classes;
        const auto& layout = member.graph.layout();
        for (int u = layout.part_begin(0); u < layout.part_end(0); ++u)
            for (int v = layout.part_begin(1); v < layout.part_end(1); ++v)
                if (cls[u] != cls[v] && rng.chance(0.3)) deletions.push_back({u, v});
        MultipartiteGraph g = generate_extremal(params, deletions).graph;
        if (rng.chance(0.5)) {
            const std::vector<int> factors(g.vertex_count(), 2);
            g = blow_up(g, factors).graph;
        }

        if (min_pairwise_density(g) < kHalf) return {}; // deletions broke the hypothesis
        if (find_clique(g, 3)) {
            bad_graph = std::move(g);
            return "family member contains a triangle"; // impossible by construction
        }
        hit = true;
        const auto alpha = max_independent_set(g);
        const HypothesisReport report = check_independence_bound(g, alpha);
        if (report.holds) return {};
        bad_graph = std::move(g);
        return "independence bound violated: |X| = " + std::to_string(alpha.size());
    }
    }
    throw std::invalid_argument("run_trial: unknown suite");
}

} // namespace

SuiteReport run_suite(const SuiteConfig& cfg) {
    if (cfg.trials < 0) throw std::invalid_argument("run_suite: negative trial count");
    const auto start = std::chrono::steady_clock::now();

    std::int64_t hits = 0;
    std::vector<TrialViolation> violations;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : hits) if (cfg.parallel)
    for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
        bool hit = false;
        std::optional<MultipartiteGraph> bad;
        const std::string detail = run_trial(cfg, trial, hit, bad);
        if (hit) ++hits;
        if (!detail.empty()) {
#pragma omp critical(partite_suite_violations)
            violations.push_back({trial, detail, std::move(*bad)});
        }
    }
    std::sort(violations.begin(), violations.end(),
              [](const TrialViolation& a, const TrialViolation& b) { return a.trial < b.trial; });

    const auto elapsed = std::chrono::steady_clock::now() - start;
    return {suite_cli_name(cfg.suite),
            cfg.trials,
            hits,
            cfg.seed,
            std::move(violations),
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()};
}

} // namespace partite
