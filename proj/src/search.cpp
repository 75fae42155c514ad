#include "partite/search.hpp"

#include "partite/clique.hpp"
#include "partite/density.hpp"
#include "partite/extremal.hpp"
#include "partite/prng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace partite {
namespace {

constexpr int kMaxExhaustiveVertices = 14;
// Full enumeration walks 2^slots states; past ~28 slots that stops finishing
// in minutes regardless of the vertex bound.
constexpr int kMaxExhaustiveSlots = 28;

int pair_index(int l, int i, int j) {
    if (i > j) std::swap(i, j);
    return i * l - i * (i + 1) / 2 + (j - i - 1);
}

std::vector<std::pair<int, int>> pair_list(int l) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) pairs.push_back({i, j});
    return pairs;
}

PartLayout balanced_layout(int l, int n) {
    std::vector<int> sizes(l, n);
    return PartLayout::from_sizes(sizes);
}

/// Lexicographic objective as integers; all part pairs share the denominator
/// n^2, so densities compare as raw edge counts.
struct Objective {
    std::int64_t min_count = -1;
    std::int64_t edges = -1;
    std::vector<std::int64_t> sorted_counts; // ascending

    static Objective of(const std::vector<std::int64_t>& pair_counts) {
        Objective o;
        o.sorted_counts = pair_counts;
        std::sort(o.sorted_counts.begin(), o.sorted_counts.end());
        o.min_count = o.sorted_counts.front();
        o.edges = 0;
        for (std::int64_t c : pair_counts) o.edges += c;
        return o;
    }
};

int compare(const Objective& a, const Objective& b) {
    if (a.min_count != b.min_count) return a.min_count < b.min_count ? -1 : 1;
    if (a.edges != b.edges) return a.edges < b.edges ? -1 : 1;
    // Later entries of the ascending vector decide ties from the bottom up.
    for (std::size_t i = 0; i < a.sorted_counts.size(); ++i)
        if (a.sorted_counts[i] != b.sorted_counts[i])
            return a.sorted_counts[i] < b.sorted_counts[i] ? -1 : 1;
    return 0;
}

bool brute_force_has_clique(const MultipartiteGraph& g, int k) {
    const int n = g.vertex_count();
    std::vector<int> chosen;
    auto extend = [&](auto&& self, int start) -> bool {
        if (static_cast<int>(chosen.size()) == k) return true;
        for (int v = start; v < n; ++v) {
            bool ok = true;
            for (int u : chosen)
                if (!g.adjacent(u, v)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(v);
            if (self(self, v + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return extend(extend, 0);
}

/// Builds the result from a finished state, recomputing and cross-checking
/// the invariants the caller is promised.
SearchResult finish(SearchConfig cfg, PartLayout layout, AdjacencyMatrix adj,
                    SearchTrace trace) {
    MultipartiteGraph graph(std::move(layout), std::move(adj));
    const Rational min_density = min_pairwise_density(graph);
    if (detail::find_clique(graph.layout(), graph.adjacency(), cfg.k))
        throw std::logic_error("search: result contains a K^k");
    if (graph.vertex_count() <= kMaxExhaustiveVertices &&
        brute_force_has_clique(graph, cfg.k))
        throw std::logic_error("search: brute-force re-check found a K^k");
    return {std::move(cfg), std::move(graph), min_density, true, trace};
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration
// ---------------------------------------------------------------------------

struct ExhaustiveSpace {
    int l, n, k;
    int pairs, slots_per_pair, slots;
    std::vector<std::uint64_t> clique_masks;

    explicit ExhaustiveSpace(const SearchConfig& cfg)
        : l(cfg.part_count), n(cfg.part_size), k(cfg.k) {
        pairs = l * (l - 1) / 2;
        slots_per_pair = n * n;
        slots = pairs * slots_per_pair;

        // Every transversal k-tuple, as the mask of its C(k,2) edge slots.
        std::vector<int> parts(k), locals(k);
        auto pick_locals = [&](auto&& self, int depth) -> void {
            if (depth == k) {
                std::uint64_t mask = 0;
                for (int a = 0; a < k; ++a)
                    for (int b = a + 1; b < k; ++b)
                        mask |= 1ull << slot(parts[a], parts[b], locals[a], locals[b]);
                clique_masks.push_back(mask);
                return;
            }
            for (locals[depth] = 0; locals[depth] < n; ++locals[depth]) self(self, depth + 1);
        };
        auto pick_parts = [&](auto&& self, int depth, int from) -> void {
            if (depth == k) {
                pick_locals(pick_locals, 0);
                return;
            }
            for (int p = from; p < l; ++p) {
                parts[depth] = p;
                self(self, depth + 1, p + 1);
            }
        };
        if (k <= l) pick_parts(pick_parts, 0, 0);
    }

    /// Slot of the edge between the a-th vertex of part i and the b-th of
    /// part j (i < j); slots of one pair are contiguous.
    int slot(int i, int j, int a, int b) const {
        if (i > j) {
            std::swap(i, j);
            std::swap(a, b);
        }
        return pair_index(l, i, j) * slots_per_pair + a * n + b;
    }

    bool has_clique(std::uint64_t mask) const {
        for (const std::uint64_t cm : clique_masks)
            if ((mask & cm) == cm) return true;
        return false;
    }

    std::vector<std::int64_t> counts(std::uint64_t mask) const {
        std::vector<std::int64_t> out(pairs);
        const std::uint64_t pair_mask = (slots_per_pair == 64)
                                            ? ~0ull
                                            : ((1ull << slots_per_pair) - 1);
        for (int p = 0; p < pairs; ++p)
            out[p] = std::popcount((mask >> (p * slots_per_pair)) & pair_mask);
        return out;
    }
};

SearchResult exhaustive_impl(const SearchConfig& cfg, bool parallel) {
    if (cfg.mode != SearchMode::Exhaustive)
        throw std::invalid_argument("exhaustive_frontier: config mode is not exhaustive");
    if (cfg.k < 3) throw std::invalid_argument("search: k must be >= 3");
    if (cfg.part_count < 3 || cfg.part_size < 1)
        throw std::invalid_argument("search: need part_count >= 3 and part_size >= 1");
    if (cfg.part_count * cfg.part_size > kMaxExhaustiveVertices)
        throw std::invalid_argument(
            "exhaustive_frontier: part_count*part_size exceeds " +
            std::to_string(kMaxExhaustiveVertices));
    ExhaustiveSpace space(cfg);
    if (space.slots > kMaxExhaustiveSlots)
        throw std::invalid_argument("exhaustive_frontier: " + std::to_string(space.slots) +
                                    " edge slots exceed the enumerable bound of " +
                                    std::to_string(kMaxExhaustiveSlots));

    const std::uint64_t total = 1ull << space.slots;
    const int chunk_bits = std::min(12, space.slots);
    const std::int64_t chunks = parallel ? (1ll << chunk_bits) : 1;
    const std::uint64_t per_chunk = total / chunks;

    Objective best;
    std::uint64_t best_mask = 0;
    bool have_best = false;

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t chunk = 0; chunk < chunks; ++chunk) {
        Objective local;
        std::uint64_t local_mask = 0;
        bool have_local = false;
        const std::uint64_t lo = chunk * per_chunk, hi = lo + per_chunk;
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            if (space.has_clique(mask)) continue;
            const Objective obj = Objective::of(space.counts(mask));
            if (!have_local || compare(obj, local) > 0) {
                local = obj;
                local_mask = mask;
                have_local = true;
            }
        }
        if (!have_local) continue;
#pragma omp critical(partite_exhaustive_best)
        {
            const int c = have_best ? compare(local, best) : 1;
            if (c > 0 || (c == 0 && local_mask < best_mask)) {
                best = local;
                best_mask = local_mask;
                have_best = true;
            }
        }
    }
    if (!have_best) throw std::logic_error("exhaustive_frontier: no K^k-free state found");

    PartLayout layout = balanced_layout(cfg.part_count, cfg.part_size);
    AdjacencyMatrix adj(layout.vertex_count());
    const auto pairs = pair_list(cfg.part_count);
    for (int p = 0; p < space.pairs; ++p)
        for (int a = 0; a < cfg.part_size; ++a)
            for (int b = 0; b < cfg.part_size; ++b)
                if ((best_mask >> space.slot(pairs[p].first, pairs[p].second, a, b)) & 1)
                    adj.set(layout.part_begin(pairs[p].first) + a,
                            layout.part_begin(pairs[p].second) + b);

    SearchTrace trace;
    trace.states_examined = static_cast<std::int64_t>(total);
    return finish(cfg, std::move(layout), std::move(adj), trace);
}

// ---------------------------------------------------------------------------
// Local search
// ---------------------------------------------------------------------------

struct LocalState {
    const PartLayout& layout;
    int k, l, n;
    AdjacencyMatrix adj;
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::int64_t> pair_count;
    std::int64_t edges = 0;

    LocalState(const PartLayout& lay, int k_, AdjacencyMatrix a)
        : layout(lay), k(k_), l(lay.part_count()), n(lay.part_size(0)), adj(std::move(a)),
          pairs(pair_list(l)), pair_count(pairs.size(), 0) {
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const auto [i, j] = pairs[p];
            for (int u = layout.part_begin(i); u < layout.part_end(i); ++u)
                pair_count[p] += adj.count_in_range(u, layout.part_begin(j),
                                                    layout.part_end(j));
            edges += pair_count[p];
        }
    }

    int pair_of(int u, int v) const {
        return pair_index(l, layout.part_of(u), layout.part_of(v));
    }

    void toggle(int u, int v) {
        const int p = pair_of(u, v);
        if (adj.at(u, v)) {
            adj.clear(u, v);
            --pair_count[p];
            --edges;
        } else {
            adj.set(u, v);
            ++pair_count[p];
            ++edges;
        }
    }

    std::int64_t min_count() const {
        return *std::min_element(pair_count.begin(), pair_count.end());
    }
    int min_pair() const {
        return static_cast<int>(std::min_element(pair_count.begin(), pair_count.end()) -
                                pair_count.begin());
    }
    Objective objective() const { return Objective::of(pair_count); }
};

struct Move {
    std::vector<std::pair<int, int>> toggles; // applied in order
    std::int64_t repairs = 0;
};

/// Picks the toggle target: half the time a missing edge of the currently
/// minimal pair, otherwise a uniform cross-part slot.
std::pair<int, int> propose(LocalState& state, SplitMix64& rng) {
    const auto uniform_slot = [&](int p) {
        const auto [i, j] = state.pairs[p];
        const int u = state.layout.part_begin(i) + static_cast<int>(rng.below(state.n));
        const int v = state.layout.part_begin(j) + static_cast<int>(rng.below(state.n));
        return std::pair<int, int>{u, v};
    };
    if (rng.chance(0.5)) {
        const int p = state.min_pair();
        const std::int64_t full = static_cast<std::int64_t>(state.n) * state.n;
        if (state.pair_count[p] < full)
            for (int attempt = 0; attempt < 32; ++attempt) {
                const auto [u, v] = uniform_slot(p);
                if (!state.adj.at(u, v)) return {u, v};
            }
    }
    return uniform_slot(static_cast<int>(rng.below(state.pairs.size())));
}

/// Applies the toggle; if an addition closes a K^k, deletes clique edges
/// (preferring the edge whose pair keeps the highest count, ties by vertex
/// ids) until the state is K^k-free again.
Move apply_move(LocalState& state, int u, int v) {
    Move move;
    const bool adding = !state.adj.at(u, v);
    state.toggle(u, v);
    move.toggles.push_back({u, v});
    if (!adding) return move;

    while (state.adj.at(u, v)) {
        const auto clique = detail::find_clique_with_edge(state.layout, state.adj, u, v, state.k);
        if (!clique) break;
        int bu = -1, bv = -1;
        std::int64_t best_count = -1;
        for (std::size_t a = 0; a < clique->size(); ++a)
            for (std::size_t b = a + 1; b < clique->size(); ++b) {
                int x = (*clique)[a], y = (*clique)[b];
                if (x > y) std::swap(x, y);
                const std::int64_t count = state.pair_count[state.pair_of(x, y)];
                if (count > best_count ||
                    (count == best_count && std::pair(x, y) < std::pair(bu, bv))) {
                    best_count = count;
                    bu = x;
                    bv = y;
                }
            }
        state.toggle(bu, bv);
        move.toggles.push_back({bu, bv});
        ++move.repairs;
    }
    return move;
}

void rollback(LocalState& state, const Move& move) {
    for (auto it = move.toggles.rbegin(); it != move.toggles.rend(); ++it)
        state.toggle(it->first, it->second);
}

struct RestartOutcome {
    AdjacencyMatrix best_adj;
    Objective best;
    std::int64_t best_iteration = 0;
    std::int64_t accepted = 0, repairs = 0, improvements = 0;
};

RestartOutcome run_restart(const SearchConfig& cfg, const PartLayout& layout,
                           const AdjacencyMatrix& initial, int restart) {
    SplitMix64 rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(restart)));
    LocalState state(layout, cfg.k, initial);
    RestartOutcome out{state.adj, state.objective(), 0, 0, 0, 0};

    const double quantum = 1.0 / (static_cast<double>(cfg.part_size) * cfg.part_size);
    const double t0 = quantum / std::log(2.0);
    const double alpha =
        cfg.iteration_budget > 0
            ? std::pow(cfg.cooling_ratio, 1.0 / static_cast<double>(cfg.iteration_budget))
            : 1.0;
    double temperature = t0;

    std::vector<std::int64_t> tabu_until(state.pairs.size() *
                                             static_cast<std::size_t>(cfg.part_size) *
                                             cfg.part_size,
                                         0);
    const auto slot_id = [&](int u, int v) {
        const int i = layout.part_of(u), j = layout.part_of(v);
        const int a = (i < j ? u : v) - layout.part_begin(std::min(i, j));
        const int b = (i < j ? v : u) - layout.part_begin(std::max(i, j));
        return static_cast<std::size_t>(pair_index(state.l, i, j)) * cfg.part_size *
                   cfg.part_size +
               static_cast<std::size_t>(a) * cfg.part_size + b;
    };

    for (std::int64_t iter = 0; iter < cfg.iteration_budget; ++iter) {
        const std::int64_t old_min = state.min_count();

        int mu = -1, mv = -1;
        if (cfg.mode == SearchMode::Anneal) {
            std::tie(mu, mv) = propose(state, rng);
        } else {
            // Tabu: rank a sample of candidates by the optimistic (pre-repair)
            // objective; recently toggled slots are skipped unless they would
            // beat the best minimum seen so far.
            std::int64_t best_rank_min = -1, best_rank_edges = -1;
            for (int c = 0; c < cfg.tabu_candidates; ++c) {
                const auto [u, v] = propose(state, rng);
                const int p = state.pair_of(u, v);
                const std::int64_t delta = state.adj.at(u, v) ? -1 : 1;
                std::int64_t cand_min = state.pair_count[p] + delta;
                for (std::size_t q = 0; q < state.pair_count.size(); ++q)
                    if (static_cast<int>(q) != p)
                        cand_min = std::min(cand_min, state.pair_count[q]);
                if (tabu_until[slot_id(u, v)] > iter && cand_min <= out.best.min_count)
                    continue;
                if (cand_min > best_rank_min ||
                    (cand_min == best_rank_min && delta > 0 &&
                     state.edges + delta > best_rank_edges)) {
                    best_rank_min = cand_min;
                    best_rank_edges = state.edges + delta;
                    mu = u;
                    mv = v;
                }
            }
            if (mu < 0) continue; // every candidate tabu
        }

        const Move move = apply_move(state, mu, mv);
        out.repairs += move.repairs;
        const std::int64_t new_min = state.min_count();

        bool accept = true;
        if (cfg.mode == SearchMode::Anneal && new_min < old_min) {
            const double delta = static_cast<double>(new_min - old_min) * quantum;
            accept = rng.chance(std::exp(delta / temperature));
        }
        if (accept) {
            ++out.accepted;
            if (cfg.mode == SearchMode::Tabu)
                for (const auto& [u, v] : move.toggles)
                    tabu_until[slot_id(u, v)] = iter + cfg.tabu_tenure;
            if (new_min >= out.best.min_count) {
                Objective obj = state.objective();
                if (compare(obj, out.best) > 0) {
                    out.best = std::move(obj);
                    out.best_adj = state.adj;
                    out.best_iteration = iter;
                    ++out.improvements;
                }
            }
        } else {
            rollback(state, move);
        }
        temperature *= alpha;
    }
    return out;
}

AdjacencyMatrix initial_adjacency(const SearchConfig& cfg, const PartLayout& layout) {
    switch (cfg.initial) {
    case InitialKind::Empty: return AdjacencyMatrix(layout.vertex_count());
    case InitialKind::ExtremalSeed: {
        if (cfg.part_size % (cfg.k - 1) != 0)
            throw std::invalid_argument(
                "local_search: extremal seed needs part_size divisible by k-1");
        const ExtremalParams params = ExtremalParams::balanced(
            cfg.k, cfg.part_count, cfg.part_size / (cfg.k - 1));
        return generate_extremal(params).graph.adjacency();
    }
    case InitialKind::File: {
        if (!cfg.initial_graph)
            throw std::invalid_argument("local_search: initial graph missing for file seed");
        const MultipartiteGraph& g = *cfg.initial_graph;
        if (g.part_count() != cfg.part_count)
            throw std::invalid_argument("local_search: initial graph has wrong part count");
        for (int i = 0; i < g.part_count(); ++i)
            if (g.layout().part_size(i) != cfg.part_size)
                throw std::invalid_argument(
                    "local_search: initial graph parts must all have the configured size");
        if (detail::find_clique(g.layout(), g.adjacency(), cfg.k))
            throw std::invalid_argument("local_search: initial graph contains a K^k");
        return g.adjacency();
    }
    }
    throw std::invalid_argument("local_search: unknown initial kind");
}

} // namespace

std::string mode_cli_name(SearchMode mode) {
    switch (mode) {
    case SearchMode::Exhaustive: return "exhaustive";
    case SearchMode::Anneal: return "anneal";
    case SearchMode::Tabu: return "tabu";
    }
    return "?";
}

std::optional<SearchMode> mode_from_cli_name(const std::string& name) {
    if (name == "exhaustive") return SearchMode::Exhaustive;
    if (name == "anneal") return SearchMode::Anneal;
    if (name == "tabu") return SearchMode::Tabu;
    return std::nullopt;
}

SearchResult exhaustive_frontier(const SearchConfig& cfg) {
    return exhaustive_impl(cfg, cfg.parallel);
}

SearchResult exhaustive_frontier_serial(const SearchConfig& cfg) {
    return exhaustive_impl(cfg, false);
}

SearchResult local_search(const SearchConfig& cfg) {
    if (cfg.mode != SearchMode::Anneal && cfg.mode != SearchMode::Tabu)
        throw std::invalid_argument("local_search: mode must be anneal or tabu");
    if (cfg.k < 3) throw std::invalid_argument("search: k must be >= 3");
    if (cfg.part_count < 3 || cfg.part_size < 1)
        throw std::invalid_argument("search: need part_count >= 3 and part_size >= 1");
    if (cfg.iteration_budget < 0)
        throw std::invalid_argument("local_search: negative iteration budget");

    const PartLayout layout = balanced_layout(cfg.part_count, cfg.part_size);
    const AdjacencyMatrix initial = initial_adjacency(cfg, layout);
    const int restarts = std::max(1, cfg.restarts);

    std::vector<RestartOutcome> outcomes;
    outcomes.reserve(restarts);
    for (int r = 0; r < restarts; ++r)
        outcomes.push_back({AdjacencyMatrix(0), Objective{}, 0, 0, 0, 0});

#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
    for (int r = 0; r < restarts; ++r)
        outcomes[r] = run_restart(cfg, layout, initial, r);

    int winner = 0;
    for (int r = 1; r < restarts; ++r)
        if (compare(outcomes[r].best, outcomes[winner].best) > 0) winner = r;

    SearchTrace trace;
    trace.iterations = cfg.iteration_budget * restarts;
    for (const auto& o : outcomes) {
        trace.accepted += o.accepted;
        trace.repairs += o.repairs;
        trace.improvements += o.improvements;
    }
    trace.best_iteration = outcomes[winner].best_iteration;
    trace.best_restart = winner;
    return finish(cfg, layout, std::move(outcomes[winner].best_adj), trace);
}

ExperimentReport run_experiment(const std::string& preset, const ExperimentOverrides& overrides) {
    ExperimentReport report;
    report.preset = preset;
    const std::uint64_t seed0 = overrides.seed.value_or(1);

    const auto add_run = [&](SearchMode mode, int k, int l, int n, std::uint64_t seed,
                             std::int64_t iters, const Rational& anchor) {
        SearchConfig cfg;
        cfg.k = k;
        cfg.part_count = l;
        cfg.part_size = n;
        cfg.mode = mode;
        cfg.seed = seed;
        cfg.iteration_budget = iters;
        cfg.initial = (mode != SearchMode::Exhaustive && n % (k - 1) == 0)
                          ? InitialKind::ExtremalSeed
                          : InitialKind::Empty;
        SearchResult result =
            mode == SearchMode::Exhaustive ? exhaustive_frontier(cfg) : local_search(cfg);
        const bool above = result.min_density > anchor;
        report.runs.push_back({std::move(result), anchor, above});
    };

    const Rational half(1, 2);
    if (preset == "d33") {
        report.k = overrides.k.value_or(3);
        if (report.k != 3) throw std::invalid_argument("preset d33 is k=3 only");
        const std::int64_t iters = overrides.iters.value_or(200'000);
        report.anchors = {{"golden-ratio-upper-proxy", "6181/10000"}, {"family-lower", "1/2"}};
        for (int n : overrides.n ? std::vector<int>{*overrides.n} : std::vector<int>{1, 2})
            add_run(SearchMode::Exhaustive, 3, 3, n, seed0, 0, half);
        for (int n : overrides.n ? std::vector<int>{*overrides.n} : std::vector<int>{4, 8})
            for (std::uint64_t s : {seed0, seed0 + 1})
                add_run(SearchMode::Anneal, 3, 3, n, s, iters, half);
    } else if (preset == "d34" || preset == "d35") {
        report.k = overrides.k.value_or(3);
        if (report.k != 3) throw std::invalid_argument("preset " + preset + " is k=3 only");
        const int l = overrides.l.value_or(preset == "d34" ? 4 : 5);
        const std::int64_t iters = overrides.iters.value_or(1'000'000);
        report.anchors = {{"family-lower", "1/2"},
                          {"beyond-half-target", preset == "d34" ? "51/100" : "open"}};
        for (int n : overrides.n ? std::vector<int>{*overrides.n} : std::vector<int>{12, 24})
            for (std::uint64_t s : {seed0, seed0 + 1})
                add_run(SearchMode::Anneal, 3, l, n, s, iters, half);
    } else if (preset == "d-k-ell") {
        const int k = overrides.k.value_or(4);
        if (k < 3) throw std::invalid_argument("preset d-k-ell: k must be >= 3");
        report.k = k;
        std::int64_t zone = 1;
        for (int i = 2; i < k; ++i) zone *= i;
        const int l = overrides.l.value_or(static_cast<int>(zone) + 4);
        const int n = overrides.n.value_or(2 * (k - 1));
        const std::int64_t iters = overrides.iters.value_or(200'000);
        const Rational threshold(k - 2, k - 1);
        report.anchors = {{"threshold", threshold.str()}};
        for (std::uint64_t s : {seed0, seed0 + 1})
            add_run(SearchMode::Anneal, k, l, n, s, iters, threshold);
    } else {
        throw std::invalid_argument("run_experiment: unknown preset \"" + preset +
                                    "\" (expected d33, d34, d35 or d-k-ell)");
    }
    return report;
}

} // namespace partite
