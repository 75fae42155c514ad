#include "partite/independent_set.hpp"

#include "partite/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace partite {
namespace {

/// Max clique on an explicit bit matrix, Tomita-style: candidates are greedily
/// colored and expanded in reverse color order so |R| + color(v) bounds every
/// branch.
struct CliqueSolver {
    const AdjacencyMatrix& adj;
    int n, words;
    std::int64_t budget;
    std::int64_t nodes = 0;
    std::vector<int> best, current;

    CliqueSolver(const AdjacencyMatrix& a, std::int64_t budget_)
        : adj(a), n(a.size()), words(a.words_per_row()), budget(budget_) {}

    static bool test(const std::vector<std::uint64_t>& set, int v) {
        return (set[v >> 6] >> (v & 63)) & 1u;
    }

    void expand(std::vector<std::uint64_t>& cand) {
        if (++nodes > budget)
            throw ResourceLimitError("max_independent_set: node budget exhausted after " +
                                     std::to_string(budget) + " nodes");

        // Greedy coloring of the candidates in id order.
        std::vector<int> verts, colors;
        std::vector<std::vector<std::uint64_t>> classes; // one bit set per color
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = cand[w];
            while (bits) {
                const int v = (w << 6) + std::countr_zero(bits);
                bits &= bits - 1;
                int c = 0;
                while (true) {
                    if (c == static_cast<int>(classes.size()))
                        classes.emplace_back(words, 0ull);
                    bool clash = false;
                    const std::uint64_t* r = adj.row(v).data();
                    for (int x = 0; x < words && !clash; ++x)
                        if (classes[c][x] & r[x]) clash = true;
                    if (!clash) break;
                    ++c;
                }
                classes[c][v >> 6] |= 1ull << (v & 63);
                verts.push_back(v);
                colors.push_back(c + 1);
            }
        }
        // Reorder by color so the deepest bound is tried first.
        std::vector<int> idx(verts.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return colors[a] < colors[b]; });

        std::vector<std::uint64_t> next(words);
        for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
            const int v = verts[*it];
            if (static_cast<int>(current.size()) + colors[*it] <=
                static_cast<int>(best.size()))
                return;
            if (!test(cand, v)) continue;
            const std::uint64_t* r = adj.row(v).data();
            for (int x = 0; x < words; ++x) next[x] = cand[x] & r[x];
            current.push_back(v);
            bool empty = true;
            for (int x = 0; x < words && empty; ++x) empty = next[x] == 0;
            if (empty) {
                if (current.size() > best.size()) best = current;
            } else {
                std::vector<std::uint64_t> saved = next;
                expand(saved);
            }
            current.pop_back();
            cand[v >> 6] &= ~(1ull << (v & 63));
        }
    }
};

} // namespace

std::vector<int> max_independent_set(const MultipartiteGraph& g, std::int64_t node_budget) {
    const int n = g.vertex_count();
    AdjacencyMatrix complement(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v)) complement.set(u, v);

    CliqueSolver solver(complement, node_budget);
    std::vector<std::uint64_t> cand(complement.words_per_row(), ~0ull);
    if (n % 64) cand[complement.words_per_row() - 1] = ~0ull >> (64 - n % 64);
    solver.expand(cand);
    std::sort(solver.best.begin(), solver.best.end());
    return solver.best;
}

} // namespace partite
