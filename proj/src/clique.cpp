#include "partite/clique.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace partite {
namespace detail {
namespace {

/// Depth-first transversal search. cand[d] holds the common neighborhood of
/// the d chosen vertices as a bit row; parts are visited in `order`, and each
/// part is either skipped or contributes exactly one vertex.
struct TransversalSearch {
    const PartLayout& layout;
    const AdjacencyMatrix& adj;
    int k;
    int words;
    std::vector<int> order;
    std::vector<std::uint64_t> cand; // (k+1) rows of `words` words
    std::vector<int> chosen;

    TransversalSearch(const PartLayout& l, const AdjacencyMatrix& a, int k_)
        : layout(l), adj(a), k(k_), words(a.words_per_row()) {
        cand.assign(static_cast<std::size_t>(k + 1) * words, 0);
        chosen.reserve(k);
    }

    std::uint64_t* row(int depth) { return cand.data() + static_cast<std::size_t>(depth) * words; }

    bool run(std::vector<int> part_order, std::span<const int> preselected) {
        order = std::move(part_order);
        std::uint64_t* top = row(0);
        std::fill(top, top + words, ~0ull);
        const int n = layout.vertex_count();
        if (n % 64) top[words - 1] = ~0ull >> (64 - n % 64);
        for (int v : preselected) {
            chosen.push_back(v);
            const std::uint64_t* r = adj.row(v).data();
            for (int w = 0; w < words; ++w) top[w] &= r[w];
        }
        return extend(0);
    }

    bool extend(int pos) {
        const int depth = static_cast<int>(chosen.size());
        if (depth == k) return true;
        const int parts_left = static_cast<int>(order.size()) - pos;
        if (parts_left < k - depth) return false;

        const int part = order[pos];
        const int lo = layout.part_begin(part), hi = layout.part_end(part);
        const std::uint64_t* cur = row(depth);
        std::uint64_t* next = row(depth + 1);
        for (int w = lo >> 6; w <= (hi - 1) >> 6; ++w) {
            std::uint64_t bits = cur[w];
            if (w == lo >> 6) bits &= ~0ull << (lo & 63);
            if (w == (hi - 1) >> 6) bits &= ~0ull >> (63 - ((hi - 1) & 63));
            while (bits) {
                const int v = (w << 6) + std::countr_zero(bits);
                bits &= bits - 1;
                const std::uint64_t* r = adj.row(v).data();
                for (int x = 0; x < words; ++x) next[x] = cur[x] & r[x];
                chosen.push_back(v);
                if (extend(pos + 1)) return true;
                chosen.pop_back();
            }
        }
        return extend(pos + 1); // leave this part out
    }
};

std::vector<int> parts_by_size(const PartLayout& layout, std::span<const int> excluded) {
    std::vector<int> order;
    for (int p = 0; p < layout.part_count(); ++p)
        if (std::find(excluded.begin(), excluded.end(), p) == excluded.end())
            order.push_back(p);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return layout.part_size(a) != layout.part_size(b)
                   ? layout.part_size(a) < layout.part_size(b)
                   : a < b;
    });
    return order;
}

} // namespace

std::optional<std::vector<int>> find_clique(const PartLayout& layout,
                                            const AdjacencyMatrix& adj, int k) {
    if (k < 1) throw std::invalid_argument("find_clique: k must be >= 1");
    if (k > layout.part_count()) return std::nullopt;
    TransversalSearch search(layout, adj, k);
    if (!search.run(parts_by_size(layout, {}), {})) return std::nullopt;
    return search.chosen;
}

std::optional<std::vector<int>> find_clique_with_edge(const PartLayout& layout,
                                                      const AdjacencyMatrix& adj, int u,
                                                      int v, int k) {
    if (k < 2 || !adj.at(u, v)) throw std::invalid_argument("find_clique_with_edge: bad call");
    if (k > layout.part_count()) return std::nullopt;
    TransversalSearch search(layout, adj, k);
    const int excluded[] = {layout.part_of(u), layout.part_of(v)};
    const int pre[] = {u, v};
    if (!search.run(parts_by_size(layout, excluded), pre)) return std::nullopt;
    return search.chosen;
}

} // namespace detail

std::optional<std::vector<int>> find_clique(const MultipartiteGraph& g, int k) {
    return detail::find_clique(g.layout(), g.adjacency(), k);
}

} // namespace partite
