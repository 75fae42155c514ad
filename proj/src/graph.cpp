#include "partite/graph.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace partite {

PartLayout PartLayout::from_sizes(std::span<const int> sizes) {
    if (sizes.size() < 2)
        throw std::invalid_argument("PartLayout: need at least 2 parts, got " +
                                    std::to_string(sizes.size()));
    PartLayout layout;
    layout.offsets_.reserve(sizes.size() + 1);
    layout.offsets_.push_back(0);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] <= 0)
            throw std::invalid_argument("PartLayout: part " + std::to_string(i) +
                                        " is empty");
        layout.offsets_.push_back(layout.offsets_.back() + sizes[i]);
    }
    layout.part_of_.resize(layout.offsets_.back());
    for (std::size_t i = 0; i < sizes.size(); ++i)
        for (int v = layout.offsets_[i]; v < layout.offsets_[i + 1]; ++v)
            layout.part_of_[v] = static_cast<int>(i);
    return layout;
}

int AdjacencyMatrix::count_in_range(int u, int lo, int hi) const {
    if (lo >= hi) return 0;
    const std::uint64_t* r = bits_.data() + static_cast<std::size_t>(u) * words_;
    const int wlo = lo >> 6, whi = (hi - 1) >> 6;
    const std::uint64_t mlo = ~0ull << (lo & 63);
    const std::uint64_t mhi = ~0ull >> (63 - ((hi - 1) & 63));
    if (wlo == whi) return std::popcount(r[wlo] & mlo & mhi);
    int count = std::popcount(r[wlo] & mlo) + std::popcount(r[whi] & mhi);
    for (int w = wlo + 1; w < whi; ++w) count += std::popcount(r[w]);
    return count;
}

MultipartiteGraph::MultipartiteGraph(PartLayout layout, AdjacencyMatrix adjacency)
    : layout_(std::move(layout)), adj_(std::move(adjacency)) {
    const int n = layout_.vertex_count();
    if (adj_.size() != n)
        throw std::invalid_argument("MultipartiteGraph: adjacency size " +
                                    std::to_string(adj_.size()) + " != vertex count " +
                                    std::to_string(n));
    std::int64_t degree_total = 0;
    for (int u = 0; u < n; ++u) {
        if (adj_.at(u, u))
            throw std::invalid_argument("MultipartiteGraph: loop at vertex " +
                                        std::to_string(u));
        const int p = layout_.part_of(u);
        if (adj_.count_in_range(u, layout_.part_begin(p), layout_.part_end(p)) != 0)
            throw std::invalid_argument("MultipartiteGraph: intra-part edge at vertex " +
                                        std::to_string(u) + " in part " + std::to_string(p));
        for (int v = u + 1; v < n; ++v)
            if (adj_.at(u, v) != adj_.at(v, u))
                throw std::invalid_argument("MultipartiteGraph: asymmetric adjacency at [" +
                                            std::to_string(u) + "," + std::to_string(v) + "]");
        degree_total += adj_.degree(u);
    }
    edge_count_ = degree_total / 2;
}

GraphBuilder::GraphBuilder(std::span<const int> part_sizes)
    : layout_(PartLayout::from_sizes(part_sizes)), adj_(layout_.vertex_count()) {}

void GraphBuilder::add_edge(int u, int v) {
    const int n = layout_.vertex_count();
    if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::invalid_argument("GraphBuilder: edge [" + std::to_string(u) + "," +
                                    std::to_string(v) + "] references an unknown vertex");
    if (u == v)
        throw std::invalid_argument("GraphBuilder: loop at vertex " + std::to_string(u));
    if (layout_.part_of(u) == layout_.part_of(v))
        throw std::invalid_argument("GraphBuilder: edge [" + std::to_string(u) + "," +
                                    std::to_string(v) + "] joins two vertices of part " +
                                    std::to_string(layout_.part_of(u)));
    if (adj_.at(u, v))
        throw std::invalid_argument("GraphBuilder: duplicate edge [" + std::to_string(u) +
                                    "," + std::to_string(v) + "]");
    adj_.set(u, v);
}

void GraphBuilder::remove_edge(int u, int v) {
    if (!adj_.at(u, v))
        throw std::invalid_argument("GraphBuilder: edge [" + std::to_string(u) + "," +
                                    std::to_string(v) + "] not present");
    adj_.clear(u, v);
}

BlowUpResult blow_up(const MultipartiteGraph& g, std::span<const int> factors) {
    const int n = g.vertex_count();
    if (static_cast<int>(factors.size()) != n)
        throw std::invalid_argument("blow_up: need one factor per vertex");
    for (int v = 0; v < n; ++v)
        if (factors[v] <= 0)
            throw std::invalid_argument("blow_up: factor of vertex " + std::to_string(v) +
                                        " must be positive");

    // First copy of vertex v gets id base[v]; copies are contiguous, so the
    // blown-up graph keeps the original part order.
    std::vector<int> base(n);
    std::vector<int> new_sizes(g.part_count(), 0);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        base[v] = next;
        next += factors[v];
        new_sizes[g.layout().part_of(v)] += factors[v];
    }

    bool preserving = true;
    for (int p = 0; p < g.part_count(); ++p) {
        const int first = g.layout().part_begin(p);
        for (int v = first + 1; v < g.layout().part_end(p); ++v)
            if (factors[v] != factors[first]) preserving = false;
    }

    PartLayout layout = PartLayout::from_sizes(new_sizes);
    AdjacencyMatrix adj(layout.vertex_count());
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (!g.adjacent(u, v)) continue;
            for (int a = 0; a < factors[u]; ++a)
                for (int b = 0; b < factors[v]; ++b)
                    adj.set(base[u] + a, base[v] + b);
        }
    return {MultipartiteGraph(std::move(layout), std::move(adj)), preserving};
}

} // namespace partite
