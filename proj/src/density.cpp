#include "partite/density.hpp"

#include <stdexcept>
#include <string>

namespace partite {
namespace {

int upper_index(int part_count, int i, int j) {
    if (i > j) std::swap(i, j);
    // Position of (i, j), i < j, in row-major upper-triangle order.
    return i * part_count - i * (i + 1) / 2 + (j - i - 1);
}

void check_pair(const MultipartiteGraph& g, int i, int j) {
    const int l = g.part_count();
    if (i < 0 || j < 0 || i >= l || j >= l)
        throw std::invalid_argument("part index out of range: (" + std::to_string(i) +
                                    "," + std::to_string(j) + ") with l=" + std::to_string(l));
    if (i == j)
        throw std::invalid_argument("pairwise density needs two distinct parts, got i=j=" +
                                    std::to_string(i));
}

} // namespace

DensityMatrix::DensityMatrix(int part_count, std::vector<Rational> upper)
    : part_count_(part_count), upper_(std::move(upper)) {
    if (static_cast<int>(upper_.size()) != part_count_ * (part_count_ - 1) / 2)
        throw std::invalid_argument("DensityMatrix: wrong number of entries");
}

const Rational& DensityMatrix::entry(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i >= part_count_ || j >= part_count_)
        throw std::invalid_argument("DensityMatrix: bad entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
    return upper_[upper_index(part_count_, i, j)];
}

Rational DensityMatrix::min_entry() const {
    if (upper_.empty())
        throw std::invalid_argument("DensityMatrix: fewer than two parts");
    Rational best = upper_[0];
    for (const Rational& r : upper_)
        if (r < best) best = r;
    return best;
}

std::int64_t cross_edge_count(const MultipartiteGraph& g, int i, int j) {
    check_pair(g, i, j);
    const PartLayout& layout = g.layout();
    std::int64_t edges = 0;
    for (int u = layout.part_begin(i); u < layout.part_end(i); ++u)
        edges += g.adjacency().count_in_range(u, layout.part_begin(j), layout.part_end(j));
    return edges;
}

Rational pairwise_density(const MultipartiteGraph& g, int i, int j) {
    const std::int64_t pairs = static_cast<std::int64_t>(g.layout().part_size(i)) *
                               g.layout().part_size(j);
    return {cross_edge_count(g, i, j), pairs};
}

DensityMatrix density_matrix(const MultipartiteGraph& g) {
    const PartLayout& layout = g.layout();
    const int l = layout.part_count();
    const int pairs = l * (l - 1) / 2;
    std::vector<std::int64_t> counts(pairs, 0);

    // Each vertex contributes to the pairs (part_of(u), j) for j > part_of(u);
    // rows are disjoint, so the vertex loop parallelizes without contention.
    std::vector<std::int64_t> per_vertex(static_cast<std::size_t>(g.vertex_count()) * l, 0);
#pragma omp parallel for schedule(static)
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int j = 0; j < l; ++j)
            per_vertex[static_cast<std::size_t>(u) * l + j] =
                g.adjacency().count_in_range(u, layout.part_begin(j), layout.part_end(j));

    for (int u = 0; u < g.vertex_count(); ++u) {
        const int i = layout.part_of(u);
        for (int j = i + 1; j < l; ++j)
            counts[upper_index(l, i, j)] += per_vertex[static_cast<std::size_t>(u) * l + j];
    }

    std::vector<Rational> upper;
    upper.reserve(pairs);
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j)
            upper.emplace_back(counts[upper_index(l, i, j)],
                               static_cast<std::int64_t>(layout.part_size(i)) *
                                   layout.part_size(j));
    return {l, std::move(upper)};
}

DensityMatrix density_matrix_serial(const MultipartiteGraph& g) {
    // Reference implementation: plain adjacency scans, no bit tricks.
    const PartLayout& layout = g.layout();
    const int l = layout.part_count();
    std::vector<Rational> upper;
    upper.reserve(l * (l - 1) / 2);
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) {
            std::int64_t edges = 0;
            for (int u = layout.part_begin(i); u < layout.part_end(i); ++u)
                for (int v = layout.part_begin(j); v < layout.part_end(j); ++v)
                    edges += g.adjacent(u, v) ? 1 : 0;
            upper.emplace_back(edges, static_cast<std::int64_t>(layout.part_size(i)) *
                                          layout.part_size(j));
        }
    return {l, std::move(upper)};
}

Rational min_pairwise_density(const MultipartiteGraph& g) {
    if (g.part_count() < 2)
        throw std::invalid_argument("min_pairwise_density: need at least two parts");
    return density_matrix(g).min_entry();
}

namespace {

EdgeScoreSummary edge_scores_impl(const MultipartiteGraph& g, bool parallel) {
    const PartLayout& layout = g.layout();
    const int n = g.vertex_count();
    const int l = layout.part_count();

    // d_j(x) for every vertex and part.
    std::vector<std::int64_t> deg_by_part(static_cast<std::size_t>(n) * l, 0);
    std::vector<std::int64_t> deg(n, 0);
#pragma omp parallel for schedule(static) if (parallel)
    for (int u = 0; u < n; ++u) {
        std::int64_t total = 0;
        for (int j = 0; j < l; ++j) {
            const std::int64_t dj =
                g.adjacency().count_in_range(u, layout.part_begin(j), layout.part_end(j));
            deg_by_part[static_cast<std::size_t>(u) * l + j] = dj;
            total += dj;
        }
        deg[u] = total;
    }

    EdgeScoreSummary out;
    out.score_total = 0;
    out.degree_identity = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (!g.adjacent(u, v)) continue;
            const int i = layout.part_of(u), j = layout.part_of(v);
            const std::int64_t s = deg[u] - deg_by_part[static_cast<std::size_t>(u) * l + j] +
                                   deg[v] - deg_by_part[static_cast<std::size_t>(v) * l + i];
            out.scores.push_back({u, v, s});
            out.score_total += s;
        }
    for (int u = 0; u < n; ++u) {
        std::int64_t sum_sq = 0;
        for (int j = 0; j < l; ++j) {
            const std::int64_t dj = deg_by_part[static_cast<std::size_t>(u) * l + j];
            sum_sq += dj * dj;
        }
        out.degree_identity += deg[u] * deg[u] - sum_sq;
    }
    return out;
}

} // namespace

EdgeScoreSummary edge_scores(const MultipartiteGraph& g) { return edge_scores_impl(g, true); }

EdgeScoreSummary edge_scores_serial(const MultipartiteGraph& g) {
    // Reference implementation recomputes every d_j(x) by scanning ids.
    const PartLayout& layout = g.layout();
    const int n = g.vertex_count();
    auto deg_into = [&](int x, int part) {
        std::int64_t c = 0;
        for (int v = layout.part_begin(part); v < layout.part_end(part); ++v)
            c += g.adjacent(x, v) ? 1 : 0;
        return c;
    };
    auto degree = [&](int x) {
        std::int64_t c = 0;
        for (int v = 0; v < n; ++v) c += g.adjacent(x, v) ? 1 : 0;
        return c;
    };

    EdgeScoreSummary out;
    out.score_total = 0;
    out.degree_identity = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (!g.adjacent(u, v)) continue;
            const std::int64_t s = degree(u) - deg_into(u, layout.part_of(v)) + degree(v) -
                                   deg_into(v, layout.part_of(u));
            out.scores.push_back({u, v, s});
            out.score_total += s;
        }
    for (int u = 0; u < n; ++u) {
        std::int64_t sum_sq = 0;
        for (int j = 0; j < layout.part_count(); ++j) {
            const std::int64_t dj = deg_into(u, j);
            sum_sq += dj * dj;
        }
        out.degree_identity += degree(u) * degree(u) - sum_sq;
    }
    return out;
}

} // namespace partite
