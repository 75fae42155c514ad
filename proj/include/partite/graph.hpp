#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace partite {

/// Vertex ids are dense integers 0..n-1 assigned in part order, so a part is
/// a contiguous id range and part boundaries are plain offsets. This keeps
/// runs reproducible and makes "neighbors of v inside part j" a masked
/// popcount over a bit row.
class PartLayout {
public:
    static PartLayout from_sizes(std::span<const int> sizes);

    int part_count() const { return static_cast<int>(offsets_.size()) - 1; }
    int vertex_count() const { return offsets_.back(); }
    int part_of(int v) const { return part_of_[v]; }
    int part_begin(int i) const { return offsets_[i]; }
    int part_end(int i) const { return offsets_[i + 1]; }
    int part_size(int i) const { return offsets_[i + 1] - offsets_[i]; }

    bool operator==(const PartLayout&) const = default;

private:
    std::vector<int> offsets_; // part_count()+1 entries, offsets_[0] == 0
    std::vector<int> part_of_; // one entry per vertex
};

/// Symmetric irreflexive adjacency stored as one dense bit row per vertex.
class AdjacencyMatrix {
public:
    explicit AdjacencyMatrix(int n)
        : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {}

    int size() const { return n_; }
    int words_per_row() const { return words_; }

    bool at(int u, int v) const {
        return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
    }
    void set(int u, int v) {
        bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= 1ull << (v & 63);
        bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= 1ull << (u & 63);
    }
    void clear(int u, int v) {
        bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] &= ~(1ull << (v & 63));
        bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)] &= ~(1ull << (u & 63));
    }

    std::span<const std::uint64_t> row(int u) const {
        return {bits_.data() + static_cast<std::size_t>(u) * words_,
                static_cast<std::size_t>(words_)};
    }

    /// Degree of u, optionally restricted to the vertex id range [lo, hi).
    int degree(int u) const { return count_in_range(u, 0, n_); }
    int count_in_range(int u, int lo, int hi) const;

    bool operator==(const AdjacencyMatrix&) const = default;

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// An l-partite graph: immutable once constructed, so every operation over it
/// is read-only and safe to run concurrently. Mutation happens in builders or
/// in search-local adjacency copies.
class MultipartiteGraph {
public:
    /// Validates l-partiteness (no intra-part bits), symmetry and
    /// irreflexivity of the adjacency; throws std::invalid_argument.
    MultipartiteGraph(PartLayout layout, AdjacencyMatrix adjacency);

    const PartLayout& layout() const { return layout_; }
    const AdjacencyMatrix& adjacency() const { return adj_; }

    int part_count() const { return layout_.part_count(); }
    int vertex_count() const { return layout_.vertex_count(); }
    std::int64_t edge_count() const { return edge_count_; }
    bool adjacent(int u, int v) const { return adj_.at(u, v); }

    bool operator==(const MultipartiteGraph&) const = default;

private:
    PartLayout layout_;
    AdjacencyMatrix adj_;
    std::int64_t edge_count_ = 0;
};

/// Accumulates edges against a fixed partition, validating as it goes.
class GraphBuilder {
public:
    /// Requires at least two parts, every part nonempty.
    explicit GraphBuilder(std::span<const int> part_sizes);

    const PartLayout& layout() const { return layout_; }
    bool has_edge(int u, int v) const { return adj_.at(u, v); }

    /// Rejects loops, out-of-range ids, intra-part edges and duplicates.
    void add_edge(int u, int v);
    void remove_edge(int u, int v);

    MultipartiteGraph build() const { return {layout_, adj_}; }

private:
    PartLayout layout_;
    AdjacencyMatrix adj_;
};

/// Result of a blow-up. density_preserving records whether the factors were
/// uniform within every part; unequal factors inside a part are permitted but
/// distort pairwise densities (clique structure is preserved either way).
struct BlowUpResult {
    MultipartiteGraph graph;
    bool density_preserving;
};

/// Replaces vertex v by factors[v] pairwise-nonadjacent twins; twins of
/// adjacent vertices are fully joined. Factors must be positive.
BlowUpResult blow_up(const MultipartiteGraph& g, std::span<const int> factors);

} // namespace partite
