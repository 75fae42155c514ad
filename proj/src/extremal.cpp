#include "partite/extremal.hpp"

#include "partite/density.hpp"
#include "partite/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace partite {
namespace {

std::int64_t factorial(int m) {
    std::int64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

std::string pair_str(int u, int v) {
    return "[" + std::to_string(u) + "," + std::to_string(v) + "]";
}

} // namespace

ExtremalParams ExtremalParams::balanced(int k, int part_count, std::int64_t size) {
    ExtremalParams p;
    p.k = k;
    p.part_count = part_count;
    p.class_sizes.assign(part_count, std::vector<std::int64_t>(k - 1, size));
    return p;
}

std::vector<std::vector<int>> lexicographic_permutations(int m) {
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> all;
    do {
        all.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return all;
}

std::vector<ParamViolation> validate_params(const ExtremalParams& params) {
    std::vector<ParamViolation> out;
    if (params.k < 3) {
        out.push_back({"k must be at least 3, got " + std::to_string(params.k)});
        return out;
    }
    if (params.k > 13) {
        // (k-1)! would not fit any practical part count.
        out.push_back({"k is impractically large: " + std::to_string(params.k)});
        return out;
    }
    const int classes = params.k - 1;
    const std::int64_t zone = factorial(classes);
    if (params.part_count < zone)
        out.push_back({"part count " + std::to_string(params.part_count) +
                       " is below (k-1)! = " + std::to_string(zone)});
    if (static_cast<int>(params.class_sizes.size()) != params.part_count) {
        out.push_back({"class_sizes has " + std::to_string(params.class_sizes.size()) +
                       " rows, expected " + std::to_string(params.part_count)});
        return out;
    }
    for (int i = 0; i < params.part_count; ++i) {
        const auto& row = params.class_sizes[i];
        if (static_cast<int>(row.size()) != classes) {
            out.push_back({"row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                           " entries, expected k-1 = " + std::to_string(classes)});
            continue;
        }
        bool negative = false;
        std::int64_t sum = 0;
        for (std::int64_t v : row) {
            if (v < 0) negative = true;
            sum += v;
        }
        if (negative) {
            out.push_back({"row " + std::to_string(i) + " has a negative class size"});
            continue;
        }
        if (sum <= 0)
            out.push_back({"row " + std::to_string(i) + " sums to zero; parts must be nonempty"});
    }
    if (!out.empty()) return out;

    const auto perms = lexicographic_permutations(classes);
    for (int i = 0; i < params.part_count; ++i) {
        const auto& row = params.class_sizes[i];
        if (i < zone) {
            const auto& perm = perms[i];
            for (int s = 0; s + 1 < classes; ++s)
                if (row[perm[s]] < row[perm[s + 1]]) {
                    out.push_back({"row " + std::to_string(i) +
                                   " is not sorted under its permutation slot " +
                                   std::to_string(i)});
                    break;
                }
        } else {
            for (int s = 1; s < classes; ++s)
                if (row[s] != row[0]) {
                    out.push_back({"row " + std::to_string(i) +
                                   " must have all classes equal (part beyond the first (k-1)!)"});
                    break;
                }
        }
    }
    return out;
}

ExtremalGraph generate_extremal(const ExtremalParams& params, const DeletionList& deletions) {
    const auto violations = validate_params(params);
    if (!violations.empty()) {
        std::string msg = "generate_extremal: invalid params:";
        for (const auto& v : violations) msg += " " + v.message + ";";
        throw std::invalid_argument(msg);
    }
    const int classes = params.k - 1;
    const std::int64_t zone = factorial(classes);

    std::vector<int> part_sizes(params.part_count);
    std::vector<int> class_of;
    for (int i = 0; i < params.part_count; ++i) {
        std::int64_t size = 0;
        for (int s = 0; s < classes; ++s) {
            size += params.class_sizes[i][s];
            for (std::int64_t t = 0; t < params.class_sizes[i][s]; ++t)
                class_of.push_back(s);
        }
        if (size > 1'000'000)
            throw std::invalid_argument("generate_extremal: part " + std::to_string(i) +
                                        " is unreasonably large");
        part_sizes[i] = static_cast<int>(size);
    }

    PartLayout layout = PartLayout::from_sizes(part_sizes);
    const int n = layout.vertex_count();
    AdjacencyMatrix adj(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (layout.part_of(u) != layout.part_of(v) && class_of[u] != class_of[v])
                adj.set(u, v);

    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : deletions) {
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n || u == v)
            throw std::invalid_argument("generate_extremal: deletion " + pair_str(u, v) +
                                        " references an unknown vertex");
        const int pu = layout.part_of(u), pv = layout.part_of(v);
        if (pu == pv)
            throw std::invalid_argument("generate_extremal: deletion " + pair_str(u, v) +
                                        " lies inside part " + std::to_string(pu));
        if (class_of[u] == class_of[v])
            throw std::invalid_argument("generate_extremal: deletion " + pair_str(u, v) +
                                        " joins two vertices of class " +
                                        std::to_string(class_of[u]) +
                                        "; only cross-class edges exist");
        if (pu >= zone || pv >= zone)
            throw std::invalid_argument("generate_extremal: deletion " + pair_str(u, v) +
                                        " touches a part beyond the first (k-1)! = " +
                                        std::to_string(zone) + " parts");
        if (!seen.insert({u, v}).second)
            throw std::invalid_argument("generate_extremal: duplicate deletion " +
                                        pair_str(u, v));
        adj.clear(u, v);
    }

    return {MultipartiteGraph(std::move(layout), std::move(adj)), ClassColoring{std::move(class_of)}};
}

std::vector<DensityShortfall> check_density_condition(const MultipartiteGraph& g, int k) {
    if (k < 3) throw std::invalid_argument("check_density_condition: k must be >= 3");
    const Rational threshold(k - 2, k - 1);
    const DensityMatrix dm = density_matrix(g);
    std::vector<DensityShortfall> out;
    for (int i = 0; i < g.part_count(); ++i)
        for (int j = i + 1; j < g.part_count(); ++j)
            if (dm.entry(i, j) < threshold)
                out.push_back({i, j, dm.entry(i, j), threshold});
    return out;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

/// Backtracking proper coloring of the component graph with at most
/// `colors` colors, canonical color introduction order (component i may only
/// open color max_used+1). Tries every coloring until `accept` returns true.
struct ComponentColoring {
    const std::vector<std::vector<bool>>& conflict;
    int colors;
    std::int64_t budget;
    std::int64_t nodes = 0;
    std::vector<int> assignment;

    template <typename Accept>
    bool search(int idx, int used, Accept&& accept) {
        if (++nodes > budget)
            throw ResourceLimitError("check_membership: backtracking budget exhausted");
        const int count = static_cast<int>(conflict.size());
        if (idx == count) return accept(assignment);
        const int limit = std::min(colors - 1, used); // may open exactly one new color
        for (int c = 0; c <= limit; ++c) {
            bool ok = true;
            for (int other = 0; other < idx && ok; ++other)
                if (conflict[idx][other] && assignment[other] == c) ok = false;
            if (!ok) continue;
            assignment[idx] = c;
            if (search(idx + 1, std::max(used, c + 1), accept)) return true;
        }
        return false;
    }
};

/// Perfect matching of zone parts to permutation slots (compat[p][q] allows
/// part p in slot q), by augmenting paths. Sizes are at most (k-1)!.
bool perfect_matching(const std::vector<std::vector<bool>>& compat, std::vector<int>& slot_of) {
    const int z = static_cast<int>(compat.size());
    std::vector<int> part_of_slot(z, -1);
    std::vector<char> visited;
    auto augment = [&](auto&& self, int part) -> bool {
        for (int q = 0; q < z; ++q) {
            if (!compat[part][q] || visited[q]) continue;
            visited[q] = 1;
            if (part_of_slot[q] < 0 || self(self, part_of_slot[q])) {
                part_of_slot[q] = part;
                return true;
            }
        }
        return false;
    };
    for (int p = 0; p < z; ++p) {
        visited.assign(z, 0);
        if (!augment(augment, p)) return false;
    }
    slot_of.assign(z, -1);
    for (int q = 0; q < z; ++q) slot_of[part_of_slot[q]] = q;
    return true;
}

} // namespace

std::optional<MembershipWitness> check_membership(const MultipartiteGraph& g, int k,
                                                  std::int64_t budget) {
    if (k < 3 || k > 13) throw std::invalid_argument("check_membership: k must be in [3,13]");
    const int classes = k - 1;
    const std::int64_t zone = factorial(classes);
    const PartLayout& layout = g.layout();
    const int l = layout.part_count();
    if (l < zone)
        throw std::invalid_argument("check_membership: part count " + std::to_string(l) +
                                    " is below (k-1)! = " + std::to_string(zone));
    const int n = g.vertex_count();

    // Forced same-class relation: a cross-part non-edge means "same class",
    // except between two zone parts, where it may instead be a deleted edge.
    UnionFind uf(n);
    for (int u = 0; u < n; ++u) {
        const int pu = layout.part_of(u);
        for (int v = u + 1; v < n; ++v) {
            const int pv = layout.part_of(v);
            if (pu == pv || g.adjacent(u, v)) continue;
            if (pu < zone && pv < zone) continue;
            uf.unite(u, v);
        }
    }

    // An edge inside one same-class component is unfixable.
    std::vector<int> component_of(n, -1);
    int components = 0;
    for (int v = 0; v < n; ++v) {
        const int root = uf.find(v);
        if (component_of[root] < 0) component_of[root] = components++;
        component_of[v] = component_of[root];
    }
    std::vector<std::vector<bool>> conflict(components, std::vector<bool>(components, false));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (!g.adjacent(u, v)) continue;
            const int cu = component_of[u], cv = component_of[v];
            if (cu == cv) return std::nullopt;
            conflict[cu][cv] = conflict[cv][cu] = true;
        }

    const auto perms = lexicographic_permutations(classes);
    MembershipWitness witness;

    auto accept = [&](const std::vector<int>& assignment) {
        std::vector<int> class_of(n);
        for (int v = 0; v < n; ++v) class_of[v] = assignment[component_of[v]];

        // Class-size table and its constraints: tail parts all-equal, zone
        // parts matched injectively to permutation slots that sort them.
        std::vector<std::vector<std::int64_t>> table(
            l, std::vector<std::int64_t>(classes, 0));
        for (int v = 0; v < n; ++v) ++table[layout.part_of(v)][class_of[v]];
        for (int p = static_cast<int>(zone); p < l; ++p)
            for (int s = 1; s < classes; ++s)
                if (table[p][s] != table[p][0]) return false;

        const int z = static_cast<int>(zone);
        std::vector<std::vector<bool>> compat(z, std::vector<bool>(z, false));
        for (int p = 0; p < z; ++p)
            for (int q = 0; q < z; ++q) {
                bool sorted = true;
                for (int s = 0; s + 1 < classes && sorted; ++s)
                    if (table[p][perms[q][s]] < table[p][perms[q][s + 1]]) sorted = false;
                compat[p][q] = sorted;
            }
        std::vector<int> slot_of;
        if (!perfect_matching(compat, slot_of)) return false;

        witness.coloring.classes = std::move(class_of);
        witness.slot_of_part = std::move(slot_of);
        return true;
    };

    ComponentColoring coloring{conflict, classes, budget, 0, std::vector<int>(components, -1)};
    if (!coloring.search(0, 0, accept)) return std::nullopt;

    // Full semantic re-check of the witness, independent of how it was found.
    const auto& cls = witness.coloring.classes;
    std::vector<std::vector<std::int64_t>> deleted(l, std::vector<std::int64_t>(l, 0));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const int pu = layout.part_of(u), pv = layout.part_of(v);
            if (pu == pv) continue;
            if (g.adjacent(u, v)) {
                if (cls[u] == cls[v])
                    throw std::logic_error("check_membership: witness violates edge rule");
            } else if (cls[u] != cls[v]) {
                if (pu >= zone || pv >= zone)
                    throw std::logic_error("check_membership: witness deletion outside zone");
                ++deleted[std::min(pu, pv)][std::max(pu, pv)];
            }
        }
    for (int p = 0; p < static_cast<int>(zone); ++p)
        for (int q = p + 1; q < static_cast<int>(zone); ++q)
            if (deleted[p][q] > 0)
                witness.zone_pairs.push_back(
                    {p, q, deleted[p][q], pairwise_density(g, p, q)});
    return witness;
}

} // namespace partite
