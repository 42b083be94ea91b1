#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "geodesic/decomposition.hpp"
#include "geodesic/graph.hpp"
#include "geodesic/polynomial.hpp"
#include "geodesic/redblue.hpp"

namespace geodesic::testing {

using Rng = std::mt19937_64;

/// Uniform labelled tree from a random Pruefer sequence.
inline Tree random_tree(std::size_t n, Rng& rng) {
    if (n <= 2) {
        return Tree::path(std::max<std::size_t>(n, 1));
    }
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    std::vector<Vertex> code(n - 2);
    for (auto& c : code) {
        c = pick(rng);
    }
    std::vector<std::size_t> degree(n, 1);
    for (Vertex c : code) {
        ++degree[c];
    }
    std::set<Vertex> leaves;
    for (Vertex v = 0; v < n; ++v) {
        if (degree[v] == 1) {
            leaves.insert(v);
        }
    }
    std::vector<Edge> edges;
    for (Vertex c : code) {
        const Vertex leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.push_back({leaf, c, 1});
        if (--degree[c] == 1) {
            leaves.insert(c);
        }
    }
    const Vertex a = *leaves.begin();
    const Vertex b = *std::next(leaves.begin());
    edges.push_back({a, b, 1});
    return Tree(Graph(n, std::move(edges)));
}

/// Random tree by attaching vertex i to a uniform earlier vertex (shallower than Pruefer trees).
inline Tree random_recursive_tree(std::size_t n, Rng& rng) {
    std::vector<Vertex> parent(n, 0);
    for (Vertex i = 1; i < n; ++i) {
        parent[i] = std::uniform_int_distribution<Vertex>(0, i - 1)(rng);
    }
    return Tree::from_parents(parent);
}

namespace detail {

inline std::string rooted_code(const std::vector<std::vector<Vertex>>& adj, Vertex u, Vertex parent) {
    std::vector<std::string> parts;
    for (Vertex w : adj[u]) {
        if (w != parent) {
            parts.push_back(rooted_code(adj, w, u));
        }
    }
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& p : parts) {
        out += p;
    }
    return out + ")";
}

}  // namespace detail

/// Isomorphism-invariant code: the smallest rooted code over the tree's centroids.
inline std::string canonical_code(const Tree& t) {
    const std::size_t n = t.num_vertices();
    std::vector<std::vector<Vertex>> adj(n);
    for (const Edge& e : t.graph().edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    // Subtree sizes from vertex 0 to locate the centroids.
    std::vector<Vertex> order{0};
    std::vector<Vertex> parent(n, 0);
    std::vector<bool> seen(n, false);
    seen[0] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (Vertex w : adj[order[i]]) {
            if (!seen[w]) {
                seen[w] = true;
                parent[w] = order[i];
                order.push_back(w);
            }
        }
    }
    std::vector<std::size_t> size(n, 1);
    for (std::size_t i = order.size(); i-- > 1;) {
        size[parent[order[i]]] += size[order[i]];
    }
    std::size_t best = n;
    std::vector<Vertex> centroids;
    for (Vertex v = 0; v < n; ++v) {
        std::size_t worst = n - size[v];
        for (Vertex w : adj[v]) {
            if (w != 0 && parent[w] == v) {
                worst = std::max(worst, size[w]);
            }
        }
        if (worst < best) {
            best = worst;
            centroids = {v};
        } else if (worst == best) {
            centroids.push_back(v);
        }
    }
    std::string code;
    for (Vertex c : centroids) {
        std::string candidate = detail::rooted_code(adj, c, c);
        if (code.empty() || candidate < code) {
            code = std::move(candidate);
        }
    }
    return code;
}

/// One representative per isomorphism class of trees on n vertices (n >= 1).
inline std::vector<Tree> all_unlabeled_trees(std::size_t n) {
    std::vector<Tree> out;
    std::set<std::string> seen;
    std::vector<Vertex> parent(n, 0);
    // Every recursive labelling: parent[i] < i.
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            Tree t = Tree::from_parents(parent);
            if (seen.insert(canonical_code(t)).second) {
                out.push_back(std::move(t));
            }
            return;
        }
        for (Vertex p = 0; p < i; ++p) {
            parent[i] = p;
            rec(i + 1);
        }
    };
    rec(1);
    return out;
}

struct DecomposedGraph {
    Graph graph;
    TreeDecomposition td;
    std::size_t k = 0;
};

/// Random partial k-tree: a k-tree grown by attaching each vertex to a k-clique,
/// then each edge kept with probability keep. The grown bags stay a valid
/// decomposition. Weights are 1, or uniform in [min_weight, max_weight].
inline DecomposedGraph random_partial_ktree(std::size_t n, std::size_t k, Rng& rng, double keep,
                                            bool weighted, Weight min_weight = 0, Weight max_weight = 5) {
    DecomposedGraph out;
    out.k = k;
    const std::size_t base = std::min(n, k + 1);
    std::set<std::pair<Vertex, Vertex>> edges;
    auto connect = [&](Vertex a, Vertex b) { edges.emplace(std::min(a, b), std::max(a, b)); };

    std::vector<Vertex> first(base);
    std::iota(first.begin(), first.end(), 0);
    for (std::size_t a = 0; a < base; ++a) {
        for (std::size_t b = a + 1; b < base; ++b) {
            connect(first[a], first[b]);
        }
    }
    out.td.bags.push_back(first);
    for (Vertex v = static_cast<Vertex>(base); v < n; ++v) {
        const auto node = std::uniform_int_distribution<std::size_t>(0, out.td.bags.size() - 1)(rng);
        std::vector<Vertex> clique = out.td.bags[node];
        if (clique.size() == k + 1) {
            clique.erase(clique.begin() + static_cast<std::ptrdiff_t>(
                                              std::uniform_int_distribution<std::size_t>(0, k)(rng)));
        }
        for (Vertex c : clique) {
            connect(c, v);
        }
        clique.push_back(v);
        std::sort(clique.begin(), clique.end());
        out.td.bags.push_back(clique);
        out.td.edges.emplace_back(static_cast<NodeId>(node), static_cast<NodeId>(out.td.bags.size() - 1));
    }

    std::bernoulli_distribution survive(keep);
    std::uniform_int_distribution<Weight> weight(min_weight, max_weight);
    std::vector<Edge> list;
    for (const auto& [a, b] : edges) {
        if (survive(rng)) {
            list.push_back({a, b, weighted ? weight(rng) : 1});
        }
    }
    out.graph = Graph(n, std::move(list));
    return out;
}

/// Random permutation of vertex ids applied to a decomposed graph.
inline DecomposedGraph relabel(const DecomposedGraph& in, Rng& rng) {
    const std::size_t n = in.graph.num_vertices();
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges;
    for (const Edge& e : in.graph.edges()) {
        edges.push_back({perm[e.u], perm[e.v], e.w});
    }
    DecomposedGraph out;
    out.k = in.k;
    out.graph = Graph(n, std::move(edges));
    out.td.edges = in.td.edges;
    for (const auto& bag : in.td.bags) {
        std::vector<Vertex> mapped;
        for (Vertex v : bag) {
            mapped.push_back(perm[v]);
        }
        std::sort(mapped.begin(), mapped.end());
        out.td.bags.push_back(std::move(mapped));
    }
    return out;
}

inline RedBlueInstance random_redblue(std::size_t dim, std::size_t reds, std::size_t blues,
                                      std::uint64_t max_value, std::int64_t coord_range, Rng& rng) {
    RedBlueInstance inst;
    inst.dim = dim;
    inst.value_bound = max_value;
    std::uniform_int_distribution<std::int64_t> coord(-coord_range, coord_range);
    std::uniform_int_distribution<std::uint64_t> value(0, max_value);
    auto make = [&](std::size_t count, std::vector<ValuedPoint>& pts) {
        for (std::size_t i = 0; i < count; ++i) {
            ValuedPoint p;
            for (std::size_t d = 0; d < dim; ++d) {
                p.coords.push_back(coord(rng));
            }
            p.value = value(rng);
            pts.push_back(std::move(p));
        }
    };
    make(reds, inst.reds);
    make(blues, inst.blues);
    return inst;
}

/// Plain O(deg^2) product with 128-bit accumulation.
inline std::vector<std::uint64_t> schoolbook(const std::vector<std::uint64_t>& p,
                                             const std::vector<std::uint64_t>& q) {
    if (p.empty() || q.empty()) {
        return {};
    }
    std::vector<unsigned __int128> acc(p.size() + q.size() - 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < q.size(); ++j) {
            acc[i + j] += static_cast<unsigned __int128>(p[i]) * q[j];
        }
    }
    std::vector<std::uint64_t> out(acc.begin(), acc.end());
    while (!out.empty() && out.back() == 0) {
        out.pop_back();
    }
    return out;
}

inline std::vector<std::uint64_t> random_coeffs(std::size_t size, std::uint64_t max_coeff, Rng& rng) {
    std::uniform_int_distribution<std::uint64_t> coeff(0, max_coeff);
    std::vector<std::uint64_t> out(size);
    for (auto& c : out) {
        c = coeff(rng);
    }
    return out;
}

/// Number of dominating pairs, counted directly.
inline std::uint64_t dominance_pairs(const RedBlueInstance& inst) {
    std::uint64_t count = 0;
    for (const auto& r : inst.reds) {
        for (const auto& b : inst.blues) {
            bool dom = true;
            for (std::size_t d = 0; d < inst.dim; ++d) {
                dom = dom && b.coords[d] > r.coords[d];
            }
            count += dom ? 1 : 0;
        }
    }
    return count;
}

}  // namespace geodesic::testing
