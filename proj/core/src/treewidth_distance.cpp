#include "geodesic/treewidth_distance.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

#include "geodesic/parallel.hpp"
#include "geodesic/redblue.hpp"

namespace geodesic {

namespace {

// Stand-ins for +/- infinity in RedBlue coordinates.
constexpr std::int64_t kFar = std::int64_t{1} << 62;

struct Level {
    std::vector<std::vector<Neighbor>> adj;
    std::vector<std::vector<Vertex>> bags;  // sorted, local vertex ids
    std::vector<std::vector<NodeId>> tree;
    NodeId root = 0;

    std::size_t num_vertices() const { return adj.size(); }
    std::size_t width() const {
        std::size_t w = 0;
        for (const auto& b : bags) {
            w = std::max(w, b.size());
        }
        return w == 0 ? 0 : w - 1;
    }
};

std::vector<Distance> dijkstra(const Level& level, Vertex source) {
    std::vector<Distance> dist(level.num_vertices(), kUnreachable);
    using Item = std::pair<Distance, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0;
    heap.emplace(0, source);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d != dist[u]) {
            continue;
        }
        for (const Neighbor& nb : level.adj[u]) {
            const Distance cand = d + nb.w;
            if (cand < dist[nb.to]) {
                dist[nb.to] = cand;
                heap.emplace(cand, nb.to);
            }
        }
    }
    return dist;
}

Graph as_graph(const Level& level) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < level.num_vertices(); ++u) {
        for (const Neighbor& nb : level.adj[u]) {
            if (u < nb.to) {
                edges.push_back({u, nb.to, nb.w});
            }
        }
    }
    return Graph(level.num_vertices(), std::move(edges));
}

TreeDecomposition as_decomposition(const Level& level) {
    TreeDecomposition td;
    td.bags = level.bags;
    for (NodeId a = 0; a < level.tree.size(); ++a) {
        for (NodeId b : level.tree[a]) {
            if (a < b) {
                td.edges.emplace_back(a, b);
            }
        }
    }
    return td;
}

class Pipeline {
public:
    Pipeline(Distance max_distance, const TreewidthOptions& options)
        : p_(max_distance), options_(options), acc_(max_distance + 1, 0) {}

    void run(Level level) {
        ++stats_.levels;
        const std::size_t n = level.num_vertices();
        const std::size_t count = level.bags.size();
        const std::size_t k = level.width();
        const std::size_t base = options_.base_vertices.value_or(2 * (k + 2));
        if (n <= base || count <= 3) {
            ++stats_.base_cases;
            all_pairs(level);
            return;
        }

        const auto [i_node, j_node] = balanced_edge(level.tree, level.root);

        // Nodes on i's side of the edge.
        std::vector<bool> in_i(count, false);
        {
            std::vector<NodeId> stack{i_node};
            in_i[i_node] = true;
            while (!stack.empty()) {
                const NodeId u = stack.back();
                stack.pop_back();
                for (NodeId w : level.tree[u]) {
                    if (!in_i[w] && !(u == i_node && w == j_node)) {
                        in_i[w] = true;
                        stack.push_back(w);
                    }
                }
            }
        }

        std::vector<bool> in_a(n, false);
        for (NodeId node = 0; node < count; ++node) {
            if (in_i[node]) {
                for (Vertex v : level.bags[node]) {
                    in_a[v] = true;
                }
            }
        }
        std::vector<Vertex> separator;
        std::set_intersection(level.bags[i_node].begin(), level.bags[i_node].end(),
                              level.bags[j_node].begin(), level.bags[j_node].end(),
                              std::back_inserter(separator));
        std::vector<bool> in_s(n, false);
        for (Vertex s : separator) {
            in_s[s] = true;
        }
        stats_.max_separator = std::max(stats_.max_separator, separator.size());

        if (options_.debug_checks) {
            for (Vertex a = 0; a < n; ++a) {
                if (!in_a[a]) {
                    continue;
                }
                for (const Neighbor& nb : level.adj[a]) {
                    check_invariant(in_a[nb.to] || in_s[a], "portal of A outside the separator");
                }
            }
        }

        std::vector<std::vector<Distance>> from_s(separator.size());
        parallel_for(separator.size(), options_.threads,
                     [&](std::size_t i) { from_s[i] = dijkstra(level, separator[i]); });

        // S x S pairs are counted by both recursions.
        for (std::size_t x = 0; x < separator.size(); ++x) {
            for (std::size_t y = x + 1; y < separator.size(); ++y) {
                const Distance d = from_s[x][separator[y]];
                if (d >= 1 && d <= p_) {
                    acc_[d] -= 1;  // wraps transiently; the final counts are exact
                }
            }
        }

        cross_pairs(level, in_a, in_s, separator, from_s);

        std::vector<bool> in_b(n, false);
        for (Vertex v = 0; v < n; ++v) {
            in_b[v] = !in_a[v] || in_s[v];
        }
        Level a_side = child(level, in_a, in_i, true, separator, from_s);
        Level b_side = child(level, in_b, in_i, false, separator, from_s);
        level = Level{};
        run(std::move(a_side));
        run(std::move(b_side));
    }

    std::vector<std::uint64_t> take() { return std::move(acc_); }
    const TreewidthStats& stats() const { return stats_; }

private:
    void all_pairs(const Level& level) {
        const std::size_t n = level.num_vertices();
        for (Vertex s = 0; s < n; ++s) {
            const auto dist = dijkstra(level, s);
            for (Vertex t = s + 1; t < n; ++t) {
                if (dist[t] >= 1 && dist[t] <= p_) {
                    acc_[dist[t]] += 1;
                }
            }
        }
    }

    void cross_pairs(const Level& level, const std::vector<bool>& in_a, const std::vector<bool>& in_s,
                     const std::vector<Vertex>& separator,
                     const std::vector<std::vector<Distance>>& from_s) {
        const std::size_t n = level.num_vertices();
        const std::size_t size = separator.size();
        if (size == 0) {
            return;
        }
        std::vector<Vertex> a_only;
        std::vector<Vertex> outside;
        for (Vertex v = 0; v < n; ++v) {
            if (in_a[v] && !in_s[v]) {
                a_only.push_back(v);
            } else if (!in_a[v]) {
                outside.push_back(v);
            }
        }
        if (a_only.empty() || outside.empty()) {
            return;
        }

        auto diff = [](Distance x, Distance y) -> std::int64_t {
            // x - y with unreachable treated as +infinity; x is finite here.
            if (y == kUnreachable) {
                return -kFar;
            }
            return static_cast<std::int64_t>(x) - static_cast<std::int64_t>(y);
        };

        std::vector<CoeffPoly> results(size);
        parallel_for(size, options_.threads, [&](std::size_t i) {
            if (size == 1) {
                std::vector<CoeffPoly::Coeff> reds;
                std::vector<CoeffPoly::Coeff> blues;
                for (Vertex a : a_only) {
                    const Distance d = from_s[0][a];
                    if (d <= p_) {
                        if (reds.size() <= d) {
                            reds.resize(d + 1, 0);
                        }
                        ++reds[d];
                    }
                }
                for (Vertex b : outside) {
                    const Distance d = from_s[0][b];
                    if (d <= p_) {
                        if (blues.size() <= d) {
                            blues.resize(d + 1, 0);
                        }
                        ++blues[d];
                    }
                }
                results[0] = poly_mul(CoeffPoly(std::move(reds)), CoeffPoly(std::move(blues)),
                                      static_cast<std::uint64_t>(n) * n);
                return;
            }

            RedBlueInstance inst;
            inst.dim = size - 1;
            for (Vertex a : a_only) {
                const Distance value = from_s[i][a];
                if (value > p_) {
                    continue;
                }
                ValuedPoint pt;
                pt.value = value;
                for (std::size_t j = 0; j < size; ++j) {
                    if (j != i) {
                        pt.coords.push_back(diff(value, from_s[j][a]));
                    }
                }
                inst.value_bound = std::max(inst.value_bound, value);
                inst.reds.push_back(std::move(pt));
            }
            for (Vertex b : outside) {
                const Distance value = from_s[i][b];
                if (value > p_) {
                    continue;
                }
                ValuedPoint pt;
                pt.value = value;
                for (std::size_t j = 0; j < size; ++j) {
                    if (j == i) {
                        continue;
                    }
                    const Distance other = from_s[j][b];
                    std::int64_t c = other == kUnreachable
                                         ? kFar
                                         : static_cast<std::int64_t>(other) - static_cast<std::int64_t>(value);
                    if (j > i && other != kUnreachable) {
                        c += 1;
                    }
                    pt.coords.push_back(c);
                }
                inst.value_bound = std::max(inst.value_bound, value);
                inst.blues.push_back(std::move(pt));
            }
            if (!inst.reds.empty() && !inst.blues.empty()) {
                results[i] = redblue_solve(inst, options_.debug_checks);
            }
        });

        stats_.redblue_instances += size == 1 ? 0 : size;
        for (const CoeffPoly& r : results) {
            for (std::size_t l = 1; l < r.size() && l <= p_; ++l) {
                acc_[l] += r.coeffs()[l];
            }
        }
    }

    // Subproblem on the vertices flagged in `keep` plus a shortest-path clique on S,
    // with the decomposition nodes on one side of the split edge.
    Level child(const Level& level, const std::vector<bool>& keep, const std::vector<bool>& in_i,
                bool i_side, const std::vector<Vertex>& separator,
                const std::vector<std::vector<Distance>>& from_s) {
        const std::size_t n = level.num_vertices();
        constexpr Vertex kNone = std::numeric_limits<Vertex>::max();
        std::vector<Vertex> local(n, kNone);
        Vertex next = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (keep[v]) {
                local[v] = next++;
            }
        }

        std::vector<Edge> edges;
        for (Vertex u = 0; u < n; ++u) {
            if (local[u] == kNone) {
                continue;
            }
            for (const Neighbor& nb : level.adj[u]) {
                if (u < nb.to && local[nb.to] != kNone) {
                    edges.push_back({local[u], local[nb.to], nb.w});
                }
            }
        }
        for (std::size_t x = 0; x < separator.size(); ++x) {
            for (std::size_t y = x + 1; y < separator.size(); ++y) {
                const Distance d = from_s[x][separator[y]];
                if (d != kUnreachable) {
                    edges.push_back({local[separator[x]], local[separator[y]], d});
                }
            }
        }
        for (Edge& e : edges) {
            if (e.u > e.v) {
                std::swap(e.u, e.v);
            }
        }
        std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
            return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
        });
        Level out;
        out.adj.resize(next);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            // Parallel edges keep the lightest copy, which sorts first.
            if (e > 0 && edges[e].u == edges[e - 1].u && edges[e].v == edges[e - 1].v) {
                continue;
            }
            out.adj[edges[e].u].push_back({edges[e].v, edges[e].w});
            out.adj[edges[e].v].push_back({edges[e].u, edges[e].w});
        }

        const std::size_t count = level.bags.size();
        std::vector<NodeId> node_local(count, std::numeric_limits<NodeId>::max());
        for (NodeId node = 0; node < count; ++node) {
            if (in_i[node] == i_side) {
                node_local[node] = static_cast<NodeId>(out.bags.size());
                std::vector<Vertex> bag;
                for (Vertex v : level.bags[node]) {
                    if (options_.debug_checks) {
                        check_invariant(local[v] != kNone, "bag vertex outside its side of the split");
                    }
                    bag.push_back(local[v]);
                }
                out.bags.push_back(std::move(bag));
            }
        }
        out.tree.resize(out.bags.size());
        for (NodeId node = 0; node < count; ++node) {
            if (node_local[node] == std::numeric_limits<NodeId>::max()) {
                continue;
            }
            for (NodeId w : level.tree[node]) {
                if (node_local[w] != std::numeric_limits<NodeId>::max()) {
                    out.tree[node_local[node]].push_back(node_local[w]);
                }
            }
        }
        out.root = 0;

        if (options_.debug_checks) {
            validate_decomposition(as_graph(out), as_decomposition(out));
        }
        return out;
    }

    Distance p_;
    TreewidthOptions options_;
    std::vector<std::uint64_t> acc_;
    TreewidthStats stats_;
};

}  // namespace

std::size_t count_associations(std::span<const Distance> a_to_s, std::span<const Distance> s_to_b) {
    const std::size_t size = std::min(a_to_s.size(), s_to_b.size());
    auto through = [&](std::size_t i) -> Distance {
        if (a_to_s[i] == kUnreachable || s_to_b[i] == kUnreachable) {
            return kUnreachable;
        }
        return a_to_s[i] + s_to_b[i];
    };
    std::size_t matches = 0;
    for (std::size_t i = 0; i < size; ++i) {
        const Distance mine = through(i);
        if (mine == kUnreachable) {
            continue;
        }
        bool ok = true;
        for (std::size_t j = 0; j < size && ok; ++j) {
            const Distance other = through(j);
            if (j < i) {
                ok = mine < other;
            } else if (j > i) {
                ok = mine <= other;
            }
        }
        matches += ok ? 1 : 0;
    }
    return matches;
}

DistanceDistribution tw_distance_prefix(const Graph& g, const std::optional<TreeDecomposition>& td,
                                        Distance max_distance, const TreewidthOptions& options,
                                        TreewidthStats* stats) {
    if (max_distance < 1) {
        throw std::invalid_argument("distance prefix must be >= 1");
    }
    const std::size_t n = g.num_vertices();
    DistanceDistribution out(n);
    if (n == 0) {
        return out;
    }
    TreeDecomposition source = td ? *td : heuristic_decomposition(g);
    if (td) {
        validate_decomposition(g, source);
    }
    const NiceDecomposition nice = make_nice(source, n);
    if (options.debug_checks) {
        check_nice(nice);
    }

    // No shortest path is longer than the total edge weight.
    const Distance p = std::min<Distance>(max_distance, std::max<Weight>(g.total_weight(), 1));

    Level level;
    level.adj.resize(n);
    for (const Edge& e : g.edges()) {
        level.adj[e.u].push_back({e.v, e.w});
        level.adj[e.v].push_back({e.u, e.w});
    }
    level.tree.resize(nice.num_nodes());
    for (NodeId i = 0; i < nice.num_nodes(); ++i) {
        level.bags.push_back(nice.nodes[i].bag);
        for (NodeId c : nice.nodes[i].children) {
            level.tree[i].push_back(c);
            level.tree[c].push_back(i);
        }
    }
    level.root = nice.root;

    Pipeline pipeline(p, options);
    pipeline.run(std::move(level));
    if (stats != nullptr) {
        *stats = pipeline.stats();
    }
    const auto acc = pipeline.take();
    for (Distance d = 1; d < acc.size(); ++d) {
        out.add(d, acc[d]);
    }
    return out;
}

DistanceDistribution tw_distance_distribution(const Graph& g,
                                              const std::optional<TreeDecomposition>& td,
                                              const TreewidthOptions& options) {
    return tw_distance_prefix(g, td, std::max<Weight>(g.total_weight(), 1), options);
}

}  // namespace geodesic
