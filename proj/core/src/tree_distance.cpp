#include "geodesic/tree_distance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "geodesic/parallel.hpp"
#include "geodesic/polynomial.hpp"

namespace geodesic {

namespace {

// Adjacency in CSR form over local ids 0..n-1.
struct CompactTree {
    std::vector<std::uint32_t> offset{0};
    std::vector<Vertex> adj;

    std::size_t size() const { return offset.size() - 1; }
    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj.data() + offset[v], adj.data() + offset[v + 1]};
    }
};

CompactTree compact(const Tree& t) {
    CompactTree ct;
    const std::size_t n = t.num_vertices();
    ct.offset.assign(n + 1, 0);
    for (Vertex v = 0; v < n; ++v) {
        ct.offset[v + 1] = ct.offset[v] + static_cast<std::uint32_t>(t.neighbors(v).size());
    }
    ct.adj.reserve(ct.offset[n]);
    for (Vertex v = 0; v < n; ++v) {
        for (const Neighbor& nb : t.neighbors(v)) {
            ct.adj.push_back(nb.to);
        }
    }
    return ct;
}

// Builds the tree induced by `members` (ids in `tree`), relabeled in member order.
// `local` must map every vertex to kNone on entry and is restored on exit.
CompactTree extract(const CompactTree& tree, std::span<const Vertex> members,
                    std::vector<Vertex>& local) {
    constexpr Vertex kNone = std::numeric_limits<Vertex>::max();
    for (std::size_t i = 0; i < members.size(); ++i) {
        local[members[i]] = static_cast<Vertex>(i);
    }
    CompactTree sub;
    sub.offset.assign(members.size() + 1, 0);
    sub.adj.reserve(2 * (members.size() - 1));
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (Vertex w : tree.neighbors(members[i])) {
            if (local[w] != kNone) {
                sub.adj.push_back(local[w]);
            }
        }
        sub.offset[i + 1] = static_cast<std::uint32_t>(sub.adj.size());
    }
    for (Vertex v : members) {
        local[v] = kNone;
    }
    return sub;
}

// Vertices in DFS preorder from `root`, with parents.
void preorder(const CompactTree& tree, Vertex root, std::vector<Vertex>& order,
              std::vector<Vertex>& parent) {
    const std::size_t n = tree.size();
    order.clear();
    order.reserve(n);
    parent.assign(n, std::numeric_limits<Vertex>::max());
    std::vector<Vertex> stack{root};
    while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        order.push_back(u);
        for (Vertex w : tree.neighbors(u)) {
            if (w != parent[u]) {
                parent[w] = u;
                stack.push_back(w);
            }
        }
    }
}

std::vector<std::size_t> sizes_from(const CompactTree& tree, Vertex root) {
    std::vector<Vertex> order;
    std::vector<Vertex> parent;
    preorder(tree, root, order, parent);
    std::vector<std::size_t> size(tree.size(), 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (*it != root) {
            size[parent[*it]] += size[*it];
        }
    }
    return size;
}

Vertex centroid_of(const CompactTree& tree) {
    const std::size_t n = tree.size();
    if (n <= 1) {
        return 0;
    }
    std::vector<Vertex> order;
    std::vector<Vertex> parent;
    preorder(tree, 0, order, parent);
    std::vector<std::size_t> size(n, 1);
    std::vector<std::size_t> heaviest_child(n, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Vertex v = *it;
        if (v != 0) {
            size[parent[v]] += size[v];
            heaviest_child[parent[v]] = std::max(heaviest_child[parent[v]], size[v]);
        }
    }
    Vertex best = 0;
    std::size_t best_load = n;
    for (Vertex v = 0; v < n; ++v) {
        const std::size_t load = std::max(heaviest_child[v], n - size[v]);
        if (load < best_load) {
            best_load = load;
            best = v;
        }
    }
    return best;
}

struct Branch {
    std::vector<Vertex> members;
    std::vector<CoeffPoly::Coeff> depth_counts;  // index = distance from the root
};

// Splits tree - root into its components, recording each one's distances to root.
std::vector<Branch> branches_of(const CompactTree& tree, Vertex root, Distance max_degree) {
    std::vector<Branch> out;
    std::vector<Distance> dist(tree.size(), kUnreachable);
    dist[root] = 0;
    for (Vertex start : tree.neighbors(root)) {
        Branch b;
        b.members.push_back(start);
        dist[start] = 1;
        for (std::size_t head = 0; head < b.members.size(); ++head) {
            const Vertex u = b.members[head];
            const Distance d = dist[u];
            if (d <= max_degree) {
                if (b.depth_counts.size() <= d) {
                    b.depth_counts.resize(d + 1, 0);
                }
                ++b.depth_counts[d];
            }
            for (Vertex w : tree.neighbors(u)) {
                if (dist[w] == kUnreachable) {
                    dist[w] = d + 1;
                    b.members.push_back(w);
                }
            }
        }
        out.push_back(std::move(b));
    }
    return out;
}

// Adds the through-root pair counts into acc[distance].
void add_root_contribution(const std::vector<Branch>& branches, Distance max_degree,
                           std::uint64_t coeff_bound, std::vector<std::uint64_t>& acc) {
    // P_0 = x^0 stands for the root itself.
    std::vector<CoeffPoly::Coeff> total{1};
    for (const Branch& b : branches) {
        if (total.size() < b.depth_counts.size()) {
            total.resize(b.depth_counts.size(), 0);
        }
        for (std::size_t i = 0; i < b.depth_counts.size(); ++i) {
            total[i] += b.depth_counts[i];
        }
    }
    const CoeffPoly sum(std::move(total));
    CoeffPoly squares = CoeffPoly{1};
    for (const Branch& b : branches) {
        const CoeffPoly part(b.depth_counts);
        squares = poly_add(squares, poly_truncate(poly_mul(part, part, coeff_bound), max_degree));
    }
    const CoeffPoly doubled =
        poly_sub_nonneg(poly_truncate(poly_mul(sum, sum, coeff_bound), max_degree), squares);
    for (std::size_t j = 1; j < doubled.size() && j < acc.size(); ++j) {
        if (doubled.coeffs()[j] % 2 != 0) {
            invariant_failure("odd ordered-pair count in root contribution");
        }
        acc[j] += doubled.coeffs()[j] / 2;
    }
}

struct Decomposer {
    Distance max_degree;
    std::uint64_t coeff_bound;
    bool checks;
    std::size_t depth_limit;
    TreeDistanceStats stats;
    std::vector<Vertex> local;  // scratch, all kNone between calls

    explicit Decomposer(std::size_t n, Distance max_deg, bool debug)
        : max_degree(max_deg),
          coeff_bound(static_cast<std::uint64_t>(n) * n),
          checks(debug),
          depth_limit(static_cast<std::size_t>(std::bit_width(n))) {}

    // Processes `tree` as recursion level `depth` (1-based).
    void run(const CompactTree& tree, std::size_t depth, std::vector<std::uint64_t>& acc,
             std::vector<CompactTree>* defer = nullptr) {
        const std::size_t n = tree.size();
        stats.max_depth = std::max(stats.max_depth, depth);
        if (checks) {
            check_invariant(depth <= depth_limit, "centroid recursion deeper than log2(n) + 1");
        }
        if (n <= 1) {
            return;
        }
        if (n == 2) {
            if (acc.size() > 1) {
                acc[1] += 1;
            }
            return;
        }
        const Vertex c = centroid_of(tree);
        ++stats.centroids;
        auto branches = branches_of(tree, c, max_degree);
        if (checks) {
            for (const Branch& b : branches) {
                check_invariant(b.members.size() <= n / 2,
                                "component after centroid removal exceeds n/2");
            }
        }
        add_root_contribution(branches, max_degree, coeff_bound, acc);

        if (local.size() < n) {
            local.resize(n, std::numeric_limits<Vertex>::max());
        }
        for (const Branch& b : branches) {
            CompactTree sub = extract(tree, b.members, local);
            if (defer != nullptr) {
                defer->push_back(std::move(sub));
            } else {
                run(sub, depth + 1, acc);
            }
        }
    }
};

std::size_t checked_vertex(const Tree& t, Vertex v) {
    if (v >= t.num_vertices()) {
        throw std::out_of_range("vertex " + std::to_string(v) + " not in tree");
    }
    return v;
}

}  // namespace

std::vector<std::size_t> subtree_sizes(const Tree& t, Vertex root) {
    checked_vertex(t, root);
    return sizes_from(compact(t), root);
}

Vertex find_centroid(const Tree& t) {
    return centroid_of(compact(t));
}

DistanceDistribution root_contribution(const Tree& t, Vertex r, std::optional<Distance> max_degree) {
    checked_vertex(t, r);
    const std::size_t n = t.num_vertices();
    const Distance limit = std::min<Distance>(max_degree.value_or(n), n);
    const CompactTree tree = compact(t);
    std::vector<std::uint64_t> acc(limit + 1, 0);
    add_root_contribution(branches_of(tree, r, limit), limit,
                          static_cast<std::uint64_t>(n) * n, acc);
    DistanceDistribution out(n);
    for (std::size_t d = 1; d < acc.size(); ++d) {
        out.add(d, acc[d]);
    }
    return out;
}

std::uint64_t path_count_through(const Tree& t, Vertex r) {
    return root_contribution(t, r).total_pairs();
}

DistanceDistribution tree_distance_distribution(const Tree& t, const TreeDistanceOptions& options,
                                                TreeDistanceStats* stats) {
    const std::size_t n = t.num_vertices();
    const Distance limit =
        std::min<Distance>(options.prefix.value_or(n - 1), n == 0 ? 0 : n - 1);
    std::vector<std::uint64_t> acc(limit + 1, 0);

    Decomposer top(n, limit, options.debug_checks);
    const CompactTree root = compact(t);
    if (options.threads <= 1) {
        top.run(root, 1, acc);
    } else {
        std::vector<CompactTree> parts;
        top.run(root, 1, acc, &parts);
        std::vector<std::vector<std::uint64_t>> partial(parts.size());
        std::vector<TreeDistanceStats> part_stats(parts.size());
        parallel_for(parts.size(), options.threads, [&](std::size_t i) {
            Decomposer worker(n, limit, options.debug_checks);
            partial[i].assign(limit + 1, 0);
            worker.run(parts[i], 2, partial[i]);
            part_stats[i] = worker.stats;
        });
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (std::size_t d = 0; d <= limit; ++d) {
                acc[d] += partial[i][d];
            }
            top.stats.max_depth = std::max(top.stats.max_depth, part_stats[i].max_depth);
            top.stats.centroids += part_stats[i].centroids;
        }
    }
    if (stats != nullptr) {
        *stats = top.stats;
    }

    DistanceDistribution out(n);
    for (std::size_t d = 1; d <= limit; ++d) {
        out.add(d, acc[d]);
    }
    return out;
}

}  // namespace geodesic
