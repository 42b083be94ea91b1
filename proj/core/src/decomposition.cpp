#include "geodesic/decomposition.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

namespace geodesic {

std::size_t TreeDecomposition::width() const {
    std::size_t w = 0;
    for (const auto& bag : bags) {
        w = std::max(w, bag.size());
    }
    return w == 0 ? 0 : w - 1;
}

std::string_view to_string(DecompositionProperty p) {
    switch (p) {
        case DecompositionProperty::NodeTree: return "decomposition nodes do not form a tree";
        case DecompositionProperty::BagRange: return "bag contents invalid";
        case DecompositionProperty::VertexCoverage: return "vertex not covered by any bag";
        case DecompositionProperty::EdgeCoverage: return "edge not covered by any bag";
        case DecompositionProperty::Coherence: return "bags holding a vertex are not connected";
    }
    return "invalid decomposition";
}

InvalidDecomposition::InvalidDecomposition(DecompositionProperty property, std::string witness)
    : std::invalid_argument(std::string(to_string(property)) + ": " + witness),
      property_(property),
      witness_(std::move(witness)) {}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        parent_[a] = b;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

std::vector<Vertex> sorted_unique(std::vector<Vertex> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<std::vector<NodeId>> node_adjacency(std::size_t count,
                                                const std::vector<std::pair<NodeId, NodeId>>& edges) {
    std::vector<std::vector<NodeId>> adj(count);
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

}  // namespace

std::size_t validate_decomposition(const Graph& g, const TreeDecomposition& td) {
    const std::size_t n = g.num_vertices();
    const std::size_t count = td.num_nodes();

    if (count == 0) {
        if (n != 0) {
            throw InvalidDecomposition(DecompositionProperty::VertexCoverage, "vertex 0");
        }
        return 0;
    }
    if (td.edges.size() != count - 1) {
        throw InvalidDecomposition(DecompositionProperty::NodeTree,
                                   std::to_string(count) + " nodes need " +
                                       std::to_string(count - 1) + " edges, got " +
                                       std::to_string(td.edges.size()));
    }
    DisjointSets nodes(count);
    for (const auto& [a, b] : td.edges) {
        if (a >= count || b >= count || a == b) {
            throw InvalidDecomposition(DecompositionProperty::NodeTree,
                                       "edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
        }
        if (!nodes.unite(a, b)) {
            throw InvalidDecomposition(DecompositionProperty::NodeTree,
                                       "edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                           ") closes a cycle");
        }
    }

    std::vector<std::vector<NodeId>> holders(n);
    for (NodeId i = 0; i < count; ++i) {
        const auto& bag = td.bags[i];
        for (std::size_t k = 0; k < bag.size(); ++k) {
            if (bag[k] >= n) {
                throw InvalidDecomposition(DecompositionProperty::BagRange,
                                           "bag " + std::to_string(i) + " holds vertex " +
                                               std::to_string(bag[k]));
            }
        }
        const auto unique = sorted_unique(bag);
        if (unique.size() != bag.size()) {
            throw InvalidDecomposition(DecompositionProperty::BagRange,
                                       "bag " + std::to_string(i) + " repeats a vertex");
        }
        for (Vertex v : unique) {
            holders[v].push_back(i);
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (holders[v].empty()) {
            throw InvalidDecomposition(DecompositionProperty::VertexCoverage,
                                       "vertex " + std::to_string(v));
        }
    }
    for (const Edge& e : g.edges()) {
        const auto& a = holders[e.u];
        const auto& b = holders[e.v];
        std::vector<NodeId> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (common.empty()) {
            throw InvalidDecomposition(DecompositionProperty::EdgeCoverage,
                                       "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
        }
    }

    // The nodes holding v induce a forest; it is connected iff it has |holders| - 1 edges.
    std::vector<std::size_t> inner_edges(n, 0);
    std::vector<std::vector<Vertex>> sorted_bags(count);
    for (NodeId i = 0; i < count; ++i) {
        sorted_bags[i] = sorted_unique(td.bags[i]);
    }
    for (const auto& [a, b] : td.edges) {
        std::vector<Vertex> common;
        std::set_intersection(sorted_bags[a].begin(), sorted_bags[a].end(), sorted_bags[b].begin(),
                              sorted_bags[b].end(), std::back_inserter(common));
        for (Vertex v : common) {
            ++inner_edges[v];
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (inner_edges[v] + 1 != holders[v].size()) {
            throw InvalidDecomposition(DecompositionProperty::Coherence, "vertex " + std::to_string(v));
        }
    }
    return td.width();
}

TreeDecomposition heuristic_decomposition(const Graph& g) {
    const std::size_t n = g.num_vertices();
    TreeDecomposition td;
    if (n == 0) {
        return td;
    }

    std::vector<std::set<Vertex>> adj(n);
    for (const Edge& e : g.edges()) {
        adj[e.u].insert(e.v);
        adj[e.v].insert(e.u);
    }
    auto fill_of = [&](Vertex v) {
        std::size_t missing = 0;
        for (auto a = adj[v].begin(); a != adj[v].end(); ++a) {
            for (auto b = std::next(a); b != adj[v].end(); ++b) {
                if (!adj[*a].contains(*b)) {
                    ++missing;
                }
            }
        }
        return missing;
    };

    using Key = std::tuple<std::size_t, std::size_t, Vertex>;
    std::set<Key> queue;
    std::vector<Key> key(n);
    for (Vertex v = 0; v < n; ++v) {
        key[v] = {fill_of(v), adj[v].size(), v};
        queue.insert(key[v]);
    }

    constexpr std::size_t kNotYet = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> position(n, kNotYet);
    std::vector<Vertex> order;
    std::vector<std::vector<Vertex>> later_neighbors(n);
    order.reserve(n);
    while (!queue.empty()) {
        const Vertex v = std::get<2>(*queue.begin());
        queue.erase(queue.begin());
        position[v] = order.size();
        order.push_back(v);

        std::vector<Vertex> nbrs(adj[v].begin(), adj[v].end());
        later_neighbors[v] = nbrs;
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                adj[nbrs[i]].insert(nbrs[j]);
                adj[nbrs[j]].insert(nbrs[i]);
            }
        }
        for (Vertex w : nbrs) {
            adj[w].erase(v);
        }
        adj[v].clear();

        std::set<Vertex> touched(nbrs.begin(), nbrs.end());
        for (Vertex w : nbrs) {
            touched.insert(adj[w].begin(), adj[w].end());
        }
        for (Vertex w : touched) {
            queue.erase(key[w]);
            key[w] = {fill_of(w), adj[w].size(), w};
            queue.insert(key[w]);
        }
    }

    td.bags.resize(n);
    NodeId previous_root = std::numeric_limits<NodeId>::max();
    for (std::size_t i = 0; i < n; ++i) {
        const Vertex v = order[i];
        auto bag = later_neighbors[v];
        bag.push_back(v);
        td.bags[i] = sorted_unique(std::move(bag));
        if (later_neighbors[v].empty()) {
            if (previous_root != std::numeric_limits<NodeId>::max()) {
                td.edges.emplace_back(previous_root, static_cast<NodeId>(i));
            }
            previous_root = static_cast<NodeId>(i);
            continue;
        }
        std::size_t parent = kNotYet;
        for (Vertex w : later_neighbors[v]) {
            parent = std::min(parent, position[w]);
        }
        td.edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(parent));
    }
    return td;
}

TreeDecomposition reduce_decomposition(const TreeDecomposition& td) {
    const std::size_t count = td.num_nodes();
    std::vector<std::vector<Vertex>> bags(count);
    for (std::size_t i = 0; i < count; ++i) {
        bags[i] = sorted_unique(td.bags[i]);
    }
    std::vector<std::set<NodeId>> adj(count);
    for (const auto& [a, b] : td.edges) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    std::vector<bool> alive(count, true);
    auto subset = [&](NodeId a, NodeId b) {
        return std::includes(bags[b].begin(), bags[b].end(), bags[a].begin(), bags[a].end());
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (NodeId a = 0; a < count; ++a) {
            if (!alive[a]) {
                continue;
            }
            for (NodeId b : adj[a]) {
                if (!subset(a, b)) {
                    continue;
                }
                for (NodeId c : adj[a]) {
                    if (c != b) {
                        adj[c].erase(a);
                        adj[c].insert(b);
                        adj[b].insert(c);
                    }
                }
                adj[b].erase(a);
                adj[a].clear();
                alive[a] = false;
                changed = true;
                break;
            }
        }
    }

    std::vector<NodeId> relabel(count, 0);
    TreeDecomposition out;
    for (NodeId i = 0; i < count; ++i) {
        if (alive[i]) {
            relabel[i] = static_cast<NodeId>(out.bags.size());
            out.bags.push_back(bags[i]);
        }
    }
    for (NodeId a = 0; a < count; ++a) {
        if (!alive[a]) {
            continue;
        }
        for (NodeId b : adj[a]) {
            if (a < b) {
                out.edges.emplace_back(relabel[a], relabel[b]);
            }
        }
    }
    return out;
}

std::size_t NiceDecomposition::width() const {
    std::size_t w = 0;
    for (const auto& node : nodes) {
        w = std::max(w, node.bag.size());
    }
    return w == 0 ? 0 : w - 1;
}

TreeDecomposition NiceDecomposition::as_tree_decomposition() const {
    TreeDecomposition td;
    td.bags.reserve(nodes.size());
    for (NodeId i = 0; i < nodes.size(); ++i) {
        td.bags.push_back(nodes[i].bag);
        for (NodeId c : nodes[i].children) {
            td.edges.emplace_back(i, c);
        }
    }
    return td;
}

NiceDecomposition make_nice(const TreeDecomposition& input, std::size_t num_vertices) {
    const TreeDecomposition td = reduce_decomposition(input);
    NiceDecomposition nd;
    if (td.num_nodes() == 0) {
        nd.nodes.push_back(NiceNode{});
        return nd;
    }

    auto add = [&](NiceNode node) {
        nd.nodes.push_back(std::move(node));
        return static_cast<NodeId>(nd.nodes.size() - 1);
    };

    const auto adj = node_adjacency(td.num_nodes(), td.edges);
    std::vector<NodeId> order;
    std::vector<NodeId> parent(td.num_nodes(), std::numeric_limits<NodeId>::max());
    std::vector<NodeId> stack{0};
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        order.push_back(u);
        for (NodeId c : adj[u]) {
            if (c != parent[u]) {
                parent[c] = u;
                stack.push_back(c);
            }
        }
    }

    std::vector<NodeId> rep(td.num_nodes(), 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const NodeId u = *it;
        const auto& bag = td.bags[u];
        std::vector<NodeId> tops;
        for (NodeId c : adj[u]) {
            if (c == parent[u]) {
                continue;
            }
            NodeId top = rep[c];
            std::vector<Vertex> current = td.bags[c];
            std::vector<Vertex> drop;
            std::set_difference(current.begin(), current.end(), bag.begin(), bag.end(),
                                std::back_inserter(drop));
            for (Vertex v : drop) {
                current.erase(std::find(current.begin(), current.end(), v));
                top = add({NiceKind::Forget, current, {top}, v});
            }
            std::vector<Vertex> gain;
            std::set_difference(bag.begin(), bag.end(), td.bags[c].begin(), td.bags[c].end(),
                                std::back_inserter(gain));
            for (Vertex v : gain) {
                current.insert(std::upper_bound(current.begin(), current.end(), v), v);
                top = add({NiceKind::Introduce, current, {top}, v});
            }
            tops.push_back(top);
        }
        if (tops.empty()) {
            NodeId top = add({NiceKind::Leaf, {}, {}, 0});
            std::vector<Vertex> current;
            for (Vertex v : bag) {
                current.push_back(v);
                top = add({NiceKind::Introduce, current, {top}, v});
            }
            rep[u] = top;
        } else {
            NodeId top = tops[0];
            for (std::size_t k = 1; k < tops.size(); ++k) {
                top = add({NiceKind::Join, bag, {top, tops[k]}, 0});
            }
            rep[u] = top;
        }
    }
    nd.root = rep[0];

    const std::size_t limit = kNiceNodeFactor * (nd.width() + 1) * std::max<std::size_t>(num_vertices, 1);
    if (nd.num_nodes() > limit) {
        throw std::logic_error("nice decomposition has " + std::to_string(nd.num_nodes()) +
                               " nodes, above the linear bound " + std::to_string(limit));
    }
    return nd;
}

void check_nice(const NiceDecomposition& nd) {
    std::vector<std::size_t> parents(nd.num_nodes(), 0);
    for (const auto& node : nd.nodes) {
        for (NodeId c : node.children) {
            if (c >= nd.num_nodes()) {
                throw std::logic_error("nice node child out of range");
            }
            ++parents[c];
        }
    }
    for (NodeId i = 0; i < nd.num_nodes(); ++i) {
        const std::size_t expected = i == nd.root ? 0 : 1;
        if (parents[i] != expected) {
            throw std::logic_error("nice node " + std::to_string(i) + " has " +
                                   std::to_string(parents[i]) + " parents");
        }
        const auto& node = nd.nodes[i];
        if (!std::is_sorted(node.bag.begin(), node.bag.end())) {
            throw std::logic_error("nice node " + std::to_string(i) + " bag not sorted");
        }
        auto child_bag = [&](std::size_t k) -> const std::vector<Vertex>& {
            return nd.nodes[node.children[k]].bag;
        };
        switch (node.kind) {
            case NiceKind::Leaf:
                if (!node.children.empty() || !node.bag.empty()) {
                    throw std::logic_error("leaf node " + std::to_string(i) + " is not an empty leaf");
                }
                break;
            case NiceKind::Introduce: {
                if (node.children.size() != 1) {
                    throw std::logic_error("introduce node " + std::to_string(i) + " needs one child");
                }
                auto expect = child_bag(0);
                if (std::binary_search(expect.begin(), expect.end(), node.vertex)) {
                    throw std::logic_error("introduce node " + std::to_string(i) + " re-adds a vertex");
                }
                expect.insert(std::upper_bound(expect.begin(), expect.end(), node.vertex), node.vertex);
                if (expect != node.bag) {
                    throw std::logic_error("introduce node " + std::to_string(i) + " bag mismatch");
                }
                break;
            }
            case NiceKind::Forget: {
                if (node.children.size() != 1) {
                    throw std::logic_error("forget node " + std::to_string(i) + " needs one child");
                }
                auto expect = child_bag(0);
                auto pos = std::lower_bound(expect.begin(), expect.end(), node.vertex);
                if (pos == expect.end() || *pos != node.vertex) {
                    throw std::logic_error("forget node " + std::to_string(i) + " drops an absent vertex");
                }
                expect.erase(pos);
                if (expect != node.bag) {
                    throw std::logic_error("forget node " + std::to_string(i) + " bag mismatch");
                }
                break;
            }
            case NiceKind::Join:
                if (node.children.size() != 2 || child_bag(0) != node.bag || child_bag(1) != node.bag) {
                    throw std::logic_error("join node " + std::to_string(i) +
                                           " needs two children with its own bag");
                }
                break;
        }
    }
}

std::pair<NodeId, NodeId> balanced_edge(const std::vector<std::vector<NodeId>>& adjacency, NodeId root) {
    const std::size_t count = adjacency.size();
    if (count < 2) {
        throw std::invalid_argument("balanced_edge needs at least two nodes");
    }
    constexpr NodeId kNone = std::numeric_limits<NodeId>::max();
    std::vector<NodeId> order;
    std::vector<NodeId> parent(count, kNone);
    std::vector<NodeId> stack{root};
    std::vector<bool> seen(count, false);
    seen[root] = true;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        order.push_back(u);
        // Reverse push keeps the preorder in adjacency order.
        for (auto it = adjacency[u].rbegin(); it != adjacency[u].rend(); ++it) {
            if (!seen[*it]) {
                seen[*it] = true;
                parent[*it] = u;
                stack.push_back(*it);
            }
        }
    }
    std::vector<std::size_t> size(count, 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (parent[*it] != kNone) {
            size[parent[*it]] += size[*it];
        }
    }

    NodeId fallback = kNone;
    std::size_t fallback_load = count + 1;
    for (NodeId c : order) {
        if (parent[c] == kNone) {
            continue;
        }
        const std::size_t s = size[c];
        if (3 * s >= count && 3 * s <= 2 * count) {
            return {c, parent[c]};
        }
        const std::size_t load = std::max(s, count - s);
        if (load < fallback_load) {
            fallback_load = load;
            fallback = c;
        }
    }
    return {fallback, parent[fallback]};
}

std::pair<NodeId, NodeId> balanced_edge(const NiceDecomposition& nd) {
    std::vector<std::vector<NodeId>> adjacency(nd.num_nodes());
    for (NodeId i = 0; i < nd.num_nodes(); ++i) {
        for (NodeId c : nd.nodes[i].children) {
            adjacency[i].push_back(c);
            adjacency[c].push_back(i);
        }
    }
    return balanced_edge(adjacency, nd.root);
}

namespace {

std::vector<std::string_view> tokens_of(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back(line.substr(start, i - start));
        }
    }
    return out;
}

std::uint64_t to_uint(std::string_view token, std::size_t line) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(ParseErrorKind::Malformed, line,
                         "expected a non-negative integer, got \"" + std::string(token) + "\"");
    }
    return value;
}

}  // namespace

TreeDecomposition parse_decomposition(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        lines.push_back(text.substr(pos, end - pos));
        pos = end + 1;
    }
    while (!lines.empty() && tokens_of(lines.back()).empty()) {
        lines.pop_back();
    }
    if (lines.empty()) {
        throw ParseError(ParseErrorKind::Malformed, 1, "missing \"I width\" header");
    }
    const auto header = tokens_of(lines[0]);
    if (header.size() != 2) {
        throw ParseError(ParseErrorKind::Malformed, 1, "expected \"I width\"");
    }
    const auto count = to_uint(header[0], 1);
    const auto declared_width = to_uint(header[1], 1);
    const std::size_t expected_lines = 1 + count + (count == 0 ? 0 : count - 1);
    if (lines.size() != expected_lines) {
        throw ParseError(ParseErrorKind::Malformed, std::min(lines.size(), expected_lines) + 1,
                         "expected " + std::to_string(count) + " bag lines and " +
                             std::to_string(count == 0 ? 0 : count - 1) + " edge lines");
    }

    TreeDecomposition td;
    td.bags.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        for (auto tok : tokens_of(lines[1 + i])) {
            const auto v = to_uint(tok, 2 + i);
            if (v > std::numeric_limits<Vertex>::max()) {
                throw ParseError(ParseErrorKind::OutOfRange, 2 + i, std::string(tok));
            }
            td.bags[i].push_back(static_cast<Vertex>(v));
        }
    }
    for (std::size_t e = 0; e + 1 < count; ++e) {
        const std::size_t line_no = 2 + count + e;
        const auto tok = tokens_of(lines[1 + count + e]);
        if (tok.size() != 2) {
            throw ParseError(ParseErrorKind::Malformed, line_no, "expected \"a b\"");
        }
        const auto a = to_uint(tok[0], line_no);
        const auto b = to_uint(tok[1], line_no);
        if (a >= count || b >= count) {
            throw ParseError(ParseErrorKind::OutOfRange, line_no,
                             "node id out of range for " + std::to_string(count) + " nodes");
        }
        td.edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
    }
    if (td.width() != declared_width) {
        throw ParseError(ParseErrorKind::Malformed, 1,
                         "declared width " + std::to_string(declared_width) +
                             " but the largest bag gives width " + std::to_string(td.width()));
    }
    return td;
}

std::string format_decomposition(const TreeDecomposition& td) {
    std::ostringstream out;
    out << td.num_nodes() << ' ' << td.width() << '\n';
    for (const auto& bag : td.bags) {
        for (std::size_t i = 0; i < bag.size(); ++i) {
            out << (i ? " " : "") << bag[i];
        }
        out << '\n';
    }
    for (const auto& [a, b] : td.edges) {
        out << a << ' ' << b << '\n';
    }
    return out.str();
}

}  // namespace geodesic
