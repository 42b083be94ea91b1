#include "geodesic/graph.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <queue>
#include <sstream>

namespace geodesic {

namespace {

std::uint64_t edge_key(Vertex u, Vertex v) {
    if (u > v) {
        std::swap(u, v);
    }
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

Graph::Graph(std::size_t n) : adjacency_(n) {
    if (n > std::numeric_limits<Vertex>::max()) {
        throw GraphError("vertex count exceeds 32-bit id range");
    }
}

Graph::Graph(std::size_t n, std::vector<Edge> edges) : Graph(n) {
    std::vector<std::uint64_t> keys;
    keys.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.u >= n || e.v >= n) {
            throw GraphError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                             ") has an endpoint out of range");
        }
        if (e.u == e.v) {
            throw GraphError("self-loop at vertex " + std::to_string(e.u));
        }
        keys.push_back(edge_key(e.u, e.v));
    }
    std::sort(keys.begin(), keys.end());
    if (auto dup = std::adjacent_find(keys.begin(), keys.end()); dup != keys.end()) {
        throw GraphError("duplicate edge (" + std::to_string(*dup >> 32) + ", " +
                         std::to_string(*dup & 0xffffffffu) + ")");
    }
    edges_ = std::move(edges);
    for (const Edge& e : edges_) {
        adjacency_[e.u].push_back({e.v, e.w});
        adjacency_[e.v].push_back({e.u, e.w});
    }
}

bool Graph::unit_weights() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w == 1; });
}

Weight Graph::total_weight() const {
    Weight total = 0;
    for (const Edge& e : edges_) {
        total += e.w;
    }
    return total;
}

Graph Graph::induced(std::span<const Vertex> keep) const {
    constexpr Vertex kDropped = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> relabel(num_vertices(), kDropped);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        relabel.at(keep[i]) = static_cast<Vertex>(i);
    }
    std::vector<Edge> kept;
    for (const Edge& e : edges_) {
        if (relabel[e.u] != kDropped && relabel[e.v] != kDropped) {
            kept.push_back({relabel[e.u], relabel[e.v], e.w});
        }
    }
    return Graph(keep.size(), std::move(kept));
}

Graph Graph::without(std::span<const Vertex> removed) const {
    std::vector<bool> gone(num_vertices(), false);
    for (Vertex v : removed) {
        gone.at(v) = true;
    }
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < num_vertices(); ++v) {
        if (!gone[v]) {
            keep.push_back(v);
        }
    }
    return induced(keep);
}

Tree::Tree(Graph g) : graph_(std::move(g)) {
    const std::size_t n = graph_.num_vertices();
    if (n == 0) {
        throw GraphError("a tree needs at least one vertex");
    }
    if (graph_.num_edges() != n - 1) {
        throw GraphError("a tree on " + std::to_string(n) + " vertices needs " +
                         std::to_string(n - 1) + " edges, got " +
                         std::to_string(graph_.num_edges()));
    }
    if (!graph_.unit_weights()) {
        throw GraphError("tree edges must have unit weight");
    }
    const auto comp = connected_components(graph_);
    if (std::any_of(comp.begin(), comp.end(), [](std::size_t c) { return c != 0; })) {
        throw GraphError("graph is not connected");
    }
}

bool Tree::is_tree(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n == 0 || g.num_edges() != n - 1 || !g.unit_weights()) {
        return false;
    }
    const auto comp = connected_components(g);
    return std::all_of(comp.begin(), comp.end(), [](std::size_t c) { return c == 0; });
}

Tree Tree::path(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < n; ++i) {
        edges.push_back({static_cast<Vertex>(i - 1), static_cast<Vertex>(i), 1});
    }
    return Tree(Graph(n, std::move(edges)));
}

Tree Tree::star(std::size_t leaves) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i <= leaves; ++i) {
        edges.push_back({0, static_cast<Vertex>(i), 1});
    }
    return Tree(Graph(leaves + 1, std::move(edges)));
}

Tree Tree::from_parents(std::span<const Vertex> parent) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < parent.size(); ++i) {
        edges.push_back({parent[i], static_cast<Vertex>(i), 1});
    }
    return Tree(Graph(parent.size(), std::move(edges)));
}

std::string_view to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::Malformed: return "malformed line";
        case ParseErrorKind::DuplicateEdge: return "duplicate edge";
        case ParseErrorKind::SelfLoop: return "self-loop";
        case ParseErrorKind::OutOfRange: return "vertex id out of range";
        case ParseErrorKind::NegativeWeight: return "negative weight";
        case ParseErrorKind::WeightNotAllowed: return "weight given for unweighted input";
    }
    return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ": " + std::string(to_string(kind)) +
                         (detail.empty() ? "" : ": " + detail)),
      kind_(kind),
      line_(line) {}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
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
            tokens.push_back(line.substr(start, i - start));
        }
    }
    return tokens;
}

template <typename Int>
bool parse_int(std::string_view token, Int& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace

Graph parse_edge_list(std::string_view text, bool weighted) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    auto next_line = [&](std::string_view& line) {
        while (pos < text.size()) {
            const std::size_t end = std::min(text.find('\n', pos), text.size());
            line = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            auto tokens = split_tokens(line);
            if (tokens.empty() || tokens.front().front() == '#') {
                continue;
            }
            return true;
        }
        return false;
    };

    std::string_view line;
    if (!next_line(line)) {
        throw ParseError(ParseErrorKind::Malformed, std::max<std::size_t>(line_no, 1),
                         "missing \"n m\" header");
    }
    auto header = split_tokens(line);
    std::int64_t n = 0;
    std::int64_t m = 0;
    if (header.size() != 2 || !parse_int(header[0], n) || !parse_int(header[1], m) || n < 0 ||
        m < 0) {
        throw ParseError(ParseErrorKind::Malformed, line_no, "expected \"n m\"");
    }
    if (n > std::numeric_limits<Vertex>::max()) {
        throw ParseError(ParseErrorKind::OutOfRange, line_no, "vertex count too large");
    }

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    std::vector<std::pair<std::uint64_t, std::size_t>> seen;
    seen.reserve(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) {
        if (!next_line(line)) {
            throw ParseError(ParseErrorKind::Malformed, line_no + 1,
                             "expected " + std::to_string(m) + " edges, found " +
                                 std::to_string(i));
        }
        auto tokens = split_tokens(line);
        if (tokens.size() != 2 && tokens.size() != 3) {
            throw ParseError(ParseErrorKind::Malformed, line_no, "expected \"u v\" or \"u v w\"");
        }
        std::int64_t u = 0;
        std::int64_t v = 0;
        if (!parse_int(tokens[0], u) || !parse_int(tokens[1], v)) {
            throw ParseError(ParseErrorKind::Malformed, line_no, "vertex ids must be integers");
        }
        Weight w = 1;
        if (tokens.size() == 3) {
            if (!weighted) {
                throw ParseError(ParseErrorKind::WeightNotAllowed, line_no, "");
            }
            std::int64_t signed_w = 0;
            if (!parse_int(tokens[2], signed_w)) {
                throw ParseError(ParseErrorKind::Malformed, line_no, "weight must be an integer");
            }
            if (signed_w < 0) {
                throw ParseError(ParseErrorKind::NegativeWeight, line_no, std::string(tokens[2]));
            }
            w = static_cast<Weight>(signed_w);
        }
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw ParseError(ParseErrorKind::OutOfRange, line_no,
                             std::to_string(u) + " " + std::to_string(v) + " with n = " +
                                 std::to_string(n));
        }
        if (u == v) {
            throw ParseError(ParseErrorKind::SelfLoop, line_no, std::to_string(u));
        }
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
        seen.emplace_back(edge_key(static_cast<Vertex>(u), static_cast<Vertex>(v)), line_no);
    }
    if (next_line(line)) {
        throw ParseError(ParseErrorKind::Malformed, line_no,
                         "unexpected content after " + std::to_string(m) + " edges");
    }

    std::stable_sort(seen.begin(), seen.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t dup_line = 0;
    for (std::size_t i = 1; i < seen.size(); ++i) {
        if (seen[i].first == seen[i - 1].first && (dup_line == 0 || seen[i].second < dup_line)) {
            dup_line = seen[i].second;
        }
    }
    if (dup_line != 0) {
        throw ParseError(ParseErrorKind::DuplicateEdge, dup_line, "");
    }
    return Graph(static_cast<std::size_t>(n), std::move(edges));
}

std::string format_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const Edge& e : g.edges()) {
        out << e.u << ' ' << e.v;
        if (e.w != 1) {
            out << ' ' << e.w;
        }
        out << '\n';
    }
    return out.str();
}

std::vector<Distance> bfs_distances(const Graph& g, Vertex source) {
    if (source >= g.num_vertices()) {
        throw std::out_of_range("source vertex " + std::to_string(source) + " out of range");
    }
    std::vector<Distance> dist(g.num_vertices(), kUnreachable);
    std::vector<Vertex> queue;
    queue.reserve(g.num_vertices());
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex u = queue[head];
        for (const Neighbor& nb : g.neighbors(u)) {
            if (dist[nb.to] == kUnreachable) {
                dist[nb.to] = dist[u] + 1;
                queue.push_back(nb.to);
            }
        }
    }
    return dist;
}

std::vector<Distance> dijkstra_distances(const Graph& g, Vertex source) {
    if (source >= g.num_vertices()) {
        throw std::out_of_range("source vertex " + std::to_string(source) + " out of range");
    }
    std::vector<Distance> dist(g.num_vertices(), kUnreachable);
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
        for (const Neighbor& nb : g.neighbors(u)) {
            const Distance cand = d + nb.w;
            if (cand < dist[nb.to]) {
                dist[nb.to] = cand;
                heap.emplace(cand, nb.to);
            }
        }
    }
    return dist;
}

std::vector<Distance> shortest_distances(const Graph& g, Vertex source) {
    return g.unit_weights() ? bfs_distances(g, source) : dijkstra_distances(g, source);
}

std::vector<std::size_t> connected_components(const Graph& g) {
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> comp(g.num_vertices(), kNone);
    std::vector<Vertex> stack;
    std::size_t next = 0;
    for (Vertex s = 0; s < g.num_vertices(); ++s) {
        if (comp[s] != kNone) {
            continue;
        }
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            for (const Neighbor& nb : g.neighbors(u)) {
                if (comp[nb.to] == kNone) {
                    comp[nb.to] = next;
                    stack.push_back(nb.to);
                }
            }
        }
        ++next;
    }
    return comp;
}

}  // namespace geodesic
