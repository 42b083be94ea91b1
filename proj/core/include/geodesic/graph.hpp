#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace geodesic {

using Vertex = std::uint32_t;
using Weight = std::uint64_t;
using Distance = std::uint64_t;

/// Marker for "no path". Never produced by arithmetic on real distances.
inline constexpr Distance kUnreachable = std::numeric_limits<Distance>::max();

struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    Weight w = 1;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
    Vertex to = 0;
    Weight w = 1;
};

/// Raised when a graph would violate its structural invariants.
class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Undirected graph over dense ids 0..n-1 with non-negative integer weights.
/// Self-loops and duplicate edges are rejected at construction.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n);
    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t num_vertices() const { return adjacency_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const Neighbor> neighbors(Vertex v) const { return adjacency_.at(v); }
    std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }

    bool unit_weights() const;
    Weight total_weight() const;

    /// Subgraph induced by `keep` (must be sorted, unique). Vertex keep[i] becomes i.
    Graph induced(std::span<const Vertex> keep) const;

    /// Graph with the listed vertices removed; survivors keep their relative order.
    Graph without(std::span<const Vertex> removed) const;

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
};

/// A connected unit-weight graph with exactly n-1 edges.
class Tree {
public:
    /// Throws GraphError naming the violated tree property.
    explicit Tree(Graph g);

    static bool is_tree(const Graph& g);

    /// Path 0-1-...-(n-1).
    static Tree path(std::size_t n);
    /// Star with center 0 and `leaves` leaves.
    static Tree star(std::size_t leaves);
    /// Tree from a parent array; parent[0] is ignored, parent[i] < n for i > 0.
    static Tree from_parents(std::span<const Vertex> parent);

    const Graph& graph() const { return graph_; }
    std::size_t num_vertices() const { return graph_.num_vertices(); }
    std::span<const Neighbor> neighbors(Vertex v) const { return graph_.neighbors(v); }

private:
    Graph graph_;
};

enum class ParseErrorKind {
    Malformed,
    DuplicateEdge,
    SelfLoop,
    OutOfRange,
    NegativeWeight,
    WeightNotAllowed,
};

std::string_view to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail);

    ParseErrorKind kind() const { return kind_; }
    /// 1-based input line the error was detected on.
    std::size_t line() const { return line_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
};

/// Parses "n m" followed by m lines of "u v" or "u v w".
/// Blank lines and lines starting with '#' are skipped.
/// With `weighted == false` a third column is rejected.
Graph parse_edge_list(std::string_view text, bool weighted = true);

std::string format_edge_list(const Graph& g);

/// Hop distances from `source`; kUnreachable where no path exists.
std::vector<Distance> bfs_distances(const Graph& g, Vertex source);

/// Weighted shortest-path distances from `source`.
std::vector<Distance> dijkstra_distances(const Graph& g, Vertex source);

/// Shortest-path distances, BFS when all weights are 1.
std::vector<Distance> shortest_distances(const Graph& g, Vertex source);

/// Component id per vertex, numbered in order of first appearance.
std::vector<std::size_t> connected_components(const Graph& g);

}  // namespace geodesic
