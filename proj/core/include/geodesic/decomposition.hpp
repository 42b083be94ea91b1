#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geodesic/graph.hpp"

namespace geodesic {

using NodeId = std::uint32_t;

/// Bags over a tree of nodes 0..I-1.
struct TreeDecomposition {
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<NodeId, NodeId>> edges;

    std::size_t num_nodes() const { return bags.size(); }
    /// max bag size - 1 (0 for an empty decomposition).
    std::size_t width() const;
};

enum class DecompositionProperty {
    NodeTree,       // nodes and edges do not form a tree
    BagRange,       // a bag names a vertex outside the graph
    VertexCoverage, // some vertex appears in no bag
    EdgeCoverage,   // some edge has no bag holding both endpoints
    Coherence,      // the nodes holding some vertex are not connected
};

std::string_view to_string(DecompositionProperty p);

class InvalidDecomposition : public std::invalid_argument {
public:
    InvalidDecomposition(DecompositionProperty property, std::string witness);

    DecompositionProperty property() const { return property_; }
    const std::string& witness() const { return witness_; }

private:
    DecompositionProperty property_;
    std::string witness_;
};

/// Returns the width, or throws InvalidDecomposition naming the first failed
/// property with a witness.
std::size_t validate_decomposition(const Graph& g, const TreeDecomposition& td);

/// Greedy min-fill elimination ordering (ties: lower degree, then lower id).
TreeDecomposition heuristic_decomposition(const Graph& g);

/// Contracts every node whose bag is contained in a neighbour's bag.
TreeDecomposition reduce_decomposition(const TreeDecomposition& td);

enum class NiceKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
    NiceKind kind = NiceKind::Leaf;
    std::vector<Vertex> bag;  // sorted
    std::vector<NodeId> children;
    /// Introduced or forgotten vertex.
    Vertex vertex = 0;
};

/// Rooted binary decomposition where every node is a leaf (empty bag),
/// introduce, forget, or join (two children with identical bags).
struct NiceDecomposition {
    std::vector<NiceNode> nodes;
    NodeId root = 0;

    std::size_t num_nodes() const { return nodes.size(); }
    std::size_t width() const;
    TreeDecomposition as_tree_decomposition() const;
};

/// Upper bound factor: a nice decomposition has at most
/// kNiceNodeFactor * (width + 1) * max(n, 1) nodes.
inline constexpr std::size_t kNiceNodeFactor = 5;

/// Converts a valid decomposition into nice form of the same width.
/// The input is reduced first so the node count stays linear in n.
NiceDecomposition make_nice(const TreeDecomposition& td, std::size_t num_vertices);

/// Throws std::logic_error unless `nd` satisfies the nice-node rules.
void check_nice(const NiceDecomposition& nd);

/// Tree edge (i, j) whose removal leaves the component of i and of j each with
/// between N/3 and 2N/3 nodes; the first such edge in DFS preorder from the
/// root, where i is the child side. If no edge meets the bounds (possible in
/// tiny trees with a degree-3 node), the most balanced edge is returned.
std::pair<NodeId, NodeId> balanced_edge(const NiceDecomposition& nd);

/// Same rule over an arbitrary node tree given as adjacency lists, rooted at `root`.
std::pair<NodeId, NodeId> balanced_edge(const std::vector<std::vector<NodeId>>& adjacency,
                                        NodeId root);

/// Text format: "I width", I bag lines, I-1 lines "a b" (0-based node ids).
TreeDecomposition parse_decomposition(std::string_view text);
std::string format_decomposition(const TreeDecomposition& td);

}  // namespace geodesic
