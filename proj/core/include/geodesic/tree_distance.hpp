#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "geodesic/debug.hpp"
#include "geodesic/distribution.hpp"
#include "geodesic/graph.hpp"

namespace geodesic {

/// Size of every subtree when `t` is rooted at `root`.
std::vector<std::size_t> subtree_sizes(const Tree& t, Vertex root);

/// A vertex whose removal leaves components of at most n/2 vertices.
/// When the tree has two centroids the smaller id is returned.
Vertex find_centroid(const Tree& t);

/// Distribution of the pairs {u, v}, u != v, whose path passes through r.
/// With `max_degree`, only distances <= max_degree are produced.
DistanceDistribution root_contribution(const Tree& t, Vertex r,
                                       std::optional<Distance> max_degree = std::nullopt);

/// Number of pairs {u, v}, u != v, whose path passes through r.
std::uint64_t path_count_through(const Tree& t, Vertex r);

struct TreeDistanceOptions {
    /// Compute only a_1..a_prefix.
    std::optional<Distance> prefix;
    unsigned threads = 1;
    /// Check the centroid and recursion-depth bounds at every level.
    bool debug_checks = debug_assertions_enabled();
};

struct TreeDistanceStats {
    std::size_t max_depth = 0;
    std::size_t centroids = 0;
};

/// Exact distance distribution of a tree by centroid decomposition.
DistanceDistribution tree_distance_distribution(const Tree& t,
                                                const TreeDistanceOptions& options = {},
                                                TreeDistanceStats* stats = nullptr);

}  // namespace geodesic
