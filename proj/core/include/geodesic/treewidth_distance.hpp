#pragma once

#include <optional>
#include <span>

#include "geodesic/debug.hpp"
#include "geodesic/decomposition.hpp"
#include "geodesic/distribution.hpp"
#include "geodesic/graph.hpp"

namespace geodesic {

struct TreewidthOptions {
    unsigned threads = 1;
    /// Portal containment, split strictness and child-decomposition validity per level.
    bool debug_checks = debug_assertions_enabled();
    /// Subproblems with at most this many vertices are solved by all-pairs
    /// Dijkstra; unset means 2 * (width + 2).
    std::optional<std::size_t> base_vertices;
};

struct TreewidthStats {
    std::size_t levels = 0;
    std::size_t base_cases = 0;
    std::size_t redblue_instances = 0;
    std::size_t max_separator = 0;
};

/// Counts a_1..a_max_distance for a graph with non-negative integer weights.
///
/// The graph is split along a balanced edge of a nice decomposition; the
/// separator S (the two bags' intersection) is turned into a clique of
/// shortest-path weights, both sides recurse, S x S is subtracted once and the
/// pairs across the split are counted with one RedBlue instance per separator
/// vertex. Without `td` a min-fill decomposition is used; a supplied one is
/// validated first (InvalidDecomposition on failure).
DistanceDistribution tw_distance_prefix(const Graph& g, const std::optional<TreeDecomposition>& td,
                                        Distance max_distance,
                                        const TreewidthOptions& options = {},
                                        TreewidthStats* stats = nullptr);

/// Whole distribution (max_distance = total edge weight).
DistanceDistribution tw_distance_distribution(const Graph& g,
                                              const std::optional<TreeDecomposition>& td,
                                              const TreewidthOptions& options = {});

/// Number of separator indices i with
///   a_to_s[i] + s_to_b[i] <  a_to_s[j] + s_to_b[j]  for j < i, and
///   a_to_s[i] + s_to_b[i] <= a_to_s[j] + s_to_b[j]  for j > i.
/// For a pair joined through the separator this is exactly 1.
std::size_t count_associations(std::span<const Distance> a_to_s, std::span<const Distance> s_to_b);

}  // namespace geodesic
