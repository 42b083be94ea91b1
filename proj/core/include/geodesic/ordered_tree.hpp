#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "geodesic/graph.hpp"

namespace geodesic {

/// Rooted tree with ordered children; vertices are numbered in preorder, 0 is the root.
struct OrderedTree {
    std::vector<std::vector<Vertex>> children;

    std::size_t size() const { return children.size(); }
    Tree to_tree() const;
    /// "(" on entering a vertex, ")" on leaving it; unique per shape.
    std::string dyck_word() const;

    friend bool operator==(const OrderedTree&, const OrderedTree&) = default;
};

using ShapeId = std::uint32_t;
inline constexpr ShapeId kNoShape = static_cast<ShapeId>(-1);

/// Every ordered tree with at most `max_size` vertices, one id per shape.
///
/// Ids are grouped by size, so the shapes of size <= m are exactly
/// [0, count_up_to(m)). Shape 0 is the single vertex; every larger shape is
/// some smaller shape with one more child subtree appended on the right, and
/// that decomposition is unique.
class ShapeTable {
public:
    explicit ShapeTable(std::size_t max_size);

    std::size_t max_size() const { return max_size_; }
    std::size_t num_shapes() const { return size_.size(); }
    std::size_t count_up_to(std::size_t m) const;
    std::size_t count_of_size(std::size_t m) const;

    std::size_t shape_size(ShapeId s) const { return size_[s]; }
    std::span<const ShapeId> children(ShapeId s) const { return children_[s]; }
    /// Shape s with t appended as a new last child of the root, or kNoShape when too large.
    ShapeId append(ShapeId s, ShapeId t) const;

    OrderedTree tree(ShapeId s) const;

private:
    std::size_t max_size_;
    std::vector<std::size_t> size_;
    std::vector<std::vector<ShapeId>> children_;
    std::vector<std::vector<ShapeId>> extend_;
    std::vector<std::size_t> prefix_;  // prefix_[m] = count_up_to(m)
};

/// All ordered trees with 1..max_size vertices, smaller trees first.
std::vector<OrderedTree> enumerate_ordered_trees(std::size_t max_size);

/// Streams the same sequence without materialising it.
void for_each_ordered_tree(std::size_t max_size, const std::function<void(const OrderedTree&)>& fn);

/// Catalan(m) computed exactly (m <= 35 fits).
std::uint64_t catalan(std::size_t m);

}  // namespace geodesic
