#include "geodesic/ordered_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace geodesic {

Tree OrderedTree::to_tree() const {
    std::vector<Edge> edges;
    edges.reserve(size() == 0 ? 0 : size() - 1);
    for (Vertex u = 0; u < size(); ++u) {
        for (Vertex c : children[u]) {
            edges.push_back({u, c, 1});
        }
    }
    return Tree(Graph(size(), std::move(edges)));
}

std::string OrderedTree::dyck_word() const {
    std::string word;
    if (children.empty()) {
        return word;
    }
    // (vertex, next child index)
    std::vector<std::pair<Vertex, std::size_t>> stack{{0, 0}};
    word.push_back('(');
    while (!stack.empty()) {
        auto& [u, next] = stack.back();
        if (next < children[u].size()) {
            const Vertex c = children[u][next++];
            word.push_back('(');
            stack.emplace_back(c, 0);
        } else {
            word.push_back(')');
            stack.pop_back();
        }
    }
    return word;
}

ShapeTable::ShapeTable(std::size_t max_size) : max_size_(max_size) {
    if (max_size == 0) {
        throw std::invalid_argument("ordered trees need at least one vertex");
    }
    prefix_.assign(max_size + 1, 0);
    size_.push_back(1);
    children_.emplace_back();
    extend_.emplace_back();
    prefix_[1] = 1;
    for (std::size_t m = 2; m <= max_size; ++m) {
        const std::size_t smaller = prefix_[m - 1];
        for (ShapeId s = 0; s < smaller; ++s) {
            const std::size_t rest = m - size_[s];
            for (std::size_t t = prefix_[rest - 1]; t < prefix_[rest]; ++t) {
                const auto id = static_cast<ShapeId>(size_.size());
                // t runs through 0, 1, 2, ... across increasing m, so this is index t.
                extend_[s].push_back(id);
                size_.push_back(m);
                std::vector<ShapeId> kids = children_[s];
                kids.push_back(static_cast<ShapeId>(t));
                children_.push_back(std::move(kids));
                extend_.emplace_back();
            }
        }
        prefix_[m] = size_.size();
    }
}

std::size_t ShapeTable::count_up_to(std::size_t m) const {
    return prefix_[std::min(m, max_size_)];
}

std::size_t ShapeTable::count_of_size(std::size_t m) const {
    if (m == 0 || m > max_size_) {
        return 0;
    }
    return prefix_[m] - prefix_[m - 1];
}

ShapeId ShapeTable::append(ShapeId s, ShapeId t) const {
    return t < extend_[s].size() ? extend_[s][t] : kNoShape;
}

OrderedTree ShapeTable::tree(ShapeId s) const {
    OrderedTree out;
    // Depth is bounded by max_size, so plain recursion is fine.
    std::function<Vertex(ShapeId)> build = [&](ShapeId shape) -> Vertex {
        const auto v = static_cast<Vertex>(out.children.size());
        out.children.emplace_back();
        for (ShapeId kid : children_[shape]) {
            const Vertex c = build(kid);
            out.children[v].push_back(c);
        }
        return v;
    };
    build(s);
    return out;
}

std::vector<OrderedTree> enumerate_ordered_trees(std::size_t max_size) {
    std::vector<OrderedTree> out;
    for_each_ordered_tree(max_size, [&](const OrderedTree& t) { out.push_back(t); });
    return out;
}

void for_each_ordered_tree(std::size_t max_size, const std::function<void(const OrderedTree&)>& fn) {
    const ShapeTable table(max_size);
    for (ShapeId s = 0; s < table.num_shapes(); ++s) {
        fn(table.tree(s));
    }
}

std::uint64_t catalan(std::size_t m) {
    if (m > 35) {
        throw std::out_of_range("Catalan number exceeds 64 bits");
    }
    // C(k+1) = C(k) * 2(2k+1) / (k+2), exact at every step.
    unsigned __int128 c = 1;
    for (std::size_t k = 0; k < m; ++k) {
        c = c * (2 * (2 * k + 1)) / (k + 2);
    }
    return static_cast<std::uint64_t>(c);
}

}  // namespace geodesic
