#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "geodesic/polynomial.hpp"

namespace geodesic {

struct ValuedPoint {
    std::vector<std::int64_t> coords;
    std::uint64_t value = 0;
};

/// Red and blue valued points in `dim` dimensions. The answer is
///   sum over (red p, blue q) with q strictly greater than p in every coordinate
///   of x^(value(p) + value(q)).
struct RedBlueInstance {
    std::size_t dim = 1;
    std::vector<ValuedPoint> reds;
    std::vector<ValuedPoint> blues;
    /// Declared bound on every value.
    std::uint64_t value_bound = 0;

    std::size_t size() const { return reds.size() + blues.size(); }
    /// Throws std::invalid_argument if a point has the wrong arity or a value above the bound.
    void validate() const;
};

/// Quadratic reference: checks every red/blue pair.
CoeffPoly redblue_bruteforce(const RedBlueInstance& inst);

/// One dimension: sort, cut into groups of `group_size`, check pairs inside a
/// group directly and handle cross-group pairs with one polynomial product per
/// group. group_size == 0 selects ceil(sqrt(v * log2(n + 2))).
CoeffPoly redblue_solve_1d(const RedBlueInstance& inst, std::size_t group_size = 0);

/// Any dimension: median split on the first coordinate, recurse on both halves,
/// then drop the first coordinate for (first-half red, second-half blue) pairs.
CoeffPoly redblue_solve(const RedBlueInstance& inst, bool debug_checks = false);

/// Group size used by redblue_solve_1d for n points with values <= v.
std::size_t redblue_group_size(std::size_t n, std::uint64_t v);

/// {"d":..,"reds":[{"x":[..],"v":..}],"blues":[..]} with optional "v" (value bound).
RedBlueInstance redblue_from_json(std::string_view text);
std::string redblue_to_json(const RedBlueInstance& inst);

/// [[exponent, coefficient], ...] for the non-zero coefficients, ascending.
std::string redblue_result_json(const CoeffPoly& result);

}  // namespace geodesic
