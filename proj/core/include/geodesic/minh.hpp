#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "geodesic/graph.hpp"
#include "geodesic/measure.hpp"
#include "geodesic/rational.hpp"

namespace geodesic {

/// Trim bound L = ceil(c_h * (n/k)^t_h).
struct BalanceParams {
    Rational c_h;
    Rational t_h;

    /// c_h = 8 * 15^4, t_h = 5: the constants known to make IGL balanced.
    static BalanceParams igl_defaults();

    /// Throws std::invalid_argument unless c_h > 0 and t_h > 0.
    void validate() const;
    /// L clamped to n (any larger bound admits the same deletion sets). k = 0 gives n.
    std::size_t trim_bound(std::size_t n, std::size_t k) const;
    /// Unclamped L as a double, for diagnostics; may be +inf.
    double raw_trim_bound(std::size_t n, std::size_t k) const;
};

struct Solution {
    std::vector<Vertex> deleted;  // sorted
    Rational value;
    std::string algorithm;
};

/// Largest trim bound the DP accepts; the number of ordered shapes grows like 4^L.
inline constexpr std::size_t kMaxTrimBound = 14;

class TrimBoundTooLarge : public std::length_error {
public:
    using std::length_error::length_error;
};

/// No deletion set of the requested size leaves every component within the trim bound.
class MinhInfeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Rational measure_eval(const Measure& m, const Graph& forest);

/// T with the vertices of s removed (survivors keep their relative order).
Graph delete_vertices(const Tree& t, std::span<const Vertex> s);

/// IGL(T) - IGL(T - S) by default.
Rational utility(const Tree& t, std::span<const Vertex> s);
Rational utility(const Tree& t, std::span<const Vertex> s, const Measure& m);

/// Exhaustive minimum over all k-subsets; the lexicographically smallest optimum.
/// Throws std::out_of_range unless k <= n.
Solution minh_bruteforce(const Tree& t, const Measure& m, std::size_t k);

/// Minimum of H(T - S) over k-subsets S that leave components of at most
/// `trim` vertices, by a DP that guesses each kept component's ordered shape.
/// std::nullopt when no such S exists.
std::optional<Solution> minh_trim_dp(const Tree& t, const Measure& m, std::size_t k, std::size_t trim);

/// Crossover k* = n^(t/(t+1)) * ln(n)^(-1/(t+1)); +inf for n < 3.
double minh_k_star(std::size_t n, double t_h);

struct MinhOutcome {
    Solution solution;
    /// value <= tau, when tau was given.
    std::optional<bool> decision;
    /// Trim bound used by the DP, 0 for brute force.
    std::size_t trim_bound = 0;
    double k_star = 0.0;
};

/// Brute force when k <= k*, the trim DP otherwise. Without params (no known
/// balance constants) brute force is used. Throws MinhInfeasible if the DP
/// finds no trimming set.
MinhOutcome minh_solve(const Tree& t, const Measure& m, std::size_t k,
                       const std::optional<BalanceParams>& params,
                       const std::optional<Rational>& tau = std::nullopt);

/// {"deleted":[...],"value":"p/q","value_approx":x,"decision":...,"algorithm":...}
std::string to_json(const MinhOutcome& outcome);

}  // namespace geodesic
