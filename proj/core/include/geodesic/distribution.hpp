#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "geodesic/graph.hpp"
#include "geodesic/rational.hpp"

namespace geodesic {

/// Number of unordered vertex pairs at each finite, positive distance.
class DistanceDistribution {
public:
    using Counts = std::map<Distance, std::uint64_t>;

    DistanceDistribution() = default;
    explicit DistanceDistribution(std::size_t n) : n_(n) {}
    DistanceDistribution(std::size_t n, Counts counts);

    std::size_t num_vertices() const { return n_; }
    const Counts& counts() const { return counts_; }
    bool empty() const { return counts_.empty(); }

    /// Count at `distance`, 0 when absent.
    std::uint64_t at(Distance distance) const;

    /// Adds `count` pairs at `distance`. Distance 0 and zero counts are ignored.
    void add(Distance distance, std::uint64_t count);
    /// Removes `count` pairs; throws std::logic_error if that would go negative.
    void subtract(Distance distance, std::uint64_t count);
    void merge(const DistanceDistribution& other);

    std::uint64_t total_pairs() const;
    Distance max_distance() const;

    /// Keeps distances <= max_distance.
    DistanceDistribution truncated(Distance max_distance) const;

    friend bool operator==(const DistanceDistribution&, const DistanceDistribution&) = default;

private:
    std::size_t n_ = 0;
    Counts counts_;
};

/// Brute force: one BFS/Dijkstra per vertex.
DistanceDistribution distance_distribution_oracle(const Graph& g);

/// Sum over pairs of 1/d.
Rational igl_from_distribution(const DistanceDistribution& d);
/// Sum over pairs of d.
BigInt wiener_from_distribution(const DistanceDistribution& d);

/// "distance\tcount" per line, ascending.
std::string to_tsv(const DistanceDistribution& d);
/// {"n":...,"counts":{"1":...}} with keys in ascending numeric order.
std::string to_json(const DistanceDistribution& d);
DistanceDistribution distribution_from_json(std::string_view text);

}  // namespace geodesic
