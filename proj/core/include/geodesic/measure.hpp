#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "geodesic/distribution.hpp"
#include "geodesic/graph.hpp"
#include "geodesic/rational.hpp"

namespace geodesic {

/// A forest measure that depends only on the distance distribution and is
/// additive over vertex-disjoint unions.
class Measure {
public:
    using FromDistribution = std::function<Rational(const DistanceDistribution&)>;
    using Denominator = std::function<BigInt(std::size_t)>;
    using UpperBound = std::function<BigInt(std::size_t)>;

    Measure(std::string name, FromDistribution value, Denominator denominator, UpperBound upper_bound);

    static Measure igl();
    static Measure wiener();
    /// "igl" or "wiener"; throws std::invalid_argument otherwise.
    static Measure by_name(const std::string& name);

    const std::string& name() const { return name_; }

    Rational evaluate(const Graph& forest) const;
    Rational evaluate(const DistanceDistribution& d) const { return value_(d); }

    /// Every value on a forest whose components have at most `max_component`
    /// vertices is an integer multiple of 1 / common_denominator(max_component).
    BigInt common_denominator(std::size_t max_component) const { return denominator_(max_component); }
    /// Largest value on any forest with n vertices.
    BigInt upper_bound(std::size_t n) const { return upper_bound_(n); }

private:
    std::string name_;
    FromDistribution value_;
    Denominator denominator_;
    UpperBound upper_bound_;
};

}  // namespace geodesic
