#include "geodesic/measure.hpp"

#include <stdexcept>

namespace geodesic {

Measure::Measure(std::string name, FromDistribution value, Denominator denominator,
                 UpperBound upper_bound)
    : name_(std::move(name)),
      value_(std::move(value)),
      denominator_(std::move(denominator)),
      upper_bound_(std::move(upper_bound)) {}

Rational Measure::evaluate(const Graph& forest) const {
    return value_(distance_distribution_oracle(forest));
}

Measure Measure::igl() {
    return Measure(
        "igl", [](const DistanceDistribution& d) { return igl_from_distribution(d); },
        [](std::size_t max_component) {
            // Distances inside a component are at most max_component - 1.
            BigInt l = 1;
            for (std::size_t i = 2; i + 1 <= max_component; ++i) {
                mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), i);
            }
            return l;
        },
        [](std::size_t n) {
            BigInt b = n;
            return BigInt(b * (b - 1) / 2);
        });
}

Measure Measure::wiener() {
    return Measure(
        "wiener", [](const DistanceDistribution& d) { return Rational(wiener_from_distribution(d)); },
        [](std::size_t) { return BigInt(1); },
        [](std::size_t n) {
            // C(n,2) pairs, each at distance < n.
            BigInt b = n;
            return BigInt(b * b * b);
        });
}

Measure Measure::by_name(const std::string& name) {
    if (name == "igl") {
        return igl();
    }
    if (name == "wiener") {
        return wiener();
    }
    throw std::invalid_argument("unknown measure '" + name + "' (expected igl or wiener)");
}

}  // namespace geodesic
