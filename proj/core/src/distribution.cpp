#include "geodesic/distribution.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

namespace geodesic {

DistanceDistribution::DistanceDistribution(std::size_t n, Counts counts) : n_(n) {
    for (const auto& [d, c] : counts) {
        add(d, c);
    }
}

std::uint64_t DistanceDistribution::at(Distance distance) const {
    auto it = counts_.find(distance);
    return it == counts_.end() ? 0 : it->second;
}

void DistanceDistribution::add(Distance distance, std::uint64_t count) {
    if (distance == 0 || distance == kUnreachable || count == 0) {
        return;
    }
    counts_[distance] += count;
}

void DistanceDistribution::subtract(Distance distance, std::uint64_t count) {
    if (distance == 0 || distance == kUnreachable || count == 0) {
        return;
    }
    auto it = counts_.find(distance);
    if (it == counts_.end() || it->second < count) {
        throw std::logic_error("distance distribution count would become negative at distance " +
                               std::to_string(distance));
    }
    it->second -= count;
    if (it->second == 0) {
        counts_.erase(it);
    }
}

void DistanceDistribution::merge(const DistanceDistribution& other) {
    for (const auto& [d, c] : other.counts_) {
        add(d, c);
    }
}

std::uint64_t DistanceDistribution::total_pairs() const {
    std::uint64_t total = 0;
    for (const auto& [d, c] : counts_) {
        total += c;
    }
    return total;
}

Distance DistanceDistribution::max_distance() const {
    return counts_.empty() ? 0 : counts_.rbegin()->first;
}

DistanceDistribution DistanceDistribution::truncated(Distance max_distance) const {
    DistanceDistribution out(n_);
    for (const auto& [d, c] : counts_) {
        if (d > max_distance) {
            break;
        }
        out.counts_.emplace(d, c);
    }
    return out;
}

DistanceDistribution distance_distribution_oracle(const Graph& g) {
    const std::size_t n = g.num_vertices();
    DistanceDistribution out(n);
    const bool unit = g.unit_weights();
    for (Vertex s = 0; s < n; ++s) {
        const auto dist = unit ? bfs_distances(g, s) : dijkstra_distances(g, s);
        for (Vertex t = s + 1; t < n; ++t) {
            out.add(dist[t], 1);
        }
    }
    return out;
}

Rational igl_from_distribution(const DistanceDistribution& d) {
    Rational sum = 0;
    for (const auto& [dist, count] : d.counts()) {
        BigInt den;
        mpz_set_ui(den.get_mpz_t(), static_cast<unsigned long>(dist));
        BigInt num;
        mpz_set_ui(num.get_mpz_t(), static_cast<unsigned long>(count));
        Rational term(num, den);
        term.canonicalize();
        sum += term;
    }
    sum.canonicalize();
    return sum;
}

BigInt wiener_from_distribution(const DistanceDistribution& d) {
    BigInt sum = 0;
    for (const auto& [dist, count] : d.counts()) {
        BigInt term;
        mpz_set_ui(term.get_mpz_t(), static_cast<unsigned long>(dist));
        mpz_mul_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(count));
        sum += term;
    }
    return sum;
}

std::string to_tsv(const DistanceDistribution& d) {
    std::ostringstream out;
    for (const auto& [dist, count] : d.counts()) {
        out << dist << '\t' << count << '\n';
    }
    return out.str();
}

std::string to_json(const DistanceDistribution& d) {
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (const auto& [dist, count] : d.counts()) {
        counts[std::to_string(dist)] = count;
    }
    nlohmann::ordered_json doc;
    doc["n"] = d.num_vertices();
    doc["counts"] = std::move(counts);
    return doc.dump();
}

DistanceDistribution distribution_from_json(std::string_view text) {
    const auto doc = nlohmann::json::parse(text);
    DistanceDistribution out(doc.at("n").get<std::size_t>());
    for (const auto& [key, value] : doc.at("counts").items()) {
        std::size_t used = 0;
        const auto dist = std::stoull(key, &used);
        if (used != key.size()) {
            throw std::invalid_argument("distance key is not an integer: " + key);
        }
        out.add(dist, value.get<std::uint64_t>());
    }
    return out;
}

}  // namespace geodesic
