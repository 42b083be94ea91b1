#include "geodesic/redblue.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "geodesic/debug.hpp"

namespace geodesic {

void RedBlueInstance::validate() const {
    if (dim == 0) {
        throw std::invalid_argument("RedBlue instance needs dimension >= 1");
    }
    auto check = [&](const std::vector<ValuedPoint>& pts, const char* colour) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (pts[i].coords.size() != dim) {
                throw std::invalid_argument(std::string(colour) + " point " + std::to_string(i) +
                                            " has " + std::to_string(pts[i].coords.size()) +
                                            " coordinates, expected " + std::to_string(dim));
            }
            if (pts[i].value > value_bound) {
                throw std::invalid_argument(std::string(colour) + " point " + std::to_string(i) +
                                            " has value " + std::to_string(pts[i].value) +
                                            " above the bound " + std::to_string(value_bound));
            }
        }
    };
    check(reds, "red");
    check(blues, "blue");
}

namespace {

bool dominates(const std::int64_t* blue, const std::int64_t* red, std::size_t from,
               std::size_t dim) {
    for (std::size_t k = from; k < dim; ++k) {
        if (blue[k] <= red[k]) {
            return false;
        }
    }
    return true;
}

struct Point {
    const std::int64_t* x;
    std::uint64_t value;
    bool blue;
};

// Below this many points a sub-instance is checked pair by pair.
constexpr std::size_t kDirectCutoff = 16;

class Solver {
public:
    Solver(std::size_t dim, std::uint64_t value_bound, bool checks)
        : dim_(dim), value_bound_(value_bound), checks_(checks), acc_(2 * value_bound + 1, 0) {}

    void solve(std::vector<Point> pts, std::size_t axis) {
        if (!has_both(pts)) {
            return;
        }
        if (axis + 1 == dim_) {
            solve_1d(std::move(pts), axis, 0);
            return;
        }
        if (pts.size() <= kDirectCutoff) {
            direct(pts, axis);
            return;
        }

        std::sort(pts.begin(), pts.end(),
                  [axis](const Point& a, const Point& b) { return a.x[axis] < b.x[axis]; });
        const std::size_t n = pts.size();
        const std::int64_t median = pts[(n - 1) / 2].x[axis];
        const std::size_t half = (n + 1) / 2;

        std::vector<Point> first;
        std::vector<Point> second;
        first.reserve(half);
        second.reserve(n - first.size());
        for (const Point& p : pts) {
            if (p.x[axis] < median) {
                first.push_back(p);
            }
        }
        for (const Point& p : pts) {
            const std::int64_t x = p.x[axis];
            if (x == median && p.blue && first.size() < half) {
                first.push_back(p);
            } else if (x >= median) {
                second.push_back(p);
            }
        }
        if (first.empty()) {
            // Only reds sit at the median and nothing lies below it: those reds
            // are strictly left of every remaining blue.
            auto at_median = std::stable_partition(second.begin(), second.end(), [&](const Point& p) {
                return p.x[axis] == median;
            });
            first.assign(second.begin(), at_median);
            second.erase(second.begin(), at_median);
        }

        std::vector<Point> cross;
        std::int64_t max_red = std::numeric_limits<std::int64_t>::min();
        std::int64_t min_blue = std::numeric_limits<std::int64_t>::max();
        for (const Point& p : first) {
            if (!p.blue) {
                cross.push_back(p);
                max_red = std::max(max_red, p.x[axis]);
            }
        }
        for (const Point& p : second) {
            if (p.blue) {
                cross.push_back(p);
                min_blue = std::min(min_blue, p.x[axis]);
            }
        }
        if (checks_) {
            check_invariant(!first.empty() && !second.empty(), "RedBlue split made no progress");
            check_invariant(max_red < min_blue || max_red == std::numeric_limits<std::int64_t>::min() ||
                                min_blue == std::numeric_limits<std::int64_t>::max(),
                            "RedBlue split: cross pair not strictly ordered on the split axis");
        }

        solve(std::move(first), axis);
        solve(std::move(second), axis);
        solve(std::move(cross), axis + 1);
    }

    void solve_1d(std::vector<Point> pts, std::size_t axis, std::size_t group_size) {
        // Blue before red on ties, so an earlier red is strictly smaller.
        std::sort(pts.begin(), pts.end(), [axis](const Point& a, const Point& b) {
            if (a.x[axis] != b.x[axis]) {
                return a.x[axis] < b.x[axis];
            }
            return a.blue && !b.blue;
        });
        const std::size_t n = pts.size();
        const std::size_t t = group_size == 0 ? redblue_group_size(n, value_bound_)
                                              : std::clamp<std::size_t>(group_size, 1, std::max<std::size_t>(n, 1));
        const std::uint64_t bound = static_cast<std::uint64_t>(n) * n;

        std::vector<CoeffPoly::Coeff> earlier_reds;
        for (std::size_t start = 0; start < n; start += t) {
            const std::size_t end = std::min(n, start + t);

            for (std::size_t i = start; i < end; ++i) {
                if (pts[i].blue) {
                    continue;
                }
                for (std::size_t j = i + 1; j < end; ++j) {
                    if (pts[j].blue && pts[i].x[axis] < pts[j].x[axis]) {
                        ++acc_[pts[i].value + pts[j].value];
                    }
                }
            }

            std::vector<CoeffPoly::Coeff> group_blues;
            for (std::size_t i = start; i < end; ++i) {
                if (pts[i].blue) {
                    if (group_blues.size() <= pts[i].value) {
                        group_blues.resize(pts[i].value + 1, 0);
                    }
                    ++group_blues[pts[i].value];
                }
            }
            if (!earlier_reds.empty() && !group_blues.empty()) {
                accumulate(acc_, poly_mul(CoeffPoly(earlier_reds),
                                          CoeffPoly(std::move(group_blues)), bound));
            }

            for (std::size_t i = start; i < end; ++i) {
                if (!pts[i].blue) {
                    if (earlier_reds.size() <= pts[i].value) {
                        earlier_reds.resize(pts[i].value + 1, 0);
                    }
                    ++earlier_reds[pts[i].value];
                }
            }
        }
    }

    CoeffPoly result() { return CoeffPoly(std::move(acc_)); }

private:
    static bool has_both(const std::vector<Point>& pts) {
        bool red = false;
        bool blue = false;
        for (const Point& p : pts) {
            (p.blue ? blue : red) = true;
            if (red && blue) {
                return true;
            }
        }
        return false;
    }

    void direct(const std::vector<Point>& pts, std::size_t axis) {
        for (const Point& r : pts) {
            if (r.blue) {
                continue;
            }
            for (const Point& b : pts) {
                if (b.blue && dominates(b.x, r.x, axis, dim_)) {
                    ++acc_[r.value + b.value];
                }
            }
        }
    }

    std::size_t dim_;
    std::uint64_t value_bound_;
    bool checks_;
    std::vector<std::uint64_t> acc_;
};

std::vector<Point> points_of(const RedBlueInstance& inst) {
    std::vector<Point> pts;
    pts.reserve(inst.size());
    for (const auto& r : inst.reds) {
        pts.push_back({r.coords.data(), r.value, false});
    }
    for (const auto& b : inst.blues) {
        pts.push_back({b.coords.data(), b.value, true});
    }
    return pts;
}

}  // namespace

std::size_t redblue_group_size(std::size_t n, std::uint64_t v) {
    if (n == 0) {
        return 1;
    }
    const double raw = std::ceil(std::sqrt(static_cast<double>(v) * std::log2(static_cast<double>(n) + 2.0)));
    return std::clamp<std::size_t>(static_cast<std::size_t>(raw), 1, n);
}

CoeffPoly redblue_bruteforce(const RedBlueInstance& inst) {
    inst.validate();
    std::vector<std::uint64_t> acc(2 * inst.value_bound + 1, 0);
    for (const auto& r : inst.reds) {
        for (const auto& b : inst.blues) {
            if (dominates(b.coords.data(), r.coords.data(), 0, inst.dim)) {
                ++acc[r.value + b.value];
            }
        }
    }
    return CoeffPoly(std::move(acc));
}

CoeffPoly redblue_solve_1d(const RedBlueInstance& inst, std::size_t group_size) {
    inst.validate();
    if (inst.dim != 1) {
        throw std::invalid_argument("redblue_solve_1d needs a 1-dimensional instance, got d = " +
                                    std::to_string(inst.dim));
    }
    Solver solver(1, inst.value_bound, false);
    if (!inst.reds.empty() && !inst.blues.empty()) {
        solver.solve_1d(points_of(inst), 0, group_size);
    }
    return solver.result();
}

CoeffPoly redblue_solve(const RedBlueInstance& inst, bool debug_checks) {
    inst.validate();
    Solver solver(inst.dim, inst.value_bound, debug_checks || debug_assertions_enabled());
    solver.solve(points_of(inst), 0);
    return solver.result();
}

RedBlueInstance redblue_from_json(std::string_view text) {
    const auto doc = nlohmann::json::parse(text);
    if (!doc.is_object()) {
        throw std::invalid_argument("RedBlue instance must be a JSON object");
    }
    RedBlueInstance inst;
    const auto d = doc.at("d").get<std::int64_t>();
    if (d < 1) {
        throw std::invalid_argument("\"d\" must be >= 1");
    }
    inst.dim = static_cast<std::size_t>(d);
    std::uint64_t max_value = 0;
    auto read = [&](const char* key, std::vector<ValuedPoint>& out) {
        if (!doc.contains(key)) {
            return;
        }
        for (const auto& item : doc.at(key)) {
            ValuedPoint p;
            p.coords = item.at("x").get<std::vector<std::int64_t>>();
            const auto v = item.at("v").get<std::int64_t>();
            if (v < 0) {
                throw std::invalid_argument("point values must be non-negative");
            }
            p.value = static_cast<std::uint64_t>(v);
            max_value = std::max(max_value, p.value);
            out.push_back(std::move(p));
        }
    };
    read("reds", inst.reds);
    read("blues", inst.blues);
    if (doc.contains("v")) {
        const auto v = doc.at("v").get<std::int64_t>();
        if (v < 0) {
            throw std::invalid_argument("\"v\" must be non-negative");
        }
        inst.value_bound = static_cast<std::uint64_t>(v);
    } else {
        inst.value_bound = max_value;
    }
    inst.validate();
    return inst;
}

std::string redblue_to_json(const RedBlueInstance& inst) {
    nlohmann::ordered_json doc;
    doc["d"] = inst.dim;
    doc["v"] = inst.value_bound;
    auto write = [](const std::vector<ValuedPoint>& pts) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& p : pts) {
            nlohmann::ordered_json item;
            item["x"] = p.coords;
            item["v"] = p.value;
            arr.push_back(std::move(item));
        }
        return arr;
    };
    doc["reds"] = write(inst.reds);
    doc["blues"] = write(inst.blues);
    return doc.dump();
}

std::string redblue_result_json(const CoeffPoly& result) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t e = 0; e < result.size(); ++e) {
        if (result.coeffs()[e] != 0) {
            arr.push_back({e, result.coeffs()[e]});
        }
    }
    return arr.dump();
}

}  // namespace geodesic
