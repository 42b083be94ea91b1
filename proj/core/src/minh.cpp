#include "geodesic/minh.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "geodesic/debug.hpp"
#include "geodesic/ordered_tree.hpp"

namespace geodesic {

BalanceParams BalanceParams::igl_defaults() {
    return {Rational(8 * 15 * 15 * 15 * 15), Rational(5)};
}

void BalanceParams::validate() const {
    if (sgn(c_h) <= 0 || sgn(t_h) <= 0) {
        throw std::invalid_argument("balance parameters c_h and t_h must be positive");
    }
}

double BalanceParams::raw_trim_bound(std::size_t n, std::size_t k) const {
    if (k == 0) {
        return std::numeric_limits<double>::infinity();
    }
    const double log_l = std::log(to_double(c_h)) +
                         to_double(t_h) * std::log(static_cast<double>(n) / static_cast<double>(k));
    return std::ceil(std::exp(log_l));
}

std::size_t BalanceParams::trim_bound(std::size_t n, std::size_t k) const {
    validate();
    if (k == 0 || n == 0) {
        return n;
    }
    const double raw = raw_trim_bound(n, k);
    std::size_t l = raw >= static_cast<double>(n) ? n : static_cast<std::size_t>(std::max(raw, 1.0));
    const BigInt& p = t_h.get_num();
    const BigInt& q = t_h.get_den();
    if (p > 64 || q > 64) {
        return l;
    }
    // L >= c * (n/k)^(p/q)  <=>  (L/c)^q >= (n/k)^p, decided exactly.
    const unsigned long pe = p.get_ui();
    const unsigned long qe = q.get_ui();
    auto covers = [&](std::size_t candidate) {
        const Rational ratio = Rational(static_cast<unsigned long>(candidate)) / c_h;
        Rational lhs;
        mpz_pow_ui(lhs.get_num_mpz_t(), ratio.get_num_mpz_t(), qe);
        mpz_pow_ui(lhs.get_den_mpz_t(), ratio.get_den_mpz_t(), qe);
        Rational rhs;
        mpz_ui_pow_ui(rhs.get_num_mpz_t(), n, pe);
        mpz_ui_pow_ui(rhs.get_den_mpz_t(), k, pe);
        lhs.canonicalize();
        rhs.canonicalize();
        return lhs >= rhs;
    };
    while (l > 1 && covers(l - 1)) {
        --l;
    }
    while (l < n && !covers(l)) {
        ++l;
    }
    return l;
}

Rational measure_eval(const Measure& m, const Graph& forest) {
    return m.evaluate(forest);
}

Graph delete_vertices(const Tree& t, std::span<const Vertex> s) {
    return t.graph().without(s);
}

Rational utility(const Tree& t, std::span<const Vertex> s) {
    return utility(t, s, Measure::igl());
}

Rational utility(const Tree& t, std::span<const Vertex> s, const Measure& m) {
    return m.evaluate(t.graph()) - m.evaluate(delete_vertices(t, s));
}

namespace {

// Pair counts of T - removed, by BFS from every survivor.
DistanceDistribution forest_distribution(const Tree& t, const std::vector<bool>& removed) {
    const std::size_t n = t.num_vertices();
    DistanceDistribution out(n);
    std::vector<Distance> dist(n, kUnreachable);
    std::vector<Vertex> queue;
    std::vector<std::uint64_t> counts(n, 0);
    for (Vertex s = 0; s < n; ++s) {
        if (removed[s]) {
            continue;
        }
        queue.assign(1, s);
        dist[s] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex u = queue[head];
            for (const Neighbor& nb : t.neighbors(u)) {
                if (!removed[nb.to] && dist[nb.to] == kUnreachable) {
                    dist[nb.to] = dist[u] + 1;
                    queue.push_back(nb.to);
                }
            }
        }
        for (Vertex v : queue) {
            if (v > s) {
                ++counts[dist[v]];
            }
            dist[v] = kUnreachable;
        }
    }
    for (Distance d = 1; d < n; ++d) {
        out.add(d, counts[d]);
    }
    return out;
}

using Value = __int128;
constexpr Value kInf = Value{1} << 120;

Value plus(Value a, Value b) {
    return (a >= kInf || b >= kInf) ? kInf : a + b;
}

Value to_value(const BigInt& z) {
    // Callers guarantee |z| < 2^120.
    const BigInt base = BigInt(1) << 60;
    BigInt hi;
    BigInt lo;
    mpz_fdiv_qr(hi.get_mpz_t(), lo.get_mpz_t(), z.get_mpz_t(), base.get_mpz_t());
    return (static_cast<Value>(hi.get_si()) << 60) + static_cast<Value>(lo.get_ui());
}

BigInt to_bigint(Value v) {
    const bool negative = v < 0;
    unsigned __int128 u = negative ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    BigInt out = static_cast<unsigned long>(u >> 64);
    out <<= 64;
    out += static_cast<unsigned long>(u & ~std::uint64_t{0});
    return negative ? BigInt(-out) : out;
}

// Rows are indexed [i][b]: first i children of u handled, b deletions among them.
using Rows = std::vector<std::vector<Value>>;

class TrimDp {
public:
    TrimDp(const Tree& t, const Measure& m, std::size_t k, std::size_t trim)
        : t_(t), m_(m), n_(t.num_vertices()), k_(k), trim_(std::min(trim, n_)), table_(trim_) {
        scale_ = m.common_denominator(trim_);
        const BigInt limit = BigInt(1) << 110;
        if (m.upper_bound(n_) * scale_ >= limit) {
            throw std::overflow_error("measure values too large for the trim DP");
        }
        shape_value_.assign(table_.num_shapes(), -1);
        root();
    }

    std::optional<Solution> solve() {
        for (Vertex u : postorder_) {
            process(u);
        }
        const Value best = std::min(at(f_[0], k_), at(g_[0], k_));
        if (best >= kInf) {
            return std::nullopt;
        }
        std::vector<Vertex> deleted;
        if (at(f_[0], k_) <= at(g_[0], k_)) {
            take_deleted(0, k_, deleted);
        } else {
            take_kept(0, k_, deleted);
        }
        std::sort(deleted.begin(), deleted.end());

        Solution s;
        s.deleted = std::move(deleted);
        s.algorithm = "trim-dp";
        std::vector<bool> removed(n_, false);
        for (Vertex v : s.deleted) {
            removed[v] = true;
        }
        s.value = m_.evaluate(forest_distribution(t_, removed));
        Rational dp_value(to_bigint(best), scale_);
        dp_value.canonicalize();
        check_invariant(s.deleted.size() == k_, "trim DP reconstructed a set of the wrong size");
        check_invariant(s.value == dp_value, "trim DP value disagrees with the re-evaluated measure");
        return s;
    }

private:
    static Value at(const std::vector<Value>& row, std::size_t b) {
        return b < row.size() ? row[b] : kInf;
    }

    void root() {
        children_.assign(n_, {});
        size_.assign(n_, 1);
        std::vector<Vertex> parent(n_, std::numeric_limits<Vertex>::max());
        std::vector<Vertex> order{0};
        parent[0] = 0;
        for (std::size_t head = 0; head < order.size(); ++head) {
            const Vertex u = order[head];
            for (const Neighbor& nb : t_.neighbors(u)) {
                if (parent[nb.to] == std::numeric_limits<Vertex>::max()) {
                    parent[nb.to] = u;
                    children_[u].push_back(nb.to);
                    order.push_back(nb.to);
                }
            }
            std::sort(children_[u].begin(), children_[u].end());
        }
        postorder_.assign(order.rbegin(), order.rend());
        for (Vertex u : postorder_) {
            if (u != 0) {
                size_[parent[u]] += size_[u];
            }
        }
        f_.assign(n_, {});
        g_.assign(n_, {});
        kept_.assign(n_, {});
    }

    Value shape_value(ShapeId s) {
        if (shape_value_[s] < 0) {
            const Rational h = m_.evaluate(table_.tree(s).to_tree().graph()) * scale_;
            check_invariant(h.get_den() == 1, "shape value is not a multiple of the common denominator");
            shape_value_[s] = to_value(h.get_num());
        }
        return shape_value_[s];
    }

    // Cost of each child's subtree when the child is deleted, indexed by budget.
    const std::vector<Value>& deleted_cost(Vertex c) const { return f_[c]; }

    const std::vector<Value>* kept_cost(Vertex c, ShapeId s) const {
        const auto& table = kept_[c];
        if (s >= table.size() || table[s].empty()) {
            return nullptr;
        }
        return &table[s];
    }

    std::size_t child_budget(Vertex u) const { return std::min(k_, size_[u] - 1); }

    Rows initial_rows(Vertex u) const {
        const auto& kids = children_[u];
        const std::size_t budget = child_budget(u);
        Rows rows(kids.size() + 1, std::vector<Value>(budget + 1, kInf));
        rows[0][0] = 0;
        for (std::size_t i = 1; i <= kids.size(); ++i) {
            const auto& del = deleted_cost(kids[i - 1]);
            for (std::size_t b = 0; b <= budget; ++b) {
                for (std::size_t y = 1; y <= b && y < del.size(); ++y) {
                    rows[i][b] = std::min(rows[i][b], plus(rows[i - 1][b - y], del[y]));
                }
            }
        }
        return rows;
    }

    // Rows for the shape prefix extended by one more matched child shape t.
    Rows extend_rows(Vertex u, const Rows& prev, ShapeId t, bool& any) const {
        const auto& kids = children_[u];
        const std::size_t budget = child_budget(u);
        Rows rows(kids.size() + 1, std::vector<Value>(budget + 1, kInf));
        any = false;
        for (std::size_t i = 1; i <= kids.size(); ++i) {
            const Vertex c = kids[i - 1];
            const auto& del = deleted_cost(c);
            const auto* keep = kept_cost(c, t);
            for (std::size_t b = 0; b <= budget; ++b) {
                Value best = kInf;
                for (std::size_t y = 1; y <= b && y < del.size(); ++y) {
                    best = std::min(best, plus(rows[i - 1][b - y], del[y]));
                }
                if (keep != nullptr) {
                    for (std::size_t y = 0; y <= b && y < keep->size(); ++y) {
                        best = std::min(best, plus(prev[i - 1][b - y], (*keep)[y]));
                    }
                }
                rows[i][b] = best;
            }
        }
        // A prefix that matches every shape so far can still take more shapes.
        for (const auto& r : rows) {
            for (Value v : r) {
                any = any || v < kInf;
            }
        }
        return rows;
    }

    void process(Vertex u) {
        const auto& kids = children_[u];
        const std::size_t budget = std::min(k_, size_[u]);
        const std::size_t child_max = child_budget(u);

        // u deleted: children are independent, each either deleted or kept.
        std::vector<Value> knap(child_max + 1, kInf);
        knap[0] = 0;
        std::size_t seen = 0;
        for (Vertex c : kids) {
            std::vector<Value> next(child_max + 1, kInf);
            const std::size_t c_max = std::min(k_, size_[c]);
            for (std::size_t b = 0; b <= std::min(child_max, seen); ++b) {
                if (knap[b] >= kInf) {
                    continue;
                }
                for (std::size_t y = 0; y <= c_max && b + y <= child_max; ++y) {
                    const Value cost = std::min(at(f_[c], y), at(g_[c], y));
                    next[b + y] = std::min(next[b + y], plus(knap[b], cost));
                }
            }
            seen += c_max;
            knap = std::move(next);
        }
        f_[u].assign(budget + 1, kInf);
        for (std::size_t b = 1; b <= budget; ++b) {
            if (b - 1 <= child_max) {
                f_[u][b] = knap[b - 1];
            }
        }

        // u kept: guess the ordered shape of its component within its subtree.
        const std::size_t shape_cap = std::min(trim_, size_[u]);
        kept_[u].assign(table_.count_up_to(shape_cap), {});
        std::size_t max_child = 0;
        for (Vertex c : kids) {
            max_child = std::max(max_child, kept_[c].size());
        }
        explore(u, 0, initial_rows(u), shape_cap, max_child);

        g_[u].assign(budget + 1, kInf);
        for (ShapeId s = 0; s < kept_[u].size(); ++s) {
            const auto& row = kept_[u][s];
            if (row.empty()) {
                continue;
            }
            const Value h = shape_value(s);
            for (std::size_t b = 0; b < row.size() && b <= budget; ++b) {
                g_[u][b] = std::min(g_[u][b], plus(h, row[b]));
            }
        }
    }

    void explore(Vertex u, ShapeId s, const Rows& rows, std::size_t shape_cap, std::size_t max_child) {
        const std::size_t m = children_[u].size();
        const std::size_t keep_budget = std::min(k_, size_[u] - table_.shape_size(s));
        std::vector<Value> row(keep_budget + 1, kInf);
        bool any = false;
        for (std::size_t b = 0; b <= keep_budget && b < rows[m].size(); ++b) {
            row[b] = rows[m][b];
            any = any || row[b] < kInf;
        }
        if (any) {
            kept_[u][s] = std::move(row);
        }
        if (table_.children(s).size() >= m) {
            return;
        }
        const std::size_t room = shape_cap - table_.shape_size(s);
        const std::size_t limit = std::min(table_.count_up_to(room), max_child);
        for (ShapeId t = 0; t < limit; ++t) {
            bool usable = false;
            for (Vertex c : children_[u]) {
                usable = usable || kept_cost(c, t) != nullptr;
            }
            if (!usable) {
                continue;
            }
            bool feasible = false;
            Rows next = extend_rows(u, rows, t, feasible);
            if (feasible) {
                explore(u, table_.append(s, t), next, shape_cap, max_child);
            }
        }
    }

    void take_deleted(Vertex u, std::size_t b, std::vector<Vertex>& out) {
        out.push_back(u);
        const auto& kids = children_[u];
        const std::size_t child_max = child_budget(u);
        // Rebuild the knapsack prefix tables and walk them backwards.
        std::vector<std::vector<Value>> knap(kids.size() + 1, std::vector<Value>(child_max + 1, kInf));
        knap[0][0] = 0;
        for (std::size_t i = 1; i <= kids.size(); ++i) {
            const Vertex c = kids[i - 1];
            for (std::size_t x = 0; x <= child_max; ++x) {
                if (knap[i - 1][x] >= kInf) {
                    continue;
                }
                for (std::size_t y = 0; x + y <= child_max && y <= std::min(k_, size_[c]); ++y) {
                    const Value cost = std::min(at(f_[c], y), at(g_[c], y));
                    knap[i][x + y] = std::min(knap[i][x + y], plus(knap[i - 1][x], cost));
                }
            }
        }
        std::size_t x = b - 1;
        for (std::size_t i = kids.size(); i >= 1; --i) {
            const Vertex c = kids[i - 1];
            bool found = false;
            for (std::size_t y = 0; y <= x && !found; ++y) {
                const Value cost = std::min(at(f_[c], y), at(g_[c], y));
                if (cost < kInf && knap[i - 1][x - y] < kInf && plus(knap[i - 1][x - y], cost) == knap[i][x]) {
                    take_either(c, y, out);
                    x -= y;
                    found = true;
                }
            }
            check_invariant(found, "trim DP knapsack reconstruction failed");
        }
    }

    void take_either(Vertex c, std::size_t b, std::vector<Vertex>& out) {
        if (at(f_[c], b) <= at(g_[c], b)) {
            take_deleted(c, b, out);
        } else {
            take_kept(c, b, out);
        }
    }

    void take_kept(Vertex u, std::size_t b, std::vector<Vertex>& out) {
        ShapeId chosen = kNoShape;
        for (ShapeId s = 0; s < kept_[u].size() && chosen == kNoShape; ++s) {
            const auto& row = kept_[u][s];
            if (b < row.size() && row[b] < kInf && plus(shape_value(s), row[b]) == g_[u][b]) {
                chosen = s;
            }
        }
        check_invariant(chosen != kNoShape, "trim DP shape reconstruction failed");
        take_matched(u, chosen, b, out);
    }

    // u kept with component shape s inside its subtree, b deletions below u.
    void take_matched(Vertex u, ShapeId s, std::size_t b, std::vector<Vertex>& out) {
        const auto seq = table_.children(s);
        std::vector<Rows> rows{initial_rows(u)};
        for (ShapeId t : seq) {
            bool feasible = false;
            rows.push_back(extend_rows(u, rows.back(), t, feasible));
        }
        const auto& kids = children_[u];
        std::size_t j = seq.size();
        std::size_t x = b;
        for (std::size_t i = kids.size(); i >= 1; --i) {
            const Vertex c = kids[i - 1];
            const Value target = rows[j][i][x];
            bool found = false;
            if (j > 0) {
                if (const auto* keep = kept_cost(c, seq[j - 1])) {
                    for (std::size_t y = 0; y <= x && y < keep->size() && !found; ++y) {
                        if ((*keep)[y] < kInf && plus(rows[j - 1][i - 1][x - y], (*keep)[y]) == target) {
                            take_matched(c, seq[j - 1], y, out);
                            x -= y;
                            --j;
                            found = true;
                        }
                    }
                }
            }
            const auto& del = deleted_cost(c);
            for (std::size_t y = 1; y <= x && y < del.size() && !found; ++y) {
                if (del[y] < kInf && plus(rows[j][i - 1][x - y], del[y]) == target) {
                    take_deleted(c, y, out);
                    x -= y;
                    found = true;
                }
            }
            check_invariant(found, "trim DP matching reconstruction failed");
        }
        check_invariant(j == 0 && x == 0, "trim DP matching did not consume its shape");
    }

    const Tree& t_;
    const Measure& m_;
    std::size_t n_;
    std::size_t k_;
    std::size_t trim_;
    ShapeTable table_;
    BigInt scale_;
    std::vector<Value> shape_value_;

    std::vector<std::vector<Vertex>> children_;
    std::vector<std::size_t> size_;
    std::vector<Vertex> postorder_;
    // f_[u][b]: u deleted, b deletions in its subtree. g_[u][b]: u kept.
    std::vector<std::vector<Value>> f_;
    std::vector<std::vector<Value>> g_;
    // kept_[u][s][b]: u kept, its component below u has ordered shape s, b deletions
    // below u; excludes pairs inside that component.
    std::vector<std::vector<std::vector<Value>>> kept_;
};

}  // namespace

Solution minh_bruteforce(const Tree& t, const Measure& m, std::size_t k) {
    const std::size_t n = t.num_vertices();
    if (k > n) {
        throw std::out_of_range("budget k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
    }
    std::vector<Vertex> pick(k);
    for (std::size_t i = 0; i < k; ++i) {
        pick[i] = static_cast<Vertex>(i);
    }
    std::vector<bool> removed(n, false);
    Solution best;
    best.algorithm = "bruteforce";
    bool have = false;
    for (;;) {
        std::fill(removed.begin(), removed.end(), false);
        for (Vertex v : pick) {
            removed[v] = true;
        }
        Rational value = m.evaluate(forest_distribution(t, removed));
        // Strict improvement keeps the lexicographically first optimum.
        if (!have || value < best.value) {
            best.value = std::move(value);
            best.deleted = pick;
            have = true;
        }
        // Next k-combination in lexicographic order.
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + i - 1) {
            --i;
        }
        if (i == 0) {
            break;
        }
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            pick[j] = pick[j - 1] + 1;
        }
    }
    return best;
}

std::optional<Solution> minh_trim_dp(const Tree& t, const Measure& m, std::size_t k, std::size_t trim) {
    const std::size_t n = t.num_vertices();
    if (k > n) {
        throw std::out_of_range("budget k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
    }
    if (trim == 0) {
        throw std::invalid_argument("trim bound must be >= 1");
    }
    const std::size_t effective = std::min(trim, n);
    if (effective > kMaxTrimBound) {
        throw TrimBoundTooLarge("trim bound " + std::to_string(effective) + " exceeds the supported maximum " +
                                std::to_string(kMaxTrimBound));
    }
    TrimDp dp(t, m, k, effective);
    return dp.solve();
}

double minh_k_star(std::size_t n, double t_h) {
    if (n < 3) {
        return std::numeric_limits<double>::infinity();
    }
    const double nn = static_cast<double>(n);
    return std::pow(nn, t_h / (t_h + 1.0)) * std::pow(std::log(nn), -1.0 / (t_h + 1.0));
}

MinhOutcome minh_solve(const Tree& t, const Measure& m, std::size_t k,
                       const std::optional<BalanceParams>& params, const std::optional<Rational>& tau) {
    const std::size_t n = t.num_vertices();
    if (k > n) {
        throw std::out_of_range("budget k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
    }
    MinhOutcome out;
    if (!params) {
        out.k_star = std::numeric_limits<double>::infinity();
        out.solution = minh_bruteforce(t, m, k);
    } else {
        params->validate();
        out.k_star = minh_k_star(n, to_double(params->t_h));
        if (static_cast<double>(k) <= out.k_star) {
            out.solution = minh_bruteforce(t, m, k);
        } else {
            out.trim_bound = params->trim_bound(n, k);
            auto solved = minh_trim_dp(t, m, k, out.trim_bound);
            if (!solved) {
                throw MinhInfeasible("no " + std::to_string(k) + "-vertex deletion leaves components of at most " +
                                     std::to_string(out.trim_bound) + " vertices");
            }
            out.solution = std::move(*solved);
        }
    }
    if (tau) {
        out.decision = out.solution.value <= *tau;
    }
    return out;
}

std::string to_json(const MinhOutcome& outcome) {
    nlohmann::ordered_json doc;
    doc["deleted"] = outcome.solution.deleted;
    doc["value"] = to_string(outcome.solution.value);
    doc["value_approx"] = to_double(outcome.solution.value);
    if (outcome.decision) {
        doc["decision"] = *outcome.decision ? "YES" : "NO";
    } else {
        doc["decision"] = nullptr;
    }
    doc["algorithm"] = outcome.solution.algorithm;
    if (outcome.trim_bound != 0) {
        doc["trim"] = outcome.trim_bound;
    }
    return doc.dump();
}

}  // namespace geodesic
