// One PASS/FAIL line per acceptance criterion; exit status is non-zero if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "geodesic/distribution.hpp"
#include "geodesic/measure.hpp"
#include "geodesic/minh.hpp"
#include "geodesic/ordered_tree.hpp"
#include "geodesic/polynomial.hpp"
#include "geodesic/redblue.hpp"
#include "geodesic/tree_distance.hpp"
#include "geodesic/treewidth_distance.hpp"

using namespace geodesic;
using geodesic::testing::Rng;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
    bool pass = true;
    std::string detail;
};

TreeDistanceOptions plain_tree() {
    TreeDistanceOptions opts;
    opts.debug_checks = false;
    return opts;
}

Distance diameter(const DistanceDistribution& d) {
    return d.empty() ? 1 : d.max_distance();
}

// Exhaustive small trees plus seeded random trees.
Verdict tree_exactness() {
    const auto start = Clock::now();
    std::size_t checked = 0;
    std::size_t wrong = 0;
    for (std::size_t n = 1; n <= 8; ++n) {
        for (const Tree& t : geodesic::testing::all_unlabeled_trees(n)) {
            ++checked;
            wrong += tree_distance_distribution(t, plain_tree()) == distance_distribution_oracle(t.graph()) ? 0 : 1;
        }
    }
    Rng rng(1001);
    for (int i = 0; i < 200; ++i) {
        const Tree t = geodesic::testing::random_tree(1 + rng() % 512, rng);
        ++checked;
        wrong += tree_distance_distribution(t, plain_tree()) == distance_distribution_oracle(t.graph()) ? 0 : 1;
    }
    const double secs = seconds_since(start);
    std::ostringstream os;
    os << checked << " trees, " << wrong << " mismatches, " << secs << " s (limit 60 s)";
    return {wrong == 0 && secs < 60.0, os.str()};
}

double median_runtime(std::size_t n, Rng& rng) {
    std::vector<double> runs;
    for (int i = 0; i < 5; ++i) {
        const Tree t = geodesic::testing::random_tree(n, rng);
        const auto start = Clock::now();
        const auto d = tree_distance_distribution(t, plain_tree());
        runs.push_back(seconds_since(start));
        if (d.total_pairs() != n * (n - 1) / 2) {
            return -1.0;
        }
    }
    std::sort(runs.begin(), runs.end());
    return runs[2];
}

// Doubling n should cost well under the quadratic factor of 4.
Verdict tree_scaling() {
    Rng rng(2002);
    const double small = median_runtime(100000, rng);
    const double large = median_runtime(200000, rng);
    if (small <= 0.0 || large <= 0.0) {
        return {false, "distribution lost pairs"};
    }
    const double ratio = large / small;
    std::ostringstream os;
    os << "median t(1e5) = " << small << " s, t(2e5) = " << large << " s, ratio " << ratio
       << " (limit 2.6, t(1e5) < 10 s)";
    return {ratio <= 2.6 && small < 10.0, os.str()};
}

// A prefix run equals truncation of the full run.
Verdict prefix_consistency() {
    Rng rng(3003);
    std::size_t wrong = 0;
    for (int i = 0; i < 100; ++i) {
        const Tree t = geodesic::testing::random_tree(2 + rng() % 2000, rng);
        const auto full = tree_distance_distribution(t, plain_tree());
        const Distance p = 1 + rng() % (full.max_distance() + 1);
        auto opts = plain_tree();
        opts.prefix = p;
        wrong += tree_distance_distribution(t, opts) == full.truncated(p) ? 0 : 1;
    }
    std::ostringstream os;
    os << "100 trees, " << wrong << " mismatches";
    return {wrong == 0, os.str()};
}

// RedBlue against the pairwise oracle in dimensions 1..4.
Verdict redblue_equivalence() {
    const auto start = Clock::now();
    Rng rng(4004);
    std::size_t wrong = 0;
    for (std::size_t d = 1; d <= 4; ++d) {
        for (int i = 0; i < 500; ++i) {
            const std::size_t n = rng() % 501;
            const std::size_t reds = rng() % (n + 1);
            const auto inst = geodesic::testing::random_redblue(d, reds, n - reds, rng() % 51, 20, rng);
            wrong += redblue_solve(inst, false) == redblue_bruteforce(inst) ? 0 : 1;
        }
    }
    const double secs = seconds_since(start);
    std::ostringstream os;
    os << "2000 instances, " << wrong << " mismatches, " << secs << " s (limit 120 s)";
    return {wrong == 0 && secs < 120.0, os.str()};
}

// Treewidth pipeline against the truncated all-pairs oracle.
Verdict treewidth_exactness() {
    const auto start = Clock::now();
    Rng rng(5005);
    std::size_t checks = 0;
    std::size_t wrong = 0;
    TreewidthOptions opts;
    opts.debug_checks = false;
    for (int i = 0; i < 300; ++i) {
        const std::size_t k = 1 + i % 4;
        const std::size_t n = 1 + rng() % 256;
        const bool weighted = i % 2 == 1;
        auto dg = geodesic::testing::random_partial_ktree(n, k, rng, 0.8, weighted, 1, 5);
        dg = geodesic::testing::relabel(dg, rng);
        const auto oracle = distance_distribution_oracle(dg.graph);
        const Distance diam = diameter(oracle);
        for (Distance p : {Distance{1}, std::max<Distance>(diam / 2, 1), diam}) {
            ++checks;
            wrong += tw_distance_prefix(dg.graph, dg.td, p, opts) == oracle.truncated(p) ? 0 : 1;
        }
    }
    const double secs = seconds_since(start);
    std::ostringstream os;
    os << "300 graphs, " << checks << " prefixes, " << wrong << " mismatches, " << secs << " s (limit 180 s)";
    return {wrong == 0 && secs < 180.0, os.str()};
}

// The trim DP with L = n reaches the brute-force optimum.
Verdict minh_dp_correctness() {
    const auto start = Clock::now();
    std::size_t checks = 0;
    std::size_t wrong = 0;
    for (const Measure& m : {Measure::igl(), Measure::wiener()}) {
        for (std::size_t n = 1; n <= 9; ++n) {
            for (const Tree& t : geodesic::testing::all_unlabeled_trees(n)) {
                for (std::size_t k = 0; k <= n; ++k) {
                    ++checks;
                    const auto dp = minh_trim_dp(t, m, k, n);
                    const auto brute = minh_bruteforce(t, m, k);
                    wrong += dp && dp->value == brute.value ? 0 : 1;
                }
            }
        }
    }
    const double secs = seconds_since(start);
    std::ostringstream os;
    os << checks << " (tree, k, measure) cases, " << wrong << " mismatches, " << secs << " s (limit 600 s)";
    return {wrong == 0 && secs < 600.0, os.str()};
}

// Pairs {a, b}, a != b, whose path contains w, counted from hop distances.
std::uint64_t pairs_through(const std::vector<std::vector<Distance>>& dist, Vertex w) {
    std::uint64_t count = 0;
    const std::size_t n = dist.size();
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
            count += dist[a][w] + dist[w][b] == dist[a][b] ? 1 : 0;
        }
    }
    return count;
}

// Sizes of the components of T - v.
std::vector<std::size_t> components_without(const Tree& t, Vertex v) {
    std::vector<std::size_t> sizes;
    std::vector<bool> seen(t.num_vertices(), false);
    seen[v] = true;
    for (const Neighbor& start : t.neighbors(v)) {
        std::size_t size = 0;
        std::vector<Vertex> stack{start.to};
        seen[start.to] = true;
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            ++size;
            for (const Neighbor& nb : t.neighbors(u)) {
                if (!seen[nb.to]) {
                    seen[nb.to] = true;
                    stack.push_back(nb.to);
                }
            }
        }
        sizes.push_back(size);
    }
    return sizes;
}

// Returns the name of the first violated statement, or "" when all hold.
std::string utility_violation(const Tree& t) {
    const std::size_t n = t.num_vertices();
    const Rational igl = igl_from_distribution(distance_distribution_oracle(t.graph()));
    std::vector<std::vector<Distance>> dist(n);
    for (Vertex v = 0; v < n; ++v) {
        dist[v] = bfs_distances(t.graph(), v);
    }
    std::vector<Rational> u(n);
    Rational total = 0;
    Rational best = 0;
    for (Vertex v = 0; v < n; ++v) {
        const std::array<Vertex, 1> s{v};
        u[v] = utility(t, s);
        total += u[v];
        best = std::max(best, u[v]);
        if (u[v] > igl || igl > Rational(n * (n - 1) / 2)) {
            return "utility upper bound";
        }
    }
    if (total != Rational(n * (n - 1) / 2) + igl) {
        return "utility sum identity";
    }
    if (n >= 2 && 2 * best < Rational(n)) {
        return "max utility lower bound";
    }
    for (Vertex c = 0; c < n && n >= 2; ++c) {
        const auto sizes = components_without(t, c);
        const bool centroid = std::all_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return 2 * s <= n; });
        if (centroid && 4 * pairs_through(dist, c) < n * n) {
            return "centroid pair bound";
        }
    }
    if (n >= 3) {
        for (Vertex v = 0; v < n; ++v) {
            if (u[v] != best) {
                continue;
            }
            // r >= n^(1/4) / 15, i.e. (15 r)^4 >= n.
            for (std::size_t l : components_without(t, v)) {
                const BigInt r = BigInt(n - l - 1);
                BigInt lhs = 15 * r;
                lhs = lhs * lhs * lhs * lhs;
                if (lhs < BigInt(n)) {
                    return "largest component bound";
                }
            }
        }
    }
    return "";
}

// The structural statements about utilities on trees.
Verdict utility_bounds() {
    std::vector<Tree> trees;
    for (std::size_t n = 1; n <= 8; ++n) {
        for (Tree& t : geodesic::testing::all_unlabeled_trees(n)) {
            trees.push_back(std::move(t));
        }
    }
    Rng rng(7007);
    for (int i = 0; i < 100; ++i) {
        trees.push_back(geodesic::testing::random_tree(1 + rng() % 200, rng));
    }
    std::size_t wrong = 0;
    std::string first;
    for (const Tree& t : trees) {
        const auto why = utility_violation(t);
        if (!why.empty()) {
            ++wrong;
            if (first.empty()) {
                first = why + " on n = " + std::to_string(t.num_vertices());
            }
        }
    }
    std::ostringstream os;
    os << trees.size() << " trees, " << wrong << " violations";
    if (!first.empty()) {
        os << " (first: " << first << ")";
    }
    return {wrong == 0, os.str()};
}

// Ordered-tree counts per size.
Verdict catalan_counts() {
    const std::array<std::size_t, 7> expect{1, 1, 2, 5, 14, 42, 132};
    std::array<std::size_t, 7> streamed{};
    for_each_ordered_tree(7, [&](const OrderedTree& t) { ++streamed[t.size() - 1]; });
    const ShapeTable table(7);
    std::ostringstream os;
    bool pass = true;
    for (std::size_t m = 1; m <= 7; ++m) {
        os << (m > 1 ? "," : "") << streamed[m - 1];
        pass = pass && streamed[m - 1] == expect[m - 1] && table.count_of_size(m) == expect[m - 1];
    }
    return {pass, "counts " + os.str()};
}

// Kronecker products against schoolbook, then one large product.
Verdict polynomial_multiplication() {
    Rng rng(9009);
    std::size_t wrong = 0;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t a = kSchoolbookCutoff + rng() % (514 - kSchoolbookCutoff);
        const std::size_t b = kSchoolbookCutoff + rng() % (514 - kSchoolbookCutoff);
        const auto p = geodesic::testing::random_coeffs(a, 1000, rng);
        const auto q = geodesic::testing::random_coeffs(b, 1000, rng);
        const auto got = poly_mul(CoeffPoly(p), CoeffPoly(q), 1000ULL * 1000ULL * 513ULL);
        wrong += got.coeffs() == geodesic::testing::schoolbook(p, q) ? 0 : 1;
    }
    const std::size_t big = 1000001;
    const CoeffPoly p(geodesic::testing::random_coeffs(big, 1000, rng));
    const CoeffPoly q(geodesic::testing::random_coeffs(big, 1000, rng));
    const auto start = Clock::now();
    const auto product = poly_mul(p, q, 1000ULL * 1000ULL * big);
    const double secs = seconds_since(start);
    // Evaluation at 1 checks the large product without a quadratic oracle.
    const bool mass_ok = product.mass() == p.mass() * q.mass() && product.degree() == p.degree() + q.degree();
    std::ostringstream os;
    os << "1000 pairs, " << wrong << " mismatches; degree-1e6 product " << secs << " s (limit 5 s)";
    return {wrong == 0 && mass_ok && secs < 5.0, os.str()};
}

#ifdef GEODESIC_CLI
struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    const std::string cmd = std::string(GEODESIC_CLI) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

// The --threads flag never changes output or exit status.
Verdict cli_determinism() {
    const std::string dir = std::string(GEODESIC_FIXTURES) + "/";
    const std::vector<std::string> graphs{"p4.txt", "p5.txt", "star4.txt", "c4.txt", "weighted.txt",
                                          "tree40.txt", "ktree30.txt", "duplicate.txt"};
    const std::vector<std::string> trees{"p4.txt", "p5.txt", "star4.txt", "tree40.txt", "c4.txt"};
    std::vector<std::string> commands;
    for (const auto& g : graphs) {
        for (const std::string method : {"auto", "tree", "treewidth", "oracle"}) {
            commands.push_back("distdist -i " + dir + g + " --method " + method);
            commands.push_back("distdist -i " + dir + g + " --method " + method + " --format json --prefix 2");
        }
        commands.push_back("igl -i " + dir + g);
        commands.push_back("wiener -i " + dir + g + " --format json");
    }
    for (const auto& t : trees) {
        commands.push_back("minh -i " + dir + t + " -k 2 --tau 5");
        commands.push_back("minh -i " + dir + t + " -k 1 --measure wiener");
        commands.push_back("minh -i " + dir + t + " -k 2 --trim 4");
    }
    for (const std::string rb : {"redblue_d1.json", "redblue_d3.json", "redblue_empty.json", "redblue_malformed.json"}) {
        commands.push_back("redblue -i " + dir + rb);
        commands.push_back("redblue --brute -i " + dir + rb);
    }
    commands.push_back("distdist -i " + dir + "c4.txt --td " + dir + "c4.td");
    commands.push_back("distdist -i " + dir + "ktree30.txt --td " + dir + "ktree30.td --format json");
    commands.push_back("validate-td -i " + dir + "c4.txt --td " + dir + "c4.td");
    commands.push_back("validate-td -i " + dir + "c4.txt --td " + dir + "c4_bad.td");
    commands.push_back("validate-td -i " + dir + "ktree30.txt --td " + dir + "ktree30.td --format json");

    std::size_t differ = 0;
    std::size_t crashed = 0;
    std::string first;
    for (const auto& cmd : commands) {
        const auto one = run_cli(cmd + " --threads 1");
        const auto eight = run_cli(cmd + " --threads 8");
        crashed += one.code < 0 || one.code > 5 ? 1 : 0;
        if (one.code != eight.code || one.out != eight.out) {
            ++differ;
            if (first.empty()) {
                first = cmd;
            }
        }
    }
    std::ostringstream os;
    os << commands.size() << " invocations, " << differ << " differ, " << crashed << " abnormal exits";
    if (!first.empty()) {
        os << " (first: " << first << ")";
    }
    return {differ == 0 && crashed == 0, os.str()};
}
#else
Verdict cli_determinism() {
    return {false, "command-line tool not built"};
}
#endif

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"tree distribution exactness", tree_exactness},
        {"tree distribution scaling", tree_scaling},
        {"prefix consistency", prefix_consistency},
        {"redblue oracle equivalence", redblue_equivalence},
        {"treewidth pipeline exactness", treewidth_exactness},
        {"minh dp correctness", minh_dp_correctness},
        {"utility identities and bounds", utility_bounds},
        {"ordered tree enumeration", catalan_counts},
        {"polynomial multiplication", polynomial_multiplication},
        {"cli determinism", cli_determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += v.pass ? 0 : 1;
        std::cout << (v.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << v.detail
                  << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
