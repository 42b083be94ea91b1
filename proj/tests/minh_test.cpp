#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "generators.hpp"
#include "geodesic/distribution.hpp"
#include "geodesic/minh.hpp"
#include "geodesic/ordered_tree.hpp"
#include "geodesic/tree_distance.hpp"

using namespace geodesic;
using geodesic::testing::Rng;

namespace {

Rational igl_of(const Graph& g) {
    return igl_from_distribution(distance_distribution_oracle(g));
}

Rational choose2(std::size_t n) {
    return Rational(static_cast<long>(n * (n - 1) / 2));
}

Tree caterpillar() {
    // Spine 0-1-2-3 with two leaves on 1 and one on 2.
    return Tree(Graph(7, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {1, 4, 1}, {1, 5, 1}, {2, 6, 1}}));
}

}  // namespace

TEST(Measure, Examples) {
    const Measure igl = Measure::igl();
    EXPECT_EQ(measure_eval(igl, Tree::path(4).graph()), Rational(13, 3));
    EXPECT_EQ(measure_eval(igl, Graph()), Rational(0));
    EXPECT_EQ(measure_eval(igl, Graph(4, {{0, 1, 1}, {2, 3, 1}})), Rational(2));
    EXPECT_EQ(measure_eval(Measure::wiener(), Tree::path(4).graph()), Rational(10));
    EXPECT_THROW(Measure::by_name("closeness"), std::invalid_argument);
}

TEST(Measure, AdditiveOverDisjointForests) {
    Rng rng(10);
    for (const Measure& m : {Measure::igl(), Measure::wiener()}) {
        for (int round = 0; round < 40; ++round) {
            const Tree a = geodesic::testing::random_tree(1 + rng() % 30, rng);
            const Tree b = geodesic::testing::random_tree(1 + rng() % 30, rng);
            const auto na = static_cast<Vertex>(a.num_vertices());
            std::vector<Edge> edges = a.graph().edges();
            for (const Edge& e : b.graph().edges()) {
                edges.push_back({e.u + na, e.v + na, 1});
            }
            const Graph both(a.num_vertices() + b.num_vertices(), edges);
            EXPECT_EQ(m.evaluate(both), m.evaluate(a.graph()) + m.evaluate(b.graph())) << m.name();
        }
    }
}

TEST(Measure, CommonDenominator) {
    const Measure igl = Measure::igl();
    EXPECT_EQ(igl.common_denominator(1), BigInt(1));
    EXPECT_EQ(igl.common_denominator(5), BigInt(12));
    EXPECT_EQ(Measure::wiener().common_denominator(9), BigInt(1));
}

TEST(Utility, Examples) {
    const std::vector<Vertex> middle{2};
    EXPECT_EQ(utility(Tree::path(5), middle), Rational(53, 12));
    EXPECT_EQ(utility(Tree::path(5), std::vector<Vertex>{}), Rational(0));
    EXPECT_EQ(utility(Tree::star(3), std::vector<Vertex>{0}), Rational(9, 2));
}

TEST(Utility, IdentitiesAndBoundsOnSmallAndRandomTrees) {
    std::vector<Tree> trees;
    for (std::size_t n = 1; n <= 8; ++n) {
        for (auto& t : geodesic::testing::all_unlabeled_trees(n)) {
            trees.push_back(std::move(t));
        }
    }
    Rng rng(100);
    for (int round = 0; round < 20; ++round) {
        trees.push_back(geodesic::testing::random_tree(2 + rng() % 60, rng));
    }
    for (const Tree& t : trees) {
        const std::size_t n = t.num_vertices();
        const Rational igl = igl_of(t.graph());
        Rational total = 0;
        Rational best = 0;
        for (Vertex v = 0; v < n; ++v) {
            const Rational u = utility(t, std::vector<Vertex>{v});
            total += u;
            best = std::max(best, u);
            EXPECT_LE(u, igl);
        }
        EXPECT_EQ(total, choose2(n) + igl);
        EXPECT_LE(igl, choose2(n));
        if (n >= 2) {
            EXPECT_GE(best, Rational(static_cast<long>(n), 2));
        }
    }
}

TEST(BruteForce, Examples) {
    const Measure igl = Measure::igl();
    const auto p5 = minh_bruteforce(Tree::path(5), igl, 1);
    EXPECT_EQ(p5.deleted, std::vector<Vertex>{2});
    EXPECT_EQ(p5.value, Rational(2));
    const auto star = minh_bruteforce(Tree::star(4), igl, 1);
    EXPECT_EQ(star.deleted, std::vector<Vertex>{0});
    EXPECT_EQ(star.value, Rational(0));
    const auto all = minh_bruteforce(caterpillar(), igl, 7);
    EXPECT_EQ(all.value, Rational(0));
    EXPECT_EQ(all.deleted.size(), 7u);
    EXPECT_THROW(minh_bruteforce(Tree::path(3), igl, 4), std::out_of_range);
}

TEST(BruteForce, LexicographicallySmallestOptimum) {
    // Deleting any one end of P2 is optimal; vertex 0 comes first.
    EXPECT_EQ(minh_bruteforce(Tree::path(2), Measure::igl(), 1).deleted, std::vector<Vertex>{0});
    // P4 with k = 2: {0, 2}, {1, 2} and {1, 3} all isolate the survivors.
    const auto s = minh_bruteforce(Tree::path(4), Measure::igl(), 2);
    EXPECT_EQ(s.value, Rational(0));
    EXPECT_EQ(s.deleted, (std::vector<Vertex>{0, 2}));
}

TEST(OrderedTrees, CatalanCounts) {
    EXPECT_EQ(enumerate_ordered_trees(1).size(), 1u);
    EXPECT_EQ(enumerate_ordered_trees(3).size(), 4u);
    EXPECT_EQ(enumerate_ordered_trees(5).size(), 23u);
    const ShapeTable table(9);
    const std::uint64_t expect[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
    for (std::size_t m = 1; m <= 9; ++m) {
        EXPECT_EQ(table.count_of_size(m), expect[m - 1]);
        EXPECT_EQ(catalan(m - 1), expect[m - 1]);
    }
}

TEST(OrderedTrees, ShapesAreDistinctAndWellFormed) {
    std::set<std::string> words;
    for_each_ordered_tree(7, [&](const OrderedTree& t) {
        const auto word = t.dyck_word();
        EXPECT_EQ(word.size(), 2 * t.size());
        EXPECT_TRUE(words.insert(word).second) << word;
        EXPECT_EQ(t.to_tree().num_vertices(), t.size());
    });
    EXPECT_EQ(words.size(), 1u + 1 + 2 + 5 + 14 + 42 + 132);
}

TEST(OrderedTrees, AppendBuildsRightmostChild) {
    const ShapeTable table(4);
    const ShapeId leaf = 0;
    const ShapeId cherry = table.append(table.append(leaf, leaf), leaf);
    EXPECT_EQ(table.tree(cherry).dyck_word(), "(()())");
    EXPECT_EQ(table.shape_size(cherry), 3u);
    const ShapeId big = table.append(cherry, leaf);
    EXPECT_EQ(table.shape_size(big), 4u);
    EXPECT_EQ(table.append(big, leaf), kNoShape);
}

TEST(TrimDp, Examples) {
    const Measure igl = Measure::igl();
    const auto two = minh_trim_dp(Tree::path(5), igl, 1, 2);
    ASSERT_TRUE(two.has_value());
    EXPECT_EQ(two->value, Rational(2));
    EXPECT_EQ(two->deleted, std::vector<Vertex>{2});
    EXPECT_FALSE(minh_trim_dp(Tree::path(5), igl, 1, 1).has_value());
    EXPECT_THROW(minh_trim_dp(Tree::path(3), igl, 4, 2), std::out_of_range);
    EXPECT_THROW(minh_trim_dp(Tree::path(30), igl, 2, 20), TrimBoundTooLarge);
}

TEST(TrimDp, MatchesBruteForceOnSmallTrees) {
    for (const Measure& m : {Measure::igl(), Measure::wiener()}) {
        for (std::size_t n = 1; n <= 7; ++n) {
            for (const Tree& t : geodesic::testing::all_unlabeled_trees(n)) {
                for (std::size_t k = 0; k <= n; ++k) {
                    const auto dp = minh_trim_dp(t, m, k, n);
                    ASSERT_TRUE(dp.has_value()) << m.name() << " n=" << n << " k=" << k;
                    EXPECT_EQ(dp->value, minh_bruteforce(t, m, k).value) << m.name() << " n=" << n << " k=" << k;
                    EXPECT_EQ(dp->deleted.size(), k);
                }
            }
        }
    }
}

TEST(TrimDp, RespectsTheTrimBound) {
    Rng rng(15);
    for (int round = 0; round < 30; ++round) {
        const Tree t = geodesic::testing::random_tree(8 + rng() % 25, rng);
        const std::size_t k = 1 + rng() % 6;
        const std::size_t trim = 2 + rng() % 5;
        const auto dp = minh_trim_dp(t, Measure::igl(), k, trim);
        if (!dp) {
            continue;
        }
        const Graph rest = delete_vertices(t, dp->deleted);
        const auto comp = connected_components(rest);
        std::vector<std::size_t> size(rest.num_vertices(), 0);
        for (auto c : comp) {
            ++size[c];
        }
        for (auto s : size) {
            EXPECT_LE(s, trim);
        }
        EXPECT_EQ(dp->value, igl_of(rest));
    }
}

TEST(TrimDp, MonotoneInTrimBound) {
    Rng rng(16);
    for (int round = 0; round < 15; ++round) {
        const Tree t = geodesic::testing::random_tree(10 + rng() % 20, rng);
        const std::size_t k = 1 + rng() % 5;
        std::optional<Rational> previous;
        for (std::size_t trim = 1; trim <= 8; ++trim) {
            const auto dp = minh_trim_dp(t, Measure::igl(), k, trim);
            if (previous) {
                ASSERT_TRUE(dp.has_value());
                EXPECT_LE(dp->value, *previous);
            }
            if (dp) {
                previous = dp->value;
            }
        }
    }
}

TEST(TrimDp, ExactKEqualsAtMostK) {
    // Deleting more vertices never increases IGL or Wiener.
    Rng rng(18);
    for (int round = 0; round < 20; ++round) {
        const Tree t = geodesic::testing::random_tree(3 + rng() % 7, rng);
        for (const Measure& m : {Measure::igl(), Measure::wiener()}) {
            Rational previous = m.evaluate(t.graph());
            for (std::size_t k = 0; k <= t.num_vertices(); ++k) {
                const Rational value = minh_bruteforce(t, m, k).value;
                EXPECT_LE(value, previous);
                previous = value;
            }
        }
    }
}

TEST(BalanceParams, TrimBound) {
    const auto params = BalanceParams::igl_defaults();
    EXPECT_EQ(params.c_h, Rational(405000));
    EXPECT_EQ(params.t_h, Rational(5));
    EXPECT_EQ(params.trim_bound(100, 10), 100u);
    const BalanceParams small{Rational(1, 2), Rational(1)};
    // ceil(0.5 * 20 / 4) = 3
    EXPECT_EQ(small.trim_bound(20, 4), 3u);
    const BalanceParams frac{Rational(1), Rational(1, 2)};
    // ceil(sqrt(16)) = 4
    EXPECT_EQ(frac.trim_bound(64, 4), 4u);
    EXPECT_THROW((BalanceParams{Rational(0), Rational(1)}.validate()), std::invalid_argument);
}

TEST(Solve, DecisionExamples) {
    const Measure igl = Measure::igl();
    const auto params = BalanceParams::igl_defaults();
    const auto yes = minh_solve(Tree::path(5), igl, 1, params, Rational(2));
    EXPECT_EQ(yes.solution.value, Rational(2));
    EXPECT_EQ(yes.decision, std::optional<bool>(true));
    const auto no = minh_solve(Tree::path(5), igl, 1, params, Rational(1));
    EXPECT_EQ(no.decision, std::optional<bool>(false));
    const auto cover = minh_solve(Tree::star(4), igl, 1, params, Rational(0));
    EXPECT_EQ(cover.decision, std::optional<bool>(true));
}

TEST(Solve, ChoosesAlgorithmByCrossover) {
    const Measure igl = Measure::igl();
    const BalanceParams params{Rational(1), Rational(1)};
    const Tree t = Tree::path(9);
    const double k_star = minh_k_star(9, 1.0);
    EXPECT_NEAR(k_star, 3.0 / std::pow(std::log(9.0), 0.5), 1e-12);
    const auto low = minh_solve(t, igl, 1, params);
    EXPECT_EQ(low.solution.algorithm, "bruteforce");
    const auto high = minh_solve(t, igl, 4, params);
    EXPECT_EQ(high.solution.algorithm, "trim-dp");
    EXPECT_EQ(high.trim_bound, 3u);
    const auto without = minh_solve(t, Measure::wiener(), 4, std::nullopt);
    EXPECT_EQ(without.solution.algorithm, "bruteforce");
}

TEST(Solve, InfeasibleTrimIsReported) {
    const BalanceParams tight{Rational(1, 100), Rational(1)};
    EXPECT_THROW(minh_solve(Tree::path(9), Measure::igl(), 3, tight), MinhInfeasible);
}

TEST(Solve, JsonShape) {
    const auto out = minh_solve(Tree::path(5), Measure::igl(), 1, BalanceParams::igl_defaults(), Rational(2));
    EXPECT_EQ(to_json(out), R"({"deleted":[2],"value":"2","value_approx":2.0,"decision":"YES","algorithm":"bruteforce"})");
}

TEST(Balancedness, SingleDeletionLeavesEnoughOutside) {
    std::vector<Tree> trees;
    for (std::size_t n = 3; n <= 8; ++n) {
        for (auto& t : geodesic::testing::all_unlabeled_trees(n)) {
            trees.push_back(std::move(t));
        }
    }
    Rng rng(19);
    for (int round = 0; round < 15; ++round) {
        trees.push_back(geodesic::testing::random_tree(3 + rng() % 80, rng));
    }
    for (const Tree& t : trees) {
        const std::size_t n = t.num_vertices();
        const auto best = minh_bruteforce(t, Measure::igl(), 1);
        const Graph rest = delete_vertices(t, best.deleted);
        const auto comp = connected_components(rest);
        std::vector<std::size_t> size(rest.num_vertices(), 0);
        for (auto c : comp) {
            ++size[c];
        }
        const std::size_t largest = *std::max_element(size.begin(), size.end());
        const double outside = static_cast<double>(n - largest);
        EXPECT_GE(outside, std::pow(static_cast<double>(n), 0.25) / 15.0);
    }
}
