#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "matchings/exact_count.hpp"
#include "oracles.hpp"

using namespace matchings;

TEST_CASE("perfect matching counts on fixed graphs") {
    CHECK(count_perfect(oracles::complete_graph(4)) == 3);
    CHECK(count_perfect(oracles::complete_graph(6)) == 15);
    CHECK(count_perfect(oracles::petersen()) == 6);
    CHECK(count_perfect(oracles::cycle_graph(6)) == 2);
    CHECK(count_perfect(oracles::path_graph(6)) == 1);
    CHECK(count_perfect(oracles::complete_bipartite(3, 3)) == 6);
    CHECK(count_perfect(oracles::cycle_graph(5)) == 0);
    CHECK(count_perfect(Graph(0)) == 1);  // empty product
    CHECK(count_perfect(Graph(2)) == 0);
}

TEST_CASE("loops and parallel edges do not affect counts") {
    Graph g = oracles::cycle_graph(4);
    g.add_edge(0, 1);  // parallel
    g.add_edge(2, 2);  // loop
    CHECK(count_perfect(g) == 2);
    CHECK(count_near(g, 0, 1) == 1);
}

TEST_CASE("near counts and the pattern table") {
    Graph c6 = oracles::cycle_graph(6);
    auto t = hole_pattern_table(c6);
    CHECK(t.perfect == 2);
    CHECK(t.omega_size() == 11);
    CHECK(t.near_count(0, 3) == 1);
    CHECK(t.near_count(0, 2) == 0);
    CHECK(t.near_count(3, 0) == 1);  // order-insensitive lookup
    CHECK(count_near(c6, 0, 3) == 1);
    CHECK(count_near(c6, 0, 2) == 0);

    auto k4 = hole_pattern_table(oracles::complete_graph(4));
    CHECK(k4.perfect == 3);
    CHECK(k4.omega_size() == 9);
    CHECK(k4.pattern_classes() == 7);  // perfect + all six hole pairs

    // odd vertex count: the whole state space is empty
    CHECK(hole_pattern_table(oracles::cycle_graph(5)).omega_size() == 0);
    CHECK(hole_pattern_table(oracles::cycle_graph(5)).pattern_classes() == 0);
}

TEST_CASE("table agrees with the brute oracle on random graphs") {
    std::mt19937 rng(3101);
    for (int t = 0; t < 120; ++t) {
        int n = 2 + static_cast<int>(rng() % 8);
        Graph g = oracles::random_graph(rng, n, 25 + static_cast<int>(rng() % 50));
        auto table = hole_pattern_table(g);
        CHECK(table.perfect == oracles::brute_count_perfect(g));
        BigInt omega = table.perfect;
        auto vs = g.vertices();
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) {
                BigInt want = oracles::brute_count_near(g, vs[i], vs[j]);
                CHECK(table.near_count(vs[i], vs[j]) == want);
                CHECK(count_near(g, vs[i], vs[j]) == want);
                omega += want;
            }
        CHECK(table.omega_size() == omega);
    }
}

TEST_CASE("explicit enumeration is complete and duplicate-free") {
    Graph k4 = oracles::complete_graph(4);
    auto pms = perfect_matchings(k4);
    CHECK(pms.size() == 3);
    CHECK(std::is_sorted(pms.begin(), pms.end()));
    for (const auto& m : pms) {
        CHECK(m.valid_for(k4));
        CHECK(m.size() == 2);
    }
    CHECK_THROWS_AS(perfect_matchings(oracles::complete_graph(10), 5),
                    std::runtime_error);

    std::set<Matching> seen;
    int perfect = 0, near = 0;
    for_each_low_hole_matching(
        k4, [&](const Matching& m, const std::vector<VertexId>& holes) {
            CHECK(m.valid_for(k4));
            CHECK(m.holes(k4) == holes);
            CHECK(holes.size() <= 2);
            CHECK(seen.insert(m).second);  // visited exactly once
            holes.empty() ? ++perfect : ++near;
        });
    CHECK(perfect == 3);
    CHECK(near == 6);
}

TEST_CASE("permanents by inclusion-exclusion and by enumeration") {
    BipartiteWeighted j3;
    j3.w = {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
    CHECK(ryser_permanent(j3) == 6);
    CHECK(enumeration_permanent(j3) == 6);

    BipartiteWeighted a;
    a.w = {{Rational(1), Rational(2)}, {Rational(3), Rational(4)}};
    CHECK(ryser_permanent(a) == 10);
    CHECK(enumeration_permanent(a) == 10);

    BipartiteWeighted empty;
    CHECK(ryser_permanent(empty) == 1);
    CHECK(enumeration_permanent(empty) == 1);

    BipartiteWeighted zero;
    zero.w = {{Rational(0), Rational(1)}, {Rational(0), Rational(1)}};
    CHECK(ryser_permanent(zero) == 0);

    BipartiteWeighted big;
    big.w.assign(25, std::vector<Rational>(25, Rational(1)));
    CHECK_THROWS_AS(ryser_permanent(big), std::invalid_argument);

    std::mt19937 rng(3102);
    for (int t = 0; t < 60; ++t) {
        int n = 1 + static_cast<int>(rng() % 5);
        BipartiteWeighted m;
        m.w.assign(n, std::vector<Rational>(n));
        for (auto& row : m.w)
            for (auto& x : row) x = Rational(static_cast<int>(rng() % 4));
        CHECK(ryser_permanent(m) == enumeration_permanent(m));
    }
}

TEST_CASE("bipartite adjacency extraction") {
    auto c6 = bipartite_adjacency(oracles::cycle_graph(6));
    REQUIRE(c6.has_value());
    CHECK(c6->size() == 3);
    CHECK(ryser_permanent(*c6) == 2);

    auto k33 = bipartite_adjacency(oracles::complete_bipartite(3, 3));
    REQUIRE(k33.has_value());
    CHECK(ryser_permanent(*k33) == 6);

    CHECK(!bipartite_adjacency(oracles::cycle_graph(5)));       // odd cycle
    CHECK(!bipartite_adjacency(oracles::path_graph(3)));        // unequal sides
    CHECK(!bipartite_adjacency(oracles::complete_graph(4)));    // not bipartite

    // disconnected graphs work: the block matrix multiplies the components
    Graph two_edges(4);
    two_edges.add_edge(0, 1);
    two_edges.add_edge(2, 3);
    auto blocks = bipartite_adjacency(two_edges);
    REQUIRE(blocks.has_value());
    CHECK(ryser_permanent(*blocks) == 1);
}

TEST_CASE("bipartite permanent equals the matching count") {
    std::mt19937 rng(3103);
    int done = 0;
    while (done < 40) {
        int half = 2 + static_cast<int>(rng() % 4);
        Graph g(2 * half);
        for (int i = 0; i < half; ++i)
            for (int j = 0; j < half; ++j)
                if (rng() % 100 < 55) g.add_edge(i, half + j);
        auto a = bipartite_adjacency(g);
        if (!a) continue;  // a draw whose global sides came out unequal
        CHECK(ryser_permanent(*a) == Rational(oracles::brute_count_perfect(g)));
        ++done;
    }
}

TEST_CASE("weighted counts over adjacency lists") {
    // square 0-1-2-3 with weights: matchings {01,23} and {12,03}
    std::vector<std::vector<std::pair<int, Rational>>> adj(4);
    auto link = [&](int u, int v, const Rational& w) {
        adj[u].emplace_back(v, w);
        adj[v].emplace_back(u, w);
    };
    link(0, 1, Rational(2));
    link(1, 2, Rational(3));
    link(2, 3, Rational(5));
    link(0, 3, Rational(7));
    CHECK(count_perfect_weighted(adj) == Rational(2) * 5 + Rational(3) * 7);
    CHECK(count_perfect_weighted({}) == 1);
    std::vector<std::vector<std::pair<int, Rational>>> stuck(2);
    CHECK(count_perfect_weighted(stuck) == 0);
}
