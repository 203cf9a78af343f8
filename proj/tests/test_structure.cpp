#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "matchings/exact_count.hpp"
#include "matchings/structure.hpp"
#include "oracles.hpp"

using namespace matchings;
using oracles::cycle_graph;
using oracles::path_graph;

static Graph bowtie() {  // triangles 0-1-2 and 2-3-4 sharing vertex 2
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(2, 4);
    return g;
}

// replays an ear decomposition against the graph it claims to decompose
static void check_ear_decomposition(const Graph& g, const EarDecomposition& d) {
    REQUIRE(g.has_vertex(d.base));
    CHECK(d.order == static_cast<int>(d.ears.size()));
    std::set<VertexId> built{d.base};
    std::set<std::pair<VertexId, VertexId>> used;
    for (const auto& ear : d.ears) {
        REQUIRE(ear.size() >= 2);
        CHECK((ear.size() - 1) % 2 == 1);  // odd edge count
        CHECK(built.count(ear.front()));
        CHECK(built.count(ear.back()));
        for (std::size_t i = 1; i + 1 < ear.size(); ++i) {
            CHECK(!built.count(ear[i]));  // interior vertices are new
            built.insert(ear[i]);
        }
        for (std::size_t i = 0; i + 1 < ear.size(); ++i) {
            VertexId u = std::min(ear[i], ear[i + 1]);
            VertexId v = std::max(ear[i], ear[i + 1]);
            CHECK(g.adjacent(u, v));
            CHECK(!used.count({u, v}));  // each graph edge appears once
            used.insert({u, v});
        }
    }
    auto vs = g.vertices();
    CHECK(built == std::set<VertexId>(vs.begin(), vs.end()));
    CHECK(static_cast<int>(used.size()) == g.num_edges());
}

TEST_CASE("maximum matching on fixed graphs") {
    CHECK(maximum_matching(oracles::petersen()).size() == 5);
    CHECK(maximum_matching(cycle_graph(7)).size() == 3);
    CHECK(maximum_matching(path_graph(6)).size() == 3);
    CHECK(maximum_matching(Graph(3)).size() == 0);
    Matching m = maximum_matching(oracles::complete_graph(6));
    CHECK(m.size() == 3);
    CHECK(m.valid_for(oracles::complete_graph(6)));
}

TEST_CASE("maximum matching matches the brute optimum on random graphs") {
    std::mt19937 rng(2101);
    for (int t = 0; t < 300; ++t) {
        Graph g = oracles::random_graph(rng, 2 + static_cast<int>(rng() % 9),
                                        20 + static_cast<int>(rng() % 60));
        Matching m = maximum_matching(g);
        CHECK(m.valid_for(g));
        CHECK(m.size() == oracles::brute_nu(g));
    }
}

TEST_CASE("canonical partition on hand graphs") {
    auto ge = gallai_edmonds(path_graph(3));
    CHECK(ge.D == std::vector<VertexId>{0, 2});
    CHECK(ge.A == std::vector<VertexId>{1});
    CHECK(ge.C.empty());
    REQUIRE(ge.D_components.size() == 2);

    auto tri = gallai_edmonds(cycle_graph(3));
    CHECK(tri.D.size() == 3);
    CHECK(tri.D_components.size() == 1);

    auto k2 = gallai_edmonds(oracles::complete_graph(2));
    CHECK(k2.D.empty());
    CHECK(k2.C.size() == 2);  // perfectly matchable: everything is C
}

TEST_CASE("canonical partition properties on random graphs") {
    std::mt19937 rng(2102);
    for (int t = 0; t < 250; ++t) {
        int n = 2 + static_cast<int>(rng() % 9);
        Graph g = oracles::random_graph(rng, n, 20 + static_cast<int>(rng() % 60));
        auto ge = gallai_edmonds(g);

        CHECK(ge.D == oracles::brute_D(g));

        // A is exactly the outside neighbourhood of D
        std::set<VertexId> dset(ge.D.begin(), ge.D.end());
        std::set<VertexId> awant;
        for (VertexId v : ge.D)
            for (VertexId u : g.neighbors(v))
                if (!dset.count(u)) awant.insert(u);
        CHECK(ge.A == std::vector<VertexId>(awant.begin(), awant.end()));

        // the witness is a genuine maximum matching
        CHECK(ge.witness.valid_for(g));
        CHECK(ge.witness.size() == oracles::brute_nu(g));

        // components of G[D] are factor-critical
        for (const auto& comp : ge.D_components)
            CHECK(is_factor_critical(g.induced(comp)));

        // deficiency identity: n - 2 nu = #components(G[D]) - |A|
        int deficiency = g.num_vertices() - 2 * ge.witness.size();
        CHECK(deficiency == static_cast<int>(ge.D_components.size()) -
                                static_cast<int>(ge.A.size()));
    }
}

TEST_CASE("factor-critical recognition") {
    CHECK(is_factor_critical(cycle_graph(5)));
    CHECK(is_factor_critical(Graph(1)));
    CHECK(is_factor_critical(bowtie()));
    CHECK(!is_factor_critical(oracles::complete_graph(2)));
    CHECK(!is_factor_critical(cycle_graph(4)));
    CHECK(!is_factor_critical(path_graph(5)));
    CHECK(!is_factor_critical(Graph(0)));
}

TEST_CASE("ear decomposition of fixed graphs") {
    auto c5 = fc_ear_decomposition(cycle_graph(5));
    check_ear_decomposition(cycle_graph(5), c5);
    CHECK(c5.order == 1);
    CHECK(fc_order(cycle_graph(5)) == 1);
    CHECK(fc_order(Graph(1)) == 0);
    CHECK(fc_order(bowtie()) == 2);
    for (VertexId b : bowtie().vertices()) {
        auto d = fc_ear_decomposition(bowtie(), b);
        CHECK(d.base == b);
        CHECK(d.order == 2);
        check_ear_decomposition(bowtie(), d);
    }
    CHECK_THROWS_AS(fc_ear_decomposition(path_graph(3)), std::invalid_argument);
    CHECK_THROWS_AS(fc_order(cycle_graph(4)), std::invalid_argument);
    CHECK_THROWS_AS(fc_ear_decomposition(cycle_graph(5), 99), std::invalid_argument);
}

TEST_CASE("ear count equals the cycle rank on random factor-critical graphs") {
    std::mt19937 rng(2103);
    int done = 0;
    while (done < 60) {
        int n = 3 + 2 * static_cast<int>(rng() % 5);
        Graph g = oracles::random_graph(rng, n, 45);
        if (!is_factor_critical(g)) continue;
        int k = fc_order(g);
        CHECK(k == g.num_edges() - g.num_vertices() + 1);
        auto d = fc_ear_decomposition(g);
        CHECK(d.order == k);
        check_ear_decomposition(g, d);
        // base independence
        VertexId other = g.vertices()[rng() % g.num_vertices()];
        auto d2 = fc_ear_decomposition(g, other);
        CHECK(d2.order == k);
        check_ear_decomposition(g, d2);
        ++done;
    }
}

TEST_CASE("allowed edges on hand graphs") {
    auto ae = allowed_edges(path_graph(4));
    REQUIRE(ae.size() == 2);
    CHECK((ae[0].u == 0 && ae[0].v == 1));
    CHECK((ae[1].u == 2 && ae[1].v == 3));
    CHECK(allowed_edges(cycle_graph(6)).size() == 6);
    CHECK(allowed_edges(path_graph(3)).empty());  // no perfect matching at all
}

TEST_CASE("allowed edges match the deletion oracle on random graphs") {
    std::mt19937 rng(2104);
    for (int t = 0; t < 150; ++t) {
        int n = 2 * (1 + static_cast<int>(rng() % 5));
        Graph g = oracles::random_graph(rng, n, 30 + static_cast<int>(rng() % 40));
        std::set<std::pair<VertexId, VertexId>> got;
        for (const Edge& e : allowed_edges(g)) got.insert({e.u, e.v});
        std::set<std::pair<VertexId, VertexId>> want;
        if (oracles::brute_count_perfect(g) > 0) {
            for (const Edge& e : g.edges()) {
                if (e.is_loop()) continue;
                VertexId u = std::min(e.u, e.v), v = std::max(e.u, e.v);
                if (oracles::brute_count_near(g, u, v) > 0) want.insert({u, v});
            }
        }
        CHECK(got == want);
    }
}
