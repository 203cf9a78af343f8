#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <sstream>

#include "doctest.h"
#include "matchings/gadgets.hpp"
#include "matchings/mcmc.hpp"
#include "oracles.hpp"

using namespace matchings;
using oracles::cycle_graph;

// stationarity and detailed balance, both in exact arithmetic; constant
// weights additionally make the kernel symmetric
static void check_exact_kernel(const ChainModel& m, bool expect_symmetric) {
    std::vector<Rational> acc(m.size(), Rational(0));
    std::vector<std::vector<Rational>> dense(m.size(),
                                             std::vector<Rational>(m.size(), Rational(0)));
    for (std::size_t i = 0; i < m.size(); ++i) {
        Rational row_sum = 0;
        for (const auto& [j, q] : exact_row(m, static_cast<int>(i))) {
            CHECK(q >= 0);
            row_sum += q;
            acc[j] += m.pi[i] * q;
            dense[i][j] = q;
        }
        CHECK(row_sum == 1);
    }
    for (std::size_t j = 0; j < m.size(); ++j) CHECK(acc[j] == m.pi[j]);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            CHECK(m.pi[i] * dense[i][j] == m.pi[j] * dense[j][i]);
            if (expect_symmetric) CHECK(dense[i][j] == dense[j][i]);
        }
}

TEST_CASE("seeded generator is deterministic and unbiased in range") {
    Rng a(99), b(99);
    for (int i = 0; i < 100; ++i) CHECK(a.bits() == b.bits());
    Rng r(7);
    std::map<int, int> counts;
    for (int i = 0; i < 3000; ++i) {
        int x = r.below(3);
        CHECK(x >= 0);
        CHECK(x < 3);
        ++counts[x];
    }
    for (auto [x, c] : counts) CHECK(c > 800);  // crude uniformity
    for (int i = 0; i < 100; ++i) {
        double u = r.unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("single edge: two states swapping deterministically") {
    Graph g(2);
    g.add_edge(0, 1);
    auto m = build_chain_model(g, HoleWeightFn::broder());
    REQUIRE(m.size() == 2);
    auto r0 = exact_row(m, 0), r1 = exact_row(m, 1);
    REQUIRE(r0.size() == 1);
    CHECK(r0[0].second == 1);
    REQUIRE(r1.size() == 1);
    CHECK(r1[0].second == 1);
    CHECK(r0[0].first != r1[0].first);
    check_exact_kernel(m, true);
    auto mix = mixing_time(m, 0.25, 50);
    CHECK(mix.capped);  // period two: total variation never settles
    CHECK(mix.steps == 50);
}

TEST_CASE("constant weights on the four-cycle") {
    Graph g = cycle_graph(4);
    auto m = build_chain_model(g, HoleWeightFn::broder());
    REQUIRE(m.size() == 6);  // 2 perfect + 4 single-pair states
    for (const auto& x : m.pi) CHECK(x == Rational(1, 6));
    check_exact_kernel(m, true);
    auto mix = mixing_time(m, 0.25, 10000);
    CHECK(!mix.capped);
    CHECK(mix.steps > 0);

    // the model indexes its own states
    for (std::size_t i = 0; i < m.size(); ++i)
        CHECK(m.index_of(m.states[i]) == static_cast<int>(i));
    CHECK(m.index_of(Matching::from_pairs({{0, 2}})) == -1);
}

TEST_CASE("class-balancing weights on the four-cycle") {
    Graph g = cycle_graph(4);
    auto table = hole_pattern_table(g);
    auto m = build_chain_model(g, HoleWeightFn::jsv(table));
    check_exact_kernel(m, false);
    // five realized pattern classes, each carrying stationary mass 1/5
    std::map<HolePattern, Rational> mass;
    for (std::size_t i = 0; i < m.size(); ++i) mass[m.patterns[i]] += m.pi[i];
    CHECK(mass.size() == 5);
    for (const auto& [p, q] : mass) CHECK(q == Rational(1, 5));
}

TEST_CASE("proposal rule: support, mass, and symmetry") {
    Graph g = cycle_graph(6);
    g.add_edge(0, 3);
    auto model = build_chain_model(g, HoleWeightFn::broder());
    // proposal mass q(x,y) is symmetric state-by-state
    std::map<std::pair<int, int>, Rational> q;
    for (std::size_t i = 0; i < model.size(); ++i) {
        Rational total = 0;
        for (const auto& [mm, p] : broder_proposals(g, model.states[i])) {
            CHECK(p > 0);
            int j = model.index_of(mm);
            REQUIRE(j >= 0);  // proposals stay inside the state space
            CHECK(j != static_cast<int>(i));
            q[{static_cast<int>(i), j}] += p;
            total += p;
        }
        CHECK(total <= 1);
    }
    for (const auto& [ij, p] : q) {
        auto it = q.find({ij.second, ij.first});
        REQUIRE(it != q.end());
        CHECK(it->second == p);
    }
    check_exact_kernel(model, true);
    check_exact_kernel(build_chain_model(g, HoleWeightFn::jsv(hole_pattern_table(g))),
                       false);
}

TEST_CASE("gadget chains satisfy the exact kernel identities") {
    auto b2 = chain_of_boxes(2);
    check_exact_kernel(build_chain_model(b2.graph,
                                         HoleWeightFn::jsv(hole_pattern_table(b2.graph))),
                       false);
    auto h1 = torpid_gadget(1);
    auto t = hole_pattern_table(h1.graph);
    auto mh = build_chain_model(h1.graph, HoleWeightFn::jsv(t));
    CHECK(mh.size() == 143);
    check_exact_kernel(mh, false);
}

TEST_CASE("conductance: dense and streaming agree exactly") {
    Graph g = cycle_graph(4);
    auto table = hole_pattern_table(g);
    auto w = HoleWeightFn::jsv(table);
    auto m = build_chain_model(g, w);
    std::vector<int> S;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.patterns[i].is_perfect()) S.push_back(static_cast<int>(i));
    auto exact = conductance(m, S, "perfect side");
    auto stream = conductance_streaming(
        g, w, [](const Matching&, const HolePattern& p) { return p.is_perfect(); },
        "perfect side");
    CHECK(exact.phi == stream.phi);
    CHECK(exact.pi_S == stream.pi_S);
    CHECK(exact.pi_comp == stream.pi_comp);
    CHECK(exact.states_in_S == stream.states_in_S);
    CHECK(exact.states_total == stream.states_total);
    CHECK(exact.phi > 0);
    CHECK(exact.phi <= 1);
    REQUIRE(exact.mixing_lower.has_value());
    CHECK(*exact.mixing_lower == Rational(1) / (4 * exact.phi));
    CHECK(exact.pi_S + exact.pi_comp == 1);

    CHECK_THROWS_AS(conductance(m, {}, "empty"), std::invalid_argument);
    std::vector<int> all(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) all[i] = static_cast<int>(i);
    CHECK_THROWS_AS(conductance(m, all, "full"), std::invalid_argument);
}

TEST_CASE("narrow pattern class on the smallest torpid gadget") {
    auto h1 = torpid_gadget(1);
    auto t = hole_pattern_table(h1.graph);
    HolePattern wide = HolePattern::near(h1.at("x1"), h1.at("v"));
    CHECK(t.near_count(h1.at("x1"), h1.at("v")) == 3);
    auto cut = conductance_streaming(
        h1.graph, HoleWeightFn::jsv(t),
        [&](const Matching&, const HolePattern& p) { return p == wide; }, "wide class");
    CHECK(cut.phi == Rational(2, 25));
    CHECK(cut.pi_S == Rational(1, 104));
    CHECK(cut.bound_applies);
    REQUIRE(cut.mixing_lower.has_value());
    CHECK(*cut.mixing_lower == Rational(25, 8));
}

TEST_CASE("weight files accept decimals and fractions") {
    Graph g = cycle_graph(4);
    std::istringstream in("# comment\nperfect 2\n0 1 0.5\n1 2 1/3\n2 3 0.5\n0 3 1/3\n");
    auto w = HoleWeightFn::from_file(in, g);
    CHECK(!w.constant());
    CHECK(w(HolePattern::perfect()) == Rational(2));
    CHECK(w(HolePattern::near(1, 2)) == Rational(1, 3));
    CHECK(w(HolePattern::near(0, 1)) == Rational(1, 2));
    check_exact_kernel(build_chain_model(g, w), false);

    std::istringstream neg("perfect -1\n");
    CHECK_THROWS_AS(HoleWeightFn::from_file(neg, g), std::invalid_argument);
    std::istringstream junk("perfect one\n");
    CHECK_THROWS_AS(HoleWeightFn::from_file(junk, g), std::invalid_argument);
}

TEST_CASE("single steps stay inside the state space") {
    Graph g = cycle_graph(6);
    g.add_edge(0, 3);
    auto model = build_chain_model(g, HoleWeightFn::broder());
    auto w = HoleWeightFn::jsv(hole_pattern_table(g));
    Rng rng(31);
    Matching m = model.states[0];
    for (int i = 0; i < 2000; ++i) {
        m = broder_step(g, m, rng);
        CHECK(model.index_of(m) >= 0);
    }
    for (int i = 0; i < 2000; ++i) {
        m = jsv_step(g, m, w, rng);
        CHECK(model.index_of(m) >= 0);
    }
}

TEST_CASE("simulation is reproducible and converges on the six-cycle") {
    Graph g = cycle_graph(6);
    auto model = build_chain_model(g, HoleWeightFn::broder());
    Matching start = Matching::from_pairs({{0, 1}, {2, 3}, {4, 5}});
    SimulateOptions opt;
    opt.steps = 40000;
    opt.seed = 7;
    opt.checkpoints = 4;
    auto t1 = simulate(g, HoleWeightFn::broder(), start, opt, &model);
    auto t2 = simulate(g, HoleWeightFn::broder(), start, opt, &model);
    CHECK(t1.pattern_occupancy == t2.pattern_occupancy);
    CHECK(t1.states_recorded == opt.steps + 1);
    REQUIRE(t1.tv_checkpoints.size() == 4);
    CHECK(t1.tv_checkpoints.back().second < 0.05);
    CHECK(t1.perfect_visits > 0);
    long total = 0;
    for (const auto& [pattern, c] : t1.pattern_occupancy) total += c;
    CHECK(total == t1.states_recorded);

    // constant Metropolis weights accept everything: trajectories coincide
    SimulateOptions opt2;
    opt2.steps = 5000;
    opt2.seed = 11;
    std::ostringstream ws;
    ws << "perfect 1\n";
    for (const auto& [uv, c] : hole_pattern_table(g).near)
        ws << uv.first << " " << uv.second << " 1\n";
    std::istringstream ones(ws.str());
    auto unit_weights = HoleWeightFn::from_file(ones, g);
    auto plain = simulate(g, HoleWeightFn::broder(), start, opt2);
    auto accepted = simulate(g, unit_weights, start, opt2);
    CHECK(plain.pattern_occupancy == accepted.pattern_occupancy);

    SimulateOptions bad;
    bad.steps = 10;
    Matching off = Matching::from_pairs({{0, 1}});  // four holes
    CHECK_THROWS_AS(simulate(g, HoleWeightFn::broder(), off, bad),
                    std::invalid_argument);
}
