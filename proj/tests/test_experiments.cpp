#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "matchings/experiments.hpp"

using namespace matchings;

TEST_CASE("narrow-class table over the torpid family") {
    auto rows = run_torpid_experiment(TorpidVariant::TorpidGadget, 1, 3);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(!r.skipped);
        CHECK(r.pi_S > 0);
        CHECK(r.pi_S < Rational(1, 2));
        REQUIRE(r.mixing_lower.has_value());
        CHECK(*r.mixing_lower == Rational(1) / (4 * r.phi));
    }
    CHECK(rows[0].k == 1);
    CHECK(rows[0].omega == 143);
    CHECK(rows[0].phi == Rational(2, 25));
    CHECK(rows[1].omega == 415);
    CHECK(rows[1].phi == Rational(7, 162));
    CHECK(rows[2].phi == Rational(1, 34));
    // the narrow class shrinks relative to the rest as the chains lengthen
    CHECK(rows[1].pi_S < rows[0].pi_S);
    CHECK(rows[2].pi_S < rows[1].pi_S);
}

TEST_CASE("composite-ring table") {
    auto rows = run_torpid_experiment(TorpidVariant::Counterexample, 1, 1);
    REQUIRE(rows.size() == 1);
    CHECK(!rows[0].skipped);
    CHECK(rows[0].omega == 19896);
    CHECK(rows[0].phi == Rational(3194, 14811615));
    CHECK(rows[0].pi_S == Rational(3617, 6610));
    // the traversal side holds most of the stationary mass here, so the
    // one-quarter-over-phi bound is reported for the complement cut
    CHECK(rows[0].pi_S > Rational(1, 2));
}

TEST_CASE("constant-weight decay table") {
    auto rows = run_torpid_experiment(TorpidVariant::BroderDecay, 1, 2);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].omega == 19896);
    CHECK(rows[0].pi_S == Rational(1, 2487));  // 8 perfect states of 19896
    CHECK(rows[0].phi == 1);  // every perfect state exits with certainty
    CHECK(rows[1].omega == 125048);
    CHECK(rows[1].pi_S == Rational(1, 15631));  // 8 of 125048
    CHECK(rows[1].pi_S < rows[0].pi_S);
}

TEST_CASE("state cap skips a row instead of grinding") {
    auto rows = run_torpid_experiment(TorpidVariant::TorpidGadget, 1, 2, 200);
    REQUIRE(rows.size() == 2);
    CHECK(!rows[0].skipped);  // 143 states fit
    CHECK(rows[1].skipped);   // 415 states do not
    CHECK(!rows[1].note.empty());
    CHECK_THROWS_AS(run_torpid_experiment(TorpidVariant::TorpidGadget, 2, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_torpid_experiment(TorpidVariant::TorpidGadget, 0, 1),
                    std::invalid_argument);
}

TEST_CASE("table serialization") {
    auto rows = run_torpid_experiment(TorpidVariant::TorpidGadget, 1, 2, 200);
    std::string csv = torpid_csv(rows);
    std::istringstream lines(csv);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "k,omega,pi_S,phi,mixing_lower,note");
    REQUIRE(std::getline(lines, line));
    CHECK(line.rfind("1,143,", 0) == 0);
    REQUIRE(std::getline(lines, line));
    CHECK(line.rfind("2,,", 0) == 0);  // skipped row keeps the column shape
    CHECK(line.find("cap") != std::string::npos);
    CHECK(!std::getline(lines, line));
}
