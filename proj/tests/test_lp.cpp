#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "pond/errors.hpp"
#include "pond/lp.hpp"
#include "pond/validation.hpp"

using namespace pond;

TEST_CASE("one-variable LP") {
    LpProblem lp;
    const int x = lp.add_variable(1.0, 0.0, 10.0, "x");
    lp.add_row({{{x, 1.0}}, Relation::GreaterEqual, 3.0, "lo"});
    const auto s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.x[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(s.objective == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(s.max_residual <= 1e-9);
}

TEST_CASE("empty feasible set") {
    LpProblem lp;
    const int x = lp.add_variable(1.0, 0.0, kInf);
    lp.add_row({{{x, 1.0}}, Relation::LessEqual, 1.0, "a"});
    lp.add_row({{{x, 1.0}}, Relation::GreaterEqual, 2.0, "b"});
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded direction") {
    LpProblem lp;
    const int x = lp.add_variable(-1.0, 0.0, kInf);
    const int y = lp.add_variable(0.0, 0.0, 5.0);
    lp.add_row({{{x, 1.0}, {y, -1.0}}, Relation::GreaterEqual, 0.0, "r"});
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("Beale's cycling example terminates at the optimum") {
    LpProblem lp;
    const int x4 = lp.add_variable(-0.75, 0.0, kInf);
    const int x5 = lp.add_variable(20.0, 0.0, kInf);
    const int x6 = lp.add_variable(-0.5, 0.0, kInf);
    const int x7 = lp.add_variable(6.0, 0.0, kInf);
    lp.add_row({{{x4, 0.25}, {x5, -8.0}, {x6, -1.0}, {x7, 9.0}}, Relation::LessEqual, 0.0, "r1"});
    lp.add_row({{{x4, 0.5}, {x5, -12.0}, {x6, -0.5}, {x7, 3.0}}, Relation::LessEqual, 0.0, "r2"});
    lp.add_row({{{x6, 1.0}}, Relation::LessEqual, 1.0, "r3"});
    SimplexOptions opt;
    opt.degenerate_switch = 1;  // Bland from the first stall
    for (const auto& o : {SimplexOptions{}, opt}) {
        const auto s = solve_lp(lp, o);
        REQUIRE(s.status == LpStatus::Optimal);
        // x4 = x6 = 1
        CHECK(s.objective == doctest::Approx(-1.25).epsilon(1e-12));
    }
}

TEST_CASE("redundant equality rows") {
    LpProblem lp;
    const int x = lp.add_variable(2.0, -1.0, 5.0);
    const int y = lp.add_variable(1.0, 0.0, 5.0);
    lp.add_row({{{x, 1.0}, {y, 1.0}}, Relation::Equal, 3.0, "a"});
    lp.add_row({{{x, 2.0}, {y, 2.0}}, Relation::Equal, 6.0, "twice a"});
    lp.add_row({{{x, 1.0}}, Relation::Equal, 1.0, "b"});
    lp.add_row({{{x, 1.0}}, Relation::Equal, 1.0, "b again"});
    const auto s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.x[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.x[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("fixed variables and empty rows") {
    LpProblem lp;
    const int x = lp.add_variable(1.0, 2.0, 2.0);
    const int y = lp.add_variable(-1.0, 0.0, 4.0);
    lp.add_row({{{x, 1.0}, {y, 1.0}}, Relation::LessEqual, 5.0, "cap"});
    lp.add_row({{{y, 0.0}}, Relation::LessEqual, 1.0, "empty"});
    const auto s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.x[0] == 2.0);
    CHECK(s.x[1] == doctest::Approx(3.0).epsilon(1e-12));

    lp.add_row({{{y, 0.0}}, Relation::GreaterEqual, 1.0, "impossible"});
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);
}

TEST_CASE("malformed problems are rejected") {
    LpProblem lp;
    CHECK_THROWS_AS(solve_lp(lp), PreconditionError);
    lp.add_variable(1.0, -kInf, 1.0);
    CHECK_THROWS_AS(solve_lp(lp), PreconditionError);
    LpProblem lp2;
    lp2.add_variable(1.0, 0.0, 1.0);
    lp2.add_row({{{3, 1.0}}, Relation::LessEqual, 1.0, "bad column"});
    CHECK_THROWS_AS(solve_lp(lp2), PreconditionError);
}

TEST_CASE("random small LPs agree with vertex enumeration") {
    std::mt19937_64 rng(314159);
    int optimal = 0, infeasible = 0;
    for (int i = 0; i < 300; ++i) {
        const int n = std::uniform_int_distribution<int>(1, 8)(rng);
        const int m = std::uniform_int_distribution<int>(0, 4)(rng);
        const LpProblem lp = validation::random_small_lp(rng, n, m);
        const auto oracle = validation::enumerate_lp(lp);
        const auto s = solve_lp(lp);
        REQUIRE(oracle.feasible == (s.status == LpStatus::Optimal));
        if (!oracle.feasible) {
            ++infeasible;
            continue;
        }
        ++optimal;
        CHECK(std::abs(s.objective - oracle.objective) <= 1e-8 * std::max(1.0, std::abs(oracle.objective)));
        CHECK(s.max_residual <= 1e-9);
    }
    CHECK(optimal >= 200);
    CHECK(infeasible > 0);
}

TEST_CASE("twelve-variable LPs agree with vertex enumeration") {
    std::mt19937_64 rng(27);
    for (int i = 0; i < 3; ++i) {
        const LpProblem lp = validation::random_small_lp(rng, 12, 2);
        const auto oracle = validation::enumerate_lp(lp);
        const auto s = solve_lp(lp);
        REQUIRE(oracle.feasible == (s.status == LpStatus::Optimal));
        if (oracle.feasible)
            CHECK(std::abs(s.objective - oracle.objective) <= 1e-8 * std::max(1.0, std::abs(oracle.objective)));
    }
}

TEST_CASE("optimal answers carry consistent reduced costs") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const LpProblem lp = validation::random_small_lp(rng, 6, 3);
        const auto s = solve_lp(lp);
        if (s.status != LpStatus::Optimal) continue;
        for (std::size_t j = 0; j < lp.num_vars(); ++j) {
            const double slack_lo = s.x[j] - lp.lower[j];
            const double slack_hi = lp.upper[j] - s.x[j];
            // strictly interior variables price out at zero
            if (slack_lo > 1e-7 && slack_hi > 1e-7) CHECK(std::abs(s.reduced_costs[j]) <= 1e-7);
        }
    }
}

TEST_CASE("solves are deterministic") {
    std::mt19937_64 rng(99);
    const LpProblem lp = validation::random_small_lp(rng, 7, 4);
    const auto a = solve_lp(lp);
    const auto b = solve_lp(lp);
    CHECK(a.status == b.status);
    CHECK(a.x == b.x);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("LP text dump") {
    LpProblem lp;
    const int x = lp.add_variable(1.0, 0.0, 10.0, "Q0");
    const int h = lp.add_variable(0.0, 0.5, 0.5, "H1");
    lp.add_row({{{x, 2.0}, {h, -1.0}}, Relation::Equal, 1.5, "mass1"});
    std::ostringstream os;
    write_lp_text(lp, os);
    const std::string text = os.str();
    CHECK(text.find("Minimize") != std::string::npos);
    CHECK(text.find("Subject To") != std::string::npos);
    CHECK(text.find(" mass1: + 2 Q0 - 1 H1 = 1.5") != std::string::npos);
    CHECK(text.find(" 0 <= Q0 <= 10") != std::string::npos);
    CHECK(text.find(" H1 = 0.5") != std::string::npos);
    CHECK(text.find("End") != std::string::npos);
}
