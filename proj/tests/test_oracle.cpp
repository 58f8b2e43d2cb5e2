#include <doctest.h>

#include "rrflow/instances.hpp"
#include "rrflow/maxflow.hpp"
#include "rrflow/oracle.hpp"
#include "rrflow/srf_solver.hpp"

using namespace rrflow;

TEST_CASE("path LP optima on the examples") {
    Network unit = gen_fig2(Rational(1));
    CHECK(oracle_max_srf_paths(unit).first == Rational(1, 2));
    CHECK(oracle_max_rf(unit).first == Rational(1, 2));

    Network two = gen_fig2(Rational(2));
    CHECK(oracle_max_srf_paths(two).first == Rational(1, 2));
    CHECK(oracle_max_rf(two).first == 1);
}

TEST_CASE("oracle witnesses verify") {
    Network net = gen_fig2(Rational(2));
    auto [sv, sx] = oracle_max_srf_paths(net);
    sx.validate(net);
    CHECK(sx.value() == sv);
    CHECK(verify_reroutable(net, sx, true).ok);
    auto [rv, rx] = oracle_max_rf(net);
    CHECK(rx.value() == rv);
    CHECK(verify_reroutable(net, rx, false).ok);
}

TEST_CASE("a single arc admits no reroutable flow") {
    Network net = parse_network(
        "p rrf 2 1\nn s source\nn t sink\na e1 s t 5\n");
    CHECK(oracle_max_srf_paths(net).first == 0);
    CHECK(oracle_max_rf(net).first == 0);
    auto [rc, cap] = oracle_min_rcut(net);
    CHECK(cap == 0);
}

TEST_CASE("k=1 oracle coincides with the single-failure oracle") {
    Network par = parse_network(
        "p rrf 2 2\n"
        "n s source\n"
        "n t sink\n"
        "a e1 s t 1\n"
        "a e2 s t 1\n");
    CHECK(oracle_max_k_rf(par, 1).first == oracle_max_rf(par).first);
    CHECK(oracle_max_k_rf(par, 1).first == 1);
    CHECK(oracle_max_k_rf(par, 2).first == 0); // both arcs can fail together
}

TEST_CASE("k oracle is monotone in k") {
    Network net = gen_fig2(Rational(2));
    Rational k1 = oracle_max_k_rf(net, 1).first;
    Rational k2 = oracle_max_k_rf(net, 2).first;
    CHECK(k1 == oracle_max_rf(net).first);
    CHECK(k2 <= k1);
}

TEST_CASE("minimum r-cut on the examples") {
    for (const Rational& cap : {Rational(1), Rational(2)}) {
        Network net = gen_fig2(cap);
        auto [rc, value] = oracle_min_rcut(net);
        rc.validate(net);
        CHECK(value == 1);
        CHECK(value == rcut_capacity(net, rc));
        // never exceeds a plain min cut (take R = min cut, C_a = that cut)
        CHECK(value <= min_cut(net, CapacityFunction(), net.source(),
                               net.sink()).second);
        // sandwiched by the strict optimum (factor 2)
        Rational srf = solve_max_srf(net).value;
        CHECK(srf <= value);
        CHECK(value <= 2 * srf);
    }
}

TEST_CASE("strict cut criterion agrees with the verifier on unit instances") {
    Network net = gen_fig2(Rational(1));
    PathFlow half = parse_path_flow("f 1/2 a1 a2 a3\n", net);
    CHECK(oracle_strict_check_cuts(net, half));
    PathFlow full = parse_path_flow("f 1 a1 a2 a3\n", net);
    CHECK_FALSE(oracle_strict_check_cuts(net, full));

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Network rnd = gen_random(6, 10, {Rational(1)}, seed);
        auto [value, x] = oracle_max_rf(rnd);
        if (value == 0)
            continue;
        CAPTURE(seed);
        CHECK(oracle_strict_check_cuts(rnd, x) ==
              verify_reroutable(rnd, x, true).ok);
    }
}

TEST_CASE("integral unit flow search") {
    Network two = gen_fig2(Rational(2));
    auto path = oracle_integral_unit_flow(two);
    REQUIRE(path.has_value());
    PathFlow x;
    x.entries.emplace_back(*path, Rational(1));
    x.validate(two);
    CHECK(verify_reroutable(two, x, false).ok);

    Network unit = gen_fig2(Rational(1));
    CHECK_FALSE(oracle_integral_unit_flow(unit).has_value());
}

TEST_CASE("budgets abort oversized enumerations") {
    Network net = gen_fig3(3);
    OracleBudget tight;
    tight.max_paths = 5;
    CHECK_THROWS_AS(oracle_max_srf_paths(net, tight), BudgetExceeded);
    OracleBudget few_nodes;
    few_nodes.max_nodes = 4;
    CHECK_THROWS_AS(oracle_min_rcut(net, few_nodes), BudgetExceeded);
    OracleBudget few_sets;
    few_sets.max_failure_sets = 3;
    CHECK_THROWS_AS(oracle_max_k_rf(gen_fig2(Rational(1)), 2, few_sets),
                    BudgetExceeded);
}
