#include <doctest.h>

#include "rrflow/instances.hpp"
#include "rrflow/maxflow.hpp"
#include "rrflow/oracle.hpp"
#include "rrflow/srf_solver.hpp"

using namespace rrflow;

namespace {

ForbiddenPairsInstance diamond_fp() {
    // two disjoint s'-t' paths, one pair across them: still feasible
    return parse_fp(
        "p rrf 4 4\n"
        "n s source\n"
        "n a\n"
        "n b\n"
        "n t sink\n"
        "a d1 s a 1\n"
        "a d2 a t 1\n"
        "a d3 s b 1\n"
        "a d4 b t 1\n"
        "pair d2 d3\n");
}

ForbiddenPairsInstance chain_fp() {
    // a single path whose two arcs form a pair: infeasible
    return parse_fp(
        "p rrf 3 2\n"
        "n s source\n"
        "n m\n"
        "n t sink\n"
        "a c1 s m 1\n"
        "a c2 m t 1\n"
        "pair c1 c2\n");
}

} // namespace

TEST_CASE("two-gap example shape") {
    Network net = gen_fig2(Rational(1));
    CHECK(net.nodes().size() == 7);
    CHECK(net.arcs().size() == 9);
    CHECK(enumerate_simple_paths(net, "s", "t").size() == 3);
    CHECK(net.arc("a1").capacity == 1);
    CHECK(gen_fig2(Rational(2)).arc("a1").capacity == 2);
    CHECK_THROWS_AS(gen_fig2(Rational(3)), Error);
}

TEST_CASE("backup links are fresh two-arc detours at max capacity") {
    Network base = parse_network(
        "p rrf 2 1\nn s source\nn t sink\na e1 s t 3\n");
    Network one = add_backup_link(base, "t", "s", false);
    CHECK(one.nodes().size() == 3);
    CHECK(one.arcs().size() == 3);
    Network both = add_backup_link(base, "s", "t", true);
    CHECK(both.nodes().size() == 4);
    CHECK(both.arcs().size() == 5);
    for (const Arc& a : both.arcs())
        if (a.id != "e1")
            CHECK(a.capacity == 3); // max capacity at the time of addition
    CHECK_THROWS_AS(add_backup_link(base, "s", "nope", false), Error);
}

TEST_CASE("fractional family shape") {
    Network net = gen_fig3(3);
    CHECK(net.nodes().size() == 39);
    CHECK(net.arcs().size() == 61);
    for (const Arc& a : net.arcs())
        CHECK(a.capacity == 1);
    CHECK_THROWS_AS(gen_fig3(2), Error);
}

TEST_CASE("random generation is deterministic and in bounds") {
    Network a = gen_random(8, 14, {Rational(1), Rational(2)}, 42);
    Network b = gen_random(8, 14, {Rational(1), Rational(2)}, 42);
    CHECK(a == b);
    CHECK(a.nodes().size() == 8);
    CHECK(a.arcs().size() == 14);
    for (const Arc& arc : a.arcs()) {
        CHECK(arc.tail != arc.head);
        CHECK((arc.capacity == 1 || arc.capacity == 2));
    }
    Network c = gen_random(8, 14, {Rational(1), Rational(2)}, 43);
    CHECK_FALSE(a == c);
}

TEST_CASE("forbidden pairs files round-trip") {
    ForbiddenPairsInstance inst = diamond_fp();
    inst.validate();
    ForbiddenPairsInstance again = parse_fp(write_fp(inst));
    CHECK(again.net == inst.net);
    CHECK(again.pairs == inst.pairs);
    CHECK_THROWS_AS(
        parse_fp("p rrf 2 1\nn s source\nn t sink\na e1 s t 1\npair e1 e9\n"),
        Error);
}

TEST_CASE("brute force pair avoidance") {
    auto path = solve_fp_bruteforce(diamond_fp());
    REQUIRE(path.has_value());
    CHECK((path->arcs == std::vector<std::string>{"d1", "d2"} ||
           path->arcs == std::vector<std::string>{"d3", "d4"}));
    CHECK_FALSE(solve_fp_bruteforce(chain_fp()).has_value());
}

TEST_CASE("normalization establishes the structural assumptions") {
    for (const ForbiddenPairsInstance& raw : {diamond_fp(), chain_fp()}) {
        bool feasible = solve_fp_bruteforce(raw).has_value();
        ForbiddenPairsInstance norm = normalize_fp(raw);
        norm.validate();
        CHECK(norm.normalized());
        CHECK(solve_fp_bruteforce(norm).has_value() == feasible);
    }
}

TEST_CASE("capacity-{1,2} reduction tracks feasibility") {
    ForbiddenPairsInstance feasible = normalize_fp(diamond_fp());
    Network yes = reduce_fp_cap12(feasible);
    CHECK(oracle_max_rf(yes).first == 2);

    ForbiddenPairsInstance infeasible = normalize_fp(chain_fp());
    Network no = reduce_fp_cap12(infeasible);
    CHECK(oracle_max_rf(no).first < 2);
    for (const Arc& a : no.arcs())
        CHECK((a.capacity == 1 || a.capacity == 2));
}

TEST_CASE("integral reduction tracks feasibility") {
    Network yes = reduce_fp_integral(normalize_fp(diamond_fp()));
    for (const Arc& a : yes.arcs())
        CHECK(a.capacity == 1);
    CHECK(oracle_integral_unit_flow(yes).has_value());

    Network no = reduce_fp_integral(normalize_fp(chain_fp()));
    CHECK_FALSE(oracle_integral_unit_flow(no).has_value());
}

TEST_CASE("k=2 reduction has unit capacities and both terminals") {
    Network net = reduce_fp_k2(normalize_fp(chain_fp()));
    for (const Arc& a : net.arcs())
        CHECK(a.capacity == 1);
    CHECK_FALSE(reachable_nodes(net, net.source()).count(net.sink()) == 0);
}
