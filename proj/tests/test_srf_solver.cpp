#include <doctest.h>

#include "rrflow/instances.hpp"
#include "rrflow/srf_solver.hpp"

using namespace rrflow;

TEST_CASE("strict optimum on the small examples") {
    SrfSolution s1 = solve_max_srf(gen_fig2(Rational(1)));
    CHECK(s1.value == Rational(1, 2));
    SrfSolution s2 = solve_max_srf(gen_fig2(Rational(2)));
    CHECK(s2.value == Rational(1, 2));
}

TEST_CASE("solution is internally consistent") {
    Network net = gen_fig2(Rational(1));
    SrfSolution sol = solve_max_srf(net);
    sol.nominal.validate(net);
    CHECK(sol.nominal.value() == sol.value);
    RerouteVerdict v = verify_reroutable(net, sol.nominal, true);
    CHECK(v.ok);
    auto flows = arc_flow_of(net, sol.nominal);
    for (const auto& [failing, r] : sol.reroutings)
        CHECK(r.value() == flows[failing]);
}

TEST_CASE("compact LP agrees with cut generation") {
    for (const Rational& cap : {Rational(1), Rational(2)}) {
        Network net = gen_fig2(cap);
        LpOutcome out = solve_lp(build_compact_srf_lp(net));
        REQUIRE(out.status == LpStatus::Optimal);
        CHECK(out.value == solve_max_srf(net).value);
    }
}

TEST_CASE("fractional optimum on the k=3 gadget") {
    Network net = gen_fig3(3);
    SrfSolution sol = solve_max_srf(net);
    CHECK(sol.value == 2);
    auto flows = arc_flow_of(net, sol.nominal);
    CHECK(flows["sv"] == 1);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 4; ++j) {
            CHECK(flows["su" + std::to_string(i) + "_" + std::to_string(j)] ==
                  Rational(1, 3));
            CHECK(flows["vt" + std::to_string(i) + "_" + std::to_string(j)] ==
                  Rational(2, 3));
        }
    CHECK(verify_reroutable(net, sol.nominal, true).ok);
}

TEST_CASE("rf approximation carries its guarantee") {
    Network net = gen_fig2(Rational(2));
    RfApproximation apx = approx_max_rf(net);
    CHECK(apx.value == Rational(1, 2));
    CHECK(verify_reroutable(net, apx.flow, false).ok);
    // plain optimum here is 1, within the factor-2 bound
    CHECK(2 * apx.value >= 1);
}

TEST_CASE("disconnected instance yields the zero flow") {
    Network net = parse_network(
        "p rrf 3 1\nn s source\nn m\nn t sink\na e1 s m 1\n");
    SrfSolution sol = solve_max_srf(net);
    CHECK(sol.value == 0);
    CHECK(sol.nominal.value() == 0);
}
