#include <doctest.h>

#include "rrflow/instances.hpp"
#include "rrflow/unit_cap.hpp"

using namespace rrflow;

namespace {

Rational total_arc_flow(const Network& net, const PathFlow& x) {
    Rational sum(0);
    for (const auto& [id, v] : arc_flow_of(net, x))
        sum += v;
    return sum;
}

} // namespace

TEST_CASE("unit demand on the unit example is infeasible with a certificate") {
    Network net = gen_fig2(Rational(1));
    UnitDemandOutcome out = unit_demand_half_integral(net);
    CHECK_FALSE(out.feasible);
    CHECK_FALSE(out.certificate.empty());
    CHECK(is_cut(net, out.certificate, net.source(), net.sink()));
}

TEST_CASE("a lone bridge cannot support a reroutable unit") {
    Network net = parse_network(
        "p rrf 2 1\nn s source\nn t sink\na e1 s t 1\n");
    UnitDemandOutcome out = unit_demand_half_integral(net);
    CHECK_FALSE(out.feasible);
    CHECK(out.certificate == std::set<std::string>{"e1"});
}

TEST_CASE("unit demand succeeds on the k=3 gadget") {
    Network net = gen_fig3(3);
    UnitDemandOutcome out = unit_demand_half_integral(net);
    REQUIRE(out.feasible);
    CHECK(out.flow.value() == 1);
    CHECK(out.flow.entries.size() == 2);
    for (const auto& [path, v] : out.flow.entries)
        CHECK(v == Rational(1, 2));
    CHECK(verify_reroutable(net, out.flow, true).ok);
}

TEST_CASE("strict violation cut matches the strict verifier") {
    Network net = gen_fig2(Rational(1));
    PathFlow full = parse_path_flow("f 1 a1 a2 a3\n", net);
    auto witness = strict_violation_cut(net, full);
    REQUIRE(witness.has_value());
    const auto& [arc, cut] = *witness;
    CHECK(arc_flow_of(net, full)[arc] > 0);
    CHECK(cut.count(arc) == 1);
    CHECK(is_cut(net, cut, net.arc(arc).tail, net.sink()));
    Rational slack(0);
    auto flows = arc_flow_of(net, full);
    for (const std::string& c : cut)
        slack += 1 - flows[c];
    CHECK(slack < 1);

    PathFlow half = full.scaled(Rational(1, 2));
    CHECK_FALSE(strict_violation_cut(net, half).has_value());
    CHECK(verify_reroutable(net, half, true).ok);
}

TEST_CASE("strict violation requires unit capacities") {
    Network net = gen_fig2(Rational(2));
    PathFlow x = parse_path_flow("f 1 a1 a2 a3\n", net);
    CHECK_THROWS_AS(strict_violation_cut(net, x), Error);
}

namespace {

// Three paths chasing each other across the cut {g1,g2,g3}: every cut arc is
// crossed twice, so the cut is bad and one uncrossing round untangles it.
Network crossing_gadget() {
    return parse_network(
        "p rrf 8 12\n"
        "n s source\n"
        "n v1\nn w1\nn v2\nn w2\nn v3\nn w3\n"
        "n t sink\n"
        "a sv1 s v1 1\n"
        "a sv2 s v2 1\n"
        "a sv3 s v3 1\n"
        "a g1 v1 w1 1\n"
        "a g2 v2 w2 1\n"
        "a g3 v3 w3 1\n"
        "a wv1 w1 v2 1\n"
        "a wv2 w2 v3 1\n"
        "a wv3 w3 v1 1\n"
        "a wt1 w1 t 1\n"
        "a wt2 w2 t 1\n"
        "a wt3 w3 t 1\n");
}

PathFlow crossing_flow(const Network& net) {
    PathFlow x;
    x.entries.emplace_back(ArcPath{{"sv1", "g1", "wv1", "g2", "wt2"}},
                           Rational(1, 2));
    x.entries.emplace_back(ArcPath{{"sv2", "g2", "wv2", "g3", "wt3"}},
                           Rational(1, 2));
    x.entries.emplace_back(ArcPath{{"sv3", "g3", "wv3", "g1", "wt1"}},
                           Rational(1, 2));
    x.validate(net);
    return x;
}

} // namespace

TEST_CASE("bad cut detection and uncrossing on the crossing gadget") {
    Network net = crossing_gadget();
    PathFlow x = crossing_flow(net);
    auto flows = arc_flow_of(net, x);
    for (int i = 1; i <= 3; ++i)
        CHECK(flows["g" + std::to_string(i)] == 1);

    std::set<std::string> sstar{"s", "v1", "v2", "v3"};
    auto direct = is_bad_cut(net, x, sstar);
    REQUIRE(direct.has_value());
    CHECK(direct->cut == std::set<std::string>{"g1", "g2", "g3"});
    CHECK(direct->witnesses.size() == 3);

    auto report = rightmost_bad_cut(net, x);
    REQUIRE(report.has_value());
    CHECK(report->S == sstar);

    auto [x2, cert] = uncross_step(net, x, *report);
    CHECK(cert.epsilon == Rational(1, 2));
    CHECK(cert.cycle_arcs.size() == 3);
    CHECK(x2.value() == x.value());
    auto after = arc_flow_of(net, x2);
    for (const auto& [id, v] : after)
        CHECK(v <= flows[id]);
    CHECK(total_arc_flow(net, x2) < total_arc_flow(net, x));
    // the untangled flow uses each lane straight through
    CHECK(after["g1"] == Rational(1, 2));
    CHECK(after["wv1"] == 0);
    for (const auto& [path, v] : x2.entries)
        CHECK(is_half_integral(v));
    // untangling removed the only bad cut
    CHECK_FALSE(rightmost_bad_cut(net, x2).has_value());
}

TEST_CASE("strict violation cut on the crossing flow") {
    Network net = crossing_gadget();
    PathFlow x = crossing_flow(net);
    auto witness = strict_violation_cut(net, x);
    REQUIRE(witness.has_value());
    CHECK(witness->second.count(witness->first) == 1);
}

TEST_CASE("make_strict leaves strict flows untouched in value") {
    Network net = gen_fig2(Rational(1));
    PathFlow half = parse_path_flow("f 1/2 a1 a2 a3\n", net);
    PathFlow out = make_strict(net, half);
    CHECK(out.value() == Rational(1, 2));
    CHECK(verify_reroutable(net, out, true).ok);
}

TEST_CASE("bad cut detection rejects cuts without witnesses") {
    Network net = gen_fig2(Rational(1));
    PathFlow half = parse_path_flow("f 1/2 a1 a2 a3\n", net);
    std::vector<std::string> non_bad;
    CHECK_FALSE(is_bad_cut(net, half, {"s"}, &non_bad).has_value());
    CHECK_FALSE(non_bad.empty());
    CHECK_FALSE(rightmost_bad_cut(net, half).has_value());
}
