#include <doctest.h>

#include "rrflow/flow_model.hpp"
#include "rrflow/instances.hpp"

using namespace rrflow;

namespace {

PathFlow unit_path(const Network& net, const std::vector<std::string>& arcs,
                   const Rational& value) {
    PathFlow x;
    x.entries.emplace_back(ArcPath{arcs}, value);
    x.validate(net);
    return x;
}

} // namespace

TEST_CASE("flow file round-trip and validation") {
    Network net = gen_fig2(Rational(1));
    PathFlow x = parse_path_flow("f 1/2 a1 a2 a3\n", net);
    CHECK(x.value() == Rational(1, 2));
    PathFlow again = parse_path_flow(write_path_flow(x), net);
    CHECK(write_path_flow(again) == write_path_flow(x));

    CHECK_THROWS_AS(parse_path_flow("f 2 a1 a2 a3\n", net), Error); // over cap
    CHECK_THROWS_AS(parse_path_flow("f 1/2 a1 a3\n", net), Error);  // not a chain
    CHECK_THROWS_AS(parse_path_flow("f 1/2 a2 a3\n", net), Error);  // not from s
    CHECK_THROWS_AS(parse_path_flow("f -1 a1 a2 a3\n", net), Error);
}

TEST_CASE("arc flow aggregation") {
    Network net = gen_fig2(Rational(1));
    PathFlow x;
    x.entries.emplace_back(ArcPath{{"a1", "a2", "a3"}}, Rational(1, 3));
    x.entries.emplace_back(ArcPath{{"a1", "a2", "a3"}}, Rational(1, 6));
    auto flows = arc_flow_of(net, x);
    CHECK(flows["a1"] == Rational(1, 2));
    CHECK(flows.count("bk_b_t_a") == 0);
}

TEST_CASE("available capacity distinguishes plain and strict") {
    Network net = gen_fig2(Rational(2));
    PathFlow x = unit_path(net, {"a1", "a2", "a3"}, Rational(1));
    // a1 precedes a3 on the only flow path, so its failure frees a3
    CHECK(available_capacity(net, x, "a1", "a3", false) == 1);
    CHECK(available_capacity(net, x, "a1", "a3", true) == 0);
    CHECK(available_capacity(net, x, "a3", "a1", false) == 1); // 2 - x(a1)
    CHECK(available_capacity(net, x, "a3", "a1", true) == 1);
    CHECK_THROWS_AS(available_capacity(net, x, "a1", "a1", false), Error);
}

TEST_CASE("fig2 unit flow of value 1 is plain but not strictly reroutable") {
    Network net = gen_fig2(Rational(2));
    PathFlow x = unit_path(net, {"a1", "a2", "a3"}, Rational(1));
    CHECK(verify_reroutable(net, x, false).ok);
    RerouteVerdict strict = verify_reroutable(net, x, true);
    CHECK_FALSE(strict.ok);
    REQUIRE(strict.violations.count("a1"));
    const ViolatedCut& vc = strict.violations.at("a1");
    CHECK(vc.slack < 1);
    std::set<std::string> cut = vc.cut;
    cut.insert("a1");
    CHECK(is_cut(net, cut, net.arc("a1").tail, net.sink()));
}

TEST_CASE("half flow is strictly reroutable and reroutings check out") {
    Network net = gen_fig2(Rational(1));
    PathFlow x = unit_path(net, {"a1", "a2", "a3"}, Rational(1, 2));
    RerouteVerdict v = verify_reroutable(net, x, true);
    CHECK(v.ok);
    for (const auto& [failing, r] : v.reroutings) {
        CHECK(r.value() == Rational(1, 2));
        for (const auto& [path, val] : r.entries) {
            path.validate(net);
            CHECK(path.first_tail(net) == net.arc(failing).tail);
            CHECK(path.last_head(net) == net.sink());
            CHECK_FALSE(path.contains(failing));
        }
    }
}

TEST_CASE("find_rerouting returns a certified cut on failure") {
    Network net = gen_fig2(Rational(1));
    PathFlow x = unit_path(net, {"a1", "a2", "a3"}, Rational(1));
    auto res = find_rerouting(net, x, "a1", std::nullopt, true);
    auto* vc = std::get_if<ViolatedCut>(&res);
    REQUIRE(vc);
    CHECK(vc->slack < 1);
    // zero demand is trivially reroutable
    auto res0 = find_rerouting(net, x, "a1", Rational(0), true);
    CHECK(std::get<ReroutingFlow>(res0).entries.empty());
}

TEST_CASE("interrupted values follow the first failed arc") {
    Network net = gen_fig2(Rational(1));
    PathFlow x = unit_path(net, {"a1", "a2", "a3"}, Rational(1, 2));
    FailureScenario sc = interrupted_values(net, x, {"a2", "a3"});
    CHECK(sc.interrupted.at("a2") == Rational(1, 2));
    CHECK(sc.interrupted.at("a3") == 0);
    CHECK(sc.total() == Rational(1, 2));
}

TEST_CASE("k=1 verification coincides with the single-failure verifier") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        Network net = gen_random(6, 10, {Rational(1), Rational(2)}, seed);
        MaxFlowResult mf = max_flow(net, CapacityFunction(), net.source(),
                                    net.sink());
        if (mf.value == 0)
            continue;
        PathFlow x = path_decompose(net, mf.arc_flow, net.source(), net.sink())
                         .scaled(Rational(1, 2));
        for (bool strict : {false, true}) {
            CAPTURE(seed);
            CHECK(verify_k_reroutable(net, x, 1, strict).ok ==
                  verify_reroutable(net, x, strict).ok);
        }
    }
}

TEST_CASE("k verification budget") {
    Network net = gen_fig2(Rational(1));
    PathFlow x = unit_path(net, {"a1", "a2", "a3"}, Rational(1, 2));
    CHECK_THROWS_AS(verify_k_reroutable(net, x, 3, false, 10), BudgetExceeded);
}

TEST_CASE("path decomposition cancels circulations") {
    Network net = parse_network(
        "p rrf 4 5\n"
        "n s source\n"
        "n a\n"
        "n b\n"
        "n t sink\n"
        "a e1 s a 2\n"
        "a e2 a t 2\n"
        "a e3 a b 1\n"
        "a e4 b a 1\n"
        "a e5 b t 1\n");
    std::map<std::string, Rational> af{{"e1", Rational(1)},
                                       {"e2", Rational(1)},
                                       {"e3", Rational(1)},
                                       {"e4", Rational(1)}};
    PathFlow x = path_decompose(net, af, "s", "t");
    CHECK(x.value() == 1);
    REQUIRE(x.entries.size() == 1);
    CHECK(x.entries[0].first.arcs == std::vector<std::string>{"e1", "e2"});
}
