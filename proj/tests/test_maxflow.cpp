#include <doctest.h>

#include "rrflow/maxflow.hpp"

using namespace rrflow;

namespace {

Network diamond() {
    return parse_network(
        "p rrf 4 5\n"
        "n s source\n"
        "n a\n"
        "n b\n"
        "n t sink\n"
        "a e1 s a 1\n"
        "a e2 a t 2\n"
        "a e3 s b 1/2\n"
        "a e4 b t 1\n"
        "a e5 a b 3\n");
}

} // namespace

TEST_CASE("max flow value and conservation") {
    Network net = diamond();
    MaxFlowResult mf = max_flow(net, CapacityFunction(), "s", "t");
    CHECK(mf.value == Rational(3, 2));
    // conservation at interior nodes
    for (const std::string& v : {"a", "b"}) {
        Rational in(0), out(0);
        for (const Arc& a : net.arcs()) {
            auto it = mf.arc_flow.find(a.id);
            Rational f = it == mf.arc_flow.end() ? Rational(0) : it->second;
            if (a.head == v)
                in += f;
            if (a.tail == v)
                out += f;
        }
        CHECK(in == out);
    }
}

TEST_CASE("min cut matches the flow value") {
    Network net = diamond();
    auto [cut, value] = min_cut(net, CapacityFunction(), "s", "t");
    CHECK(value == Rational(3, 2));
    Rational total(0);
    for (const std::string& id : cut)
        total += net.arc(id).capacity;
    CHECK(total == value);
    CHECK(is_cut(net, cut, "s", "t"));
}

TEST_CASE("capacity overrides and removed arcs") {
    Network net = diamond();
    CapacityFunction cap;
    cap.set("e1", Rational(1, 3));
    CHECK(max_flow(net, cap, "s", "t").value == Rational(5, 6));
    CHECK(max_flow(net, CapacityFunction(), "s", "t", {"e1"}).value ==
          Rational(1, 2));
    CHECK(max_flow(net, CapacityFunction(), "s", "t", {"e1", "e3"}).value == 0);
    CHECK_THROWS_AS(cap.set("e2", Rational(-1)), Error);
}

TEST_CASE("target stops augmentation early") {
    Network net = diamond();
    MaxFlowResult mf =
        max_flow(net, CapacityFunction(), "s", "t", {}, Rational(1));
    CHECK(mf.value == 1);
    Rational total(0);
    for (const auto& [id, f] : mf.arc_flow) {
        CHECK(f >= 0);
        CHECK(f <= net.arc(id).capacity);
    }
    // an unreachable target degenerates to the true max flow
    CHECK(max_flow(net, CapacityFunction(), "s", "t", {}, Rational(99)).value ==
          Rational(3, 2));
}

TEST_CASE("parallel arcs both carry flow") {
    Network net = parse_network(
        "p rrf 2 2\n"
        "n s source\n"
        "n t sink\n"
        "a e1 s t 1\n"
        "a e2 s t 2/3\n");
    MaxFlowResult mf = max_flow(net, CapacityFunction(), "s", "t");
    CHECK(mf.value == Rational(5, 3));
    CHECK(mf.arc_flow.at("e1") == 1);
    CHECK(mf.arc_flow.at("e2") == Rational(2, 3));
}

TEST_CASE("source side of the min cut is residual-reachable") {
    Network net = diamond();
    MaxFlowResult mf = max_flow(net, CapacityFunction(), "s", "t");
    CHECK(mf.min_cut_source_side.count("s") == 1);
    CHECK(mf.min_cut_source_side.count("t") == 0);
}
