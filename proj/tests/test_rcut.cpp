#include <doctest.h>

#include "rrflow/instances.hpp"
#include "rrflow/rcut.hpp"
#include "rrflow/srf_solver.hpp"

using namespace rrflow;

TEST_CASE("capacity of a hand-built r-cut") {
    Network net = gen_fig2(Rational(1));
    RCut rc;
    rc.R = {"a3"};
    rc.cuts["a3"] = {"a1", "a3"};
    rc.validate(net);
    CHECK(rc.removed_union() == std::set<std::string>{"a1", "a3"});
    // removing a1 and a3 disconnects s from t, so only u(a1) remains
    CHECK(rcut_capacity(net, rc) == 1);
}

TEST_CASE("validation rejects broken cut systems") {
    Network net = gen_fig2(Rational(1));
    RCut missing;
    missing.R = {"a3"};
    CHECK_THROWS_AS(missing.validate(net), Error);

    RCut no_self;
    no_self.R = {"a3"};
    no_self.cuts["a3"] = {"a1"}; // C_a must contain a
    CHECK_THROWS_AS(no_self.validate(net), Error);

    RCut not_a_cut;
    not_a_cut.R = {"a1"};
    not_a_cut.cuts["a1"] = {"a1"}; // b still reaches t over the backup
    CHECK_THROWS_AS(not_a_cut.validate(net), Error);
}

TEST_CASE("upper bound holds against reroutable flows") {
    Network net = gen_fig2(Rational(1));
    RCut rc;
    rc.R = {"a3"};
    rc.cuts["a3"] = {"a1", "a3"};
    PathFlow x = parse_path_flow("f 1/2 a1 a2 a3\n", net);
    CHECK(verify_upper_bound(net, rc, x));
    // value 1 still fits under capacity 1, the bound is tight here
    PathFlow big = parse_path_flow("f 1 a1 a2 a3\n", net);
    CHECK(verify_upper_bound(net, rc, big));
}

TEST_CASE("approximation sandwich on the examples") {
    for (const Rational& cap : {Rational(1), Rational(2)}) {
        Network net = gen_fig2(cap);
        RCutApproximation apx = approx_min_rcut(net);
        apx.rcut.validate(net);
        CHECK(apx.capacity == rcut_capacity(net, apx.rcut));
        CHECK(verify_reroutable(net, apx.witness, true).ok);
        CHECK(2 * apx.witness.value() >= apx.capacity);
        CHECK(apx.witness.value() <= apx.capacity);
    }
}

TEST_CASE("dual solution reproduces the r-cut objective") {
    Network net = gen_fig2(Rational(2));
    RCutApproximation apx = approx_min_rcut(net);
    DualSolution dual = rcut_to_dual(net, apx.rcut);
    CHECK(dual.objective(net) == apx.capacity);
    for (const auto& [key, v] : dual.y)
        CHECK((v == 0 || v == 1));
    for (const auto& [arc, v] : dual.z)
        CHECK((v == 0 || v == 1));
}

TEST_CASE("r-cut file round-trip") {
    Network net = gen_fig2(Rational(1));
    RCut rc;
    rc.R = {"a1", "a3"};
    rc.cuts["a1"] = {"a1", "bk_s_c_a"};
    rc.cuts["a3"] = {"a1", "a3"};
    RCut again = parse_rcut(write_rcut(rc), net);
    CHECK(again.R == rc.R);
    CHECK(again.cuts == rc.cuts);
    CHECK_THROWS_AS(parse_rcut("R a1\nC a2 a2\n", net), Error);
}

TEST_CASE("half-integral approximate flow") {
    Network net = gen_fig2(Rational(2));
    PathFlow x = half_integral_approx_flow(net);
    x.validate(net);
    for (const auto& [path, v] : x.entries)
        CHECK(is_half_integral(v));
    CHECK(verify_reroutable(net, x, true).ok);
    // plain optimum is 1 here; the half-integral flow reaches at least half
    CHECK(2 * x.value() >= 1);
}
