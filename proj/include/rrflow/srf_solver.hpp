#pragma once

#include "rrflow/flow_model.hpp"
#include "rrflow/lp.hpp"

namespace rrflow {

struct SrfSolution {
    Rational value;
    PathFlow nominal;
    std::map<std::string, ReroutingFlow> reroutings; // strict, per failing arc
};

// The compact arc-flow LP: variables x(a) and y_failing(a), conservation for
// x at interior nodes, conservation for each rerouting flow except at the
// failing arc's tail (where its net outflow must equal x(failing)) and the
// sink, and coupling x(a) + y_failing(a) <= u(a).
LinearProgram build_compact_srf_lp(const Network& net);

// Exact maximum strictly reroutable flow. Solved by cut generation on the
// arc-flow projection: a candidate x is feasible iff for every failing arc
// the max flow from its tail to t under capacities u - x covers x(failing);
// each violated failure contributes a cut inequality
// x(failing) + sum_{a in C} x(a) <= u(C). This reaches the same optimum as
// the compact LP while keeping the tableau at O(|A|) columns.
SrfSolution solve_max_srf(const Network& net, int threads = 1);

struct RfApproximation {
    PathFlow flow;
    Rational value;
    std::string guarantee; // "OPT_RF <= 2*value"
};

// Lemma-based 2-approximation for Max RF: the maximum strictly reroutable
// flow is reroutable and at least half the reroutable optimum.
RfApproximation approx_max_rf(const Network& net, int threads = 1);

} // namespace rrflow
