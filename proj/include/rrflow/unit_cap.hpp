#pragma once

#include <optional>

#include "rrflow/flow_model.hpp"

namespace rrflow {

struct UnitDemandOutcome {
    bool feasible = false;
    PathFlow flow;                     // two paths of value 1/2 when feasible
    std::set<std::string> certificate; // the final A_0, an s-t cut otherwise
};

// Half-integral unit-demand algorithm: iteratively retire arcs whose failure
// could not be rerouted past the current bridges, then route one unit along
// two paths meeting only at the bridges.
UnitDemandOutcome unit_demand_half_integral(const Network& net);

// Lemma 4 witness: an arc with positive flow and a tail-to-sink cut C
// containing it with sum_{a in C} (1 - x(a)) < 1, or nullopt when x is
// strictly reroutable. Unit capacities only.
std::optional<std::pair<std::string, std::set<std::string>>> strict_violation_cut(
    const Network& net, const PathFlow& x);

struct BadCutReport {
    std::set<std::string> S;
    std::set<std::string> cut; // delta-plus of S
    // failing arc -> (later cut arc on the same path, witness entry index)
    std::map<std::string, std::pair<std::string, std::size_t>> witnesses;
};

// Reports the cut induced by S as x-bad, or nullopt; arcs lacking a badness
// witness are appended to non_bad when provided.
std::optional<BadCutReport> is_bad_cut(const Network& net, const PathFlow& x,
                                       const std::set<std::string>& S,
                                       std::vector<std::string>* non_bad = nullptr);

// Union of all node sets inducing x-bad cuts (the rightmost bad cut), found
// by subset enumeration over V minus the sink. Throws BudgetExceeded when
// the node count exceeds node_budget.
std::optional<BadCutReport> rightmost_bad_cut(const Network& net, const PathFlow& x,
                                              std::size_t node_budget = 20);

struct UncrossCertificate {
    BadCutReport cstar;
    std::vector<std::string> cycle_arcs;
    std::vector<ArcPath> cycle_paths;
    Rational epsilon;
    std::vector<ArcPath> new_paths;
};

// One uncrossing round on the given bad cut: find a cycle in the
// crossing-pattern graph H, splice its paths, and shift epsilon flow. The
// result has equal value, arc-wise no larger flow, and strictly smaller
// total arc flow.
std::pair<PathFlow, UncrossCertificate> uncross_step(const Network& net,
                                                     const PathFlow& x,
                                                     const BadCutReport& report);

// Repeated uncrossing until strictly reroutable; input must be reroutable
// and capacities all 1.
PathFlow make_strict(const Network& net, const PathFlow& x,
                     std::size_t node_budget = 20);

} // namespace rrflow
