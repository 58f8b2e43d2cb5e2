#pragma once

#include <optional>

#include "rrflow/flow_model.hpp"
#include "rrflow/lp.hpp"
#include "rrflow/rcut.hpp"

namespace rrflow {

// Size guards for the exponential reference implementations.
struct OracleBudget {
    std::size_t max_paths = 10000;
    std::size_t max_nodes = 12;
    std::size_t max_failure_sets = 5000;
};

// Path-formulation LP over all simple s-t paths and all rerouting paths,
// with the strict capacity sharing x(a) + x_bar(a) <= u(a). Exact optimum;
// the witness passes the strict verifier.
std::pair<Rational, PathFlow> oracle_max_srf_paths(const Network& net,
                                                   const OracleBudget& budget = {});

// Same formulation with the plain availability rule: paths that traverse the
// failing arc before a do not occupy a after the failure.
std::pair<Rational, PathFlow> oracle_max_rf(const Network& net,
                                            const OracleBudget& budget = {});

// k-failure variant: rerouting variables per (failure set, first failed arc)
// over surviving paths, interrupted-value equalities per scenario.
std::pair<Rational, PathFlow> oracle_max_k_rf(const Network& net, int k,
                                              const OracleBudget& budget = {});

// Exact minimum R-cut by depth-first search over arcs and their induced
// tail-to-sink cuts, pruned by the accumulated side-capacity term.
std::pair<RCut, Rational> oracle_min_rcut(const Network& net,
                                          const OracleBudget& budget = {});

// Full cut enumeration of the unit-capacity strictness criterion:
// sum_{a in delta+(S)} (1 - x(a)) >= 1 for every nonempty S not containing
// the sink with a nonempty induced cut.
bool oracle_strict_check_cuts(const Network& net, const PathFlow& x,
                              const OracleBudget& budget = {});

// First path (in enumeration order) whose unit flow is reroutable, if any.
std::optional<ArcPath> oracle_integral_unit_flow(const Network& net,
                                                 const OracleBudget& budget = {});

} // namespace rrflow
