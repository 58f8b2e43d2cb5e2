#pragma once

#include "rrflow/flow_model.hpp"

namespace rrflow {

// Arc set R plus one tail(a)-t cut per a in R.
struct RCut {
    std::set<std::string> R;
    std::map<std::string, std::set<std::string>> cuts; // a -> C_a

    // Checks that cuts has exactly the keys R, each C_a contains a and
    // separates tail(a) from the sink; throws with the offending arc.
    void validate(const Network& net) const;
    std::set<std::string> removed_union() const;
};

Rational rcut_capacity(const Network& net, const RCut& rc);

// Lemma 2: val(x) <= capacity(R, C) for any reroutable flow.
bool verify_upper_bound(const Network& net, const RCut& rc, const PathFlow& x);

struct RCutApproximation {
    RCut rcut;
    Rational capacity;
    PathFlow witness; // strictly reroutable, value >= capacity / 2
};

// Constructive 2-approximation for Min R-Cut: clamp each arc to the cheapest
// tail(a)-t cut through it, take a min s-t cut under the clamped capacities,
// and halve a corresponding max flow as the witness.
RCutApproximation approx_min_rcut(const Network& net);

// Half-integral strictly reroutable flow of value >= OPT_RF / 2 for
// integral capacities (the approx_min_rcut witness with an integral max
// flow underneath).
PathFlow half_integral_approx_flow(const Network& net);

struct DualSolution {
    std::map<std::pair<std::string, std::string>, Rational> y; // (failing, a)
    std::map<std::string, Rational> z;

    Rational objective(const Network& net) const;
};

// The integral dual solution corresponding to an R-cut; feasibility is
// re-verified by shortest-path separation before returning.
DualSolution rcut_to_dual(const Network& net, const RCut& rc);

// R-cut file format: one `R <arcs...>` line, then `C <a> <arcs...>` lines.
RCut parse_rcut(std::istream& in, const Network& net);
RCut parse_rcut(const std::string& text, const Network& net);
std::string write_rcut(const RCut& rc);
RCut read_rcut_file(const std::string& path, const Network& net);

} // namespace rrflow
