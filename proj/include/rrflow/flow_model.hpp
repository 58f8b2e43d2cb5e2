#pragma once

#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "rrflow/maxflow.hpp"
#include "rrflow/network.hpp"

namespace rrflow {

// Flow on simple s-t paths, the primary object of the model. Entries with
// value 0 are allowed and ignored by most operations.
struct PathFlow {
    std::vector<std::pair<ArcPath, Rational>> entries;

    Rational value() const;
    bool empty() const { return entries.empty(); }
    // Checks path validity (simple s-t), nonnegative values, and arc
    // capacity feasibility; throws Error with the offending path or arc.
    void validate(const Network& net) const;
    PathFlow scaled(const Rational& factor) const;
};

struct ReroutingFlow {
    std::string failing_arc;
    std::vector<std::pair<ArcPath, Rational>> entries; // tail(failing)-t paths
    Rational value() const;
};

// Witness that the demanded rerouting value cannot be achieved: a
// tail(failing)-t cut in D - failing whose available capacity (= slack) is
// below the demand.
struct ViolatedCut {
    std::set<std::string> cut;
    Rational slack;
};

struct RerouteVerdict {
    bool strict = false;
    bool ok = false;
    std::map<std::string, ReroutingFlow> reroutings;
    std::map<std::string, ViolatedCut> violations;
};

struct FailureScenario {
    std::set<std::string> failed;
    std::map<std::string, Rational> interrupted; // per arc of `failed`
    Rational total() const;
};

struct KRerouteVerdict {
    bool strict = false;
    bool ok = false;
    int k = 0;
    std::size_t checked_sets = 0;
    struct Violation {
        std::set<std::string> failed;
        Rational demanded;
        Rational achievable;
    };
    std::vector<Violation> violations;
};

std::map<std::string, Rational> arc_flow_of(const Network& net, const PathFlow& x);

// u-bar after failure of `failing`: plain mode subtracts flow on paths using
// `a` that do not traverse `failing` strictly before `a`; strict mode
// subtracts all of x(a).
Rational available_capacity(const Network& net, const PathFlow& x,
                            const std::string& failing, const std::string& a,
                            bool strict);

// All per-arc available capacities after failure of `failing`, as a
// CapacityFunction usable in max flow calls (the failing arc itself should
// additionally be removed by the caller).
CapacityFunction rerouting_capacities(const Network& net, const PathFlow& x,
                                      const std::string& failing, bool strict);

std::variant<ReroutingFlow, ViolatedCut> find_rerouting(
    const Network& net, const PathFlow& x, const std::string& failing,
    const std::optional<Rational>& demand = std::nullopt, bool strict = false);

RerouteVerdict verify_reroutable(const Network& net, const PathFlow& x, bool strict);

FailureScenario interrupted_values(const Network& net, const PathFlow& x,
                                   const std::set<std::string>& failed);

// Checks rerouting feasibility for every failure set of size <= k with
// positive total interruption, via a super-source max flow per set (the
// per-arc reroutings share the post-failure capacities, so joint feasibility
// is a single flow problem). Throws BudgetExceeded when the number of
// failure sets exceeds max_sets.
KRerouteVerdict verify_k_reroutable(const Network& net, const PathFlow& x, int k,
                                    bool strict, std::size_t max_sets = 200000);

// Greedy decomposition of a conservative arc flow into at most |A| simple
// from-to paths; residual circulations are cancelled and discarded.
PathFlow path_decompose(const Network& net,
                        const std::map<std::string, Rational>& arc_flow,
                        const std::string& from, const std::string& to);

// Flow file format: one `f <value> <arc ids...>` line per path.
PathFlow parse_path_flow(std::istream& in, const Network& net);
PathFlow parse_path_flow(const std::string& text, const Network& net);
std::string write_path_flow(const PathFlow& x);
PathFlow read_flow_file(const std::string& path, const Network& net);

} // namespace rrflow
