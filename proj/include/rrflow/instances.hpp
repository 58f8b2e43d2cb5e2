#pragma once

#include <cstdint>
#include <optional>

#include "rrflow/network.hpp"

namespace rrflow {

// Forbidden-pairs path instance: digraph with source s', sink t', and a set
// of unordered forbidden arc pairs. Sought is an s'-t' path using at most
// one arc of each pair.
struct ForbiddenPairsInstance {
    Network net;
    std::vector<std::pair<std::string, std::string>> pairs;

    void validate() const;
    // The reductions' three structural assumptions: pairwise disjoint pairs,
    // each pair arc the unique out-arc of its tail, no pair arc's head equal
    // to a pair arc's tail.
    bool normalized() const;
};

// Enforces the three assumptions by subdividing arcs; path feasibility is
// preserved.
ForbiddenPairsInstance normalize_fp(const ForbiddenPairsInstance& inst);

// Length-2 v-w path through a fresh intermediate node, capacities equal to
// the current maximum arc capacity. Such arcs can never carry nominal
// reroutable flow. bidirected adds the w-v link as well.
Network add_backup_link(const Network& net, const std::string& v,
                        const std::string& w, bool bidirected);

// The two-gap example: path a1,a2,a3 with a bidirected backup link between s
// and tail(a3) and a backup link from tail(a2) to t. a1_capacity must be 1
// or 2.
Network gen_fig2(const Rational& a1_capacity);

// The fractional-optimum family: arc (s,v), k s-v paths and k v-t paths of
// k intermediate nodes each, bidirected backup links pairing intermediate j
// of s-v path i with intermediate i of v-t path j. Unit capacities, k >= 3.
Network gen_fig3(int k);

// Capacity-{1,2} reduction: segment gadgets g_i,h_i and barred twins behind
// t', arc (s,t'), backup links to t for all safe nodes, four backup links
// around each pair, pair arcs at capacity 2.
Network reduce_fp_cap12(const ForbiddenPairsInstance& inst);

// Unit-capacity reduction for integral value-1 flows: backup links between
// the two pair-arc tails of each pair, backup links to t elsewhere.
Network reduce_fp_integral(const ForbiddenPairsInstance& inst);

// Unit-capacity reduction for k=2 failures: doubled segment gadgets in front
// of s', 2-backup links (two parallel backup links), and the extra length-6
// s'-t' path with its triangle of 2-backup links.
Network reduce_fp_k2(const ForbiddenPairsInstance& inst);

// First enumerated s'-t' path avoiding all pairs, if any.
std::optional<ArcPath> solve_fp_bruteforce(const ForbiddenPairsInstance& inst,
                                           std::size_t max_paths = 100000);

// Seeded random digraph on `nodes` nodes and `arcs` arcs (tail != head,
// capacities drawn from cap_choices); first node is the source, last the
// sink. Connectivity is not guaranteed.
Network gen_random(int nodes, int arcs, const std::vector<Rational>& cap_choices,
                   std::uint64_t seed);

// Forbidden-pairs file format: a network file plus `pair <arc> <arc>` lines.
ForbiddenPairsInstance parse_fp(std::istream& in);
ForbiddenPairsInstance parse_fp(const std::string& text);
std::string write_fp(const ForbiddenPairsInstance& inst);
ForbiddenPairsInstance read_fp_file(const std::string& path);

} // namespace rrflow
