#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "rrflow/rational.hpp"

namespace rrflow {

struct Arc {
    std::string id;
    std::string tail;
    std::string head;
    Rational capacity;
};

// Directed multigraph with a designated source and sink. Parallel arcs are
// permitted; nodes and arcs are identified by opaque string ids. Treated as
// immutable once built; all queries below are pure.
class Network {
public:
    Network() = default;

    void add_node(const std::string& id);
    void add_arc(const std::string& id, const std::string& tail,
                 const std::string& head, const Rational& capacity);
    void set_source(const std::string& id) { source_ = id; }
    void set_sink(const std::string& id) { sink_ = id; }

    // Checks all structural invariants; throws Error on violation.
    void validate() const;

    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const std::string& source() const { return source_; }
    const std::string& sink() const { return sink_; }

    bool has_node(const std::string& id) const { return node_index_.count(id) > 0; }
    bool has_arc(const std::string& id) const { return arc_index_.count(id) > 0; }
    const Arc& arc(const std::string& id) const;
    int arc_index(const std::string& id) const;
    const Rational& max_capacity() const;

    bool operator==(const Network& other) const;

private:
    std::vector<std::string> nodes_;
    std::unordered_map<std::string, int> node_index_;
    std::vector<Arc> arcs_;
    std::unordered_map<std::string, int> arc_index_;
    std::string source_;
    std::string sink_;
};

// Simple path recorded as an ordered arc-id sequence. Arc ids rather than
// nodes, since parallel arcs make node sequences ambiguous.
struct ArcPath {
    std::vector<std::string> arcs;

    bool operator==(const ArcPath& other) const { return arcs == other.arcs; }
    bool operator<(const ArcPath& other) const { return arcs < other.arcs; }
    bool empty() const { return arcs.empty(); }
    bool contains(const std::string& arc_id) const;
    // Position of an arc on the path, -1 if absent.
    int position(const std::string& arc_id) const;
    // True iff `earlier` is traversed strictly before `later`.
    bool precedes(const std::string& earlier, const std::string& later) const;

    // Checks the chain/simplicity invariants against a network; throws on
    // violation. Empty paths are rejected.
    void validate(const Network& net) const;
    const std::string& first_tail(const Network& net) const;
    const std::string& last_head(const Network& net) const;
};

// Instance file format (see README): `p rrf <nodes> <arcs>`, `n <id>
// [source|sink]`, `a <id> <tail> <head> <cap>`, `#` comments.
Network parse_network(std::istream& in);
Network parse_network(const std::string& text);
std::string write_network(const Network& net);

Network read_network_file(const std::string& path);

// All nodes reachable from `from` when the arcs in `removed` (indices into
// net.arcs()) are deleted.
std::set<std::string> reachable_nodes(const Network& net, const std::string& from,
                                      const std::set<std::string>& removed_arcs = {});

// True iff every from-to path intersects `arcs`.
bool is_cut(const Network& net, const std::set<std::string>& arcs,
            const std::string& from, const std::string& to);

// Arcs whose individual removal disconnects source from sink; empty when the
// two are already disconnected.
std::set<std::string> st_bridges(const Network& net);

// All simple from-to paths in lexicographic arc-id order. Throws
// BudgetExceeded when more than `limit` paths exist.
std::vector<ArcPath> enumerate_simple_paths(const Network& net, const std::string& from,
                                            const std::string& to,
                                            std::size_t limit = 100000);

} // namespace rrflow
