#include "rrflow/maxflow.hpp"

#include <queue>
#include <vector>

namespace rrflow {

namespace {

struct Edge {
    int to;          // node index
    int pair;        // index of the reverse edge
    Rational cap;    // residual capacity
    int arc;         // original arc index, -1 for reverse edges
};

} // namespace

MaxFlowResult max_flow(const Network& net, const CapacityFunction& cap,
                       const std::string& from, const std::string& to,
                       const std::set<std::string>& removed,
                       const std::optional<Rational>& target) {
    if (from == to)
        throw Error("max_flow: from equals to");
    std::map<std::string, int> node_idx;
    for (const std::string& n : net.nodes())
        node_idx[n] = static_cast<int>(node_idx.size());
    int n = static_cast<int>(node_idx.size());
    std::vector<std::vector<int>> adj(n);
    std::vector<Edge> edges;
    for (int ai = 0; ai < static_cast<int>(net.arcs().size()); ++ai) {
        const Arc& a = net.arcs()[ai];
        if (removed.count(a.id))
            continue;
        int u = node_idx.at(a.tail);
        int v = node_idx.at(a.head);
        int fwd = static_cast<int>(edges.size());
        edges.push_back(Edge{v, fwd + 1, cap(a), ai});
        edges.push_back(Edge{u, fwd, Rational(0), -1});
        adj[u].push_back(fwd);
        adj[v].push_back(fwd + 1);
    }
    int s = node_idx.at(from);
    int t = node_idx.at(to);

    Rational value(0);
    std::vector<int> prev_edge(n);
    while (!target || value < *target) {
        // BFS shortest augmenting path; deterministic edge order.
        std::fill(prev_edge.begin(), prev_edge.end(), -1);
        std::queue<int> q;
        q.push(s);
        std::vector<char> seen(n, 0);
        seen[s] = 1;
        while (!q.empty() && !seen[t]) {
            int v = q.front();
            q.pop();
            for (int ei : adj[v]) {
                const Edge& e = edges[ei];
                if (e.cap == 0 || seen[e.to])
                    continue;
                seen[e.to] = 1;
                prev_edge[e.to] = ei;
                q.push(e.to);
            }
        }
        if (!seen[t])
            break;
        Rational bottleneck;
        bool first = true;
        for (int v = t; v != s;) {
            const Edge& e = edges[prev_edge[v]];
            if (first || e.cap < bottleneck) {
                bottleneck = e.cap;
                first = false;
            }
            v = edges[e.pair].to;
        }
        if (target && value + bottleneck > *target)
            bottleneck = *target - value;
        for (int v = t; v != s;) {
            Edge& e = edges[prev_edge[v]];
            e.cap -= bottleneck;
            edges[e.pair].cap += bottleneck;
            v = edges[e.pair].to;
        }
        value += bottleneck;
    }

    MaxFlowResult result;
    result.value = value;
    for (std::size_t ei = 0; ei < edges.size(); ei += 2) {
        const Edge& rev = edges[ei + 1];
        if (rev.cap > 0)
            result.arc_flow[net.arcs()[edges[ei].arc].id] = rev.cap;
    }
    // Residual-reachable source side.
    std::vector<char> seen(n, 0);
    seen[s] = 1;
    std::vector<int> stack{s};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int ei : adj[v]) {
            const Edge& e = edges[ei];
            if (e.cap > 0 && !seen[e.to]) {
                seen[e.to] = 1;
                stack.push_back(e.to);
            }
        }
    }
    for (const auto& [name, idx] : node_idx)
        if (seen[idx])
            result.min_cut_source_side.insert(name);

    if (!target) {
        // Weak duality sanity check: flow value must equal the capacity of
        // the canonical cut.
        Rational cut_cap(0);
        for (const Arc& a : net.arcs()) {
            if (removed.count(a.id))
                continue;
            if (result.min_cut_source_side.count(a.tail) &&
                !result.min_cut_source_side.count(a.head))
                cut_cap += cap(a);
        }
        if (cut_cap != value)
            throw Error("max_flow internal error: flow value " + format_rational(value) +
                        " != cut capacity " + format_rational(cut_cap));
    }
    return result;
}

std::pair<std::set<std::string>, Rational> min_cut(
    const Network& net, const CapacityFunction& cap, const std::string& from,
    const std::string& to, const std::set<std::string>& removed) {
    MaxFlowResult mf = max_flow(net, cap, from, to, removed);
    std::set<std::string> arcs;
    for (const Arc& a : net.arcs()) {
        if (removed.count(a.id))
            continue;
        if (mf.min_cut_source_side.count(a.tail) && !mf.min_cut_source_side.count(a.head))
            arcs.insert(a.id);
    }
    return {arcs, mf.value};
}

} // namespace rrflow
