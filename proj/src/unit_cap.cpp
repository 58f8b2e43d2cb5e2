#include "rrflow/unit_cap.hpp"

#include <algorithm>

namespace rrflow {

namespace {

void require_unit(const Network& net) {
    for (const Arc& a : net.arcs())
        if (a.capacity != 1)
            throw Error("arc '" + a.id + "' has capacity " +
                        format_rational(a.capacity) + ", expected 1");
}

std::set<std::string> bridges_without(const Network& net,
                                      const std::set<std::string>& removed) {
    std::set<std::string> result;
    if (is_cut(net, removed, net.source(), net.sink()))
        return result;
    for (const Arc& a : net.arcs()) {
        if (removed.count(a.id))
            continue;
        std::set<std::string> plus = removed;
        plus.insert(a.id);
        if (is_cut(net, plus, net.source(), net.sink()))
            result.insert(a.id);
    }
    return result;
}

} // namespace

UnitDemandOutcome unit_demand_half_integral(const Network& net) {
    require_unit(net);
    net.validate();
    std::set<std::string> a0;
    std::set<std::string> a1;
    for (;;) {
        bool grew = false;
        for (const Arc& a : net.arcs()) {
            if (a0.count(a.id))
                continue;
            std::set<std::string> candidate = a1;
            candidate.insert(a.id);
            if (is_cut(net, candidate, a.tail, net.sink())) {
                a0.insert(a.id);
                a1 = bridges_without(net, a0);
                grew = true;
                break;
            }
        }
        if (!grew)
            break;
    }

    UnitDemandOutcome outcome;
    if (is_cut(net, a0, net.source(), net.sink())) {
        outcome.feasible = false;
        outcome.certificate = a0;
        return outcome;
    }

    // Two s-t paths meeting exactly at the bridges: a 2-unit flow where
    // bridges may carry both units.
    CapacityFunction cap;
    for (const Arc& a : net.arcs())
        if (a1.count(a.id))
            cap.set(a.id, Rational(2));
    MaxFlowResult mf = max_flow(net, cap, net.source(), net.sink(), a0, Rational(2));
    if (mf.value != 2)
        throw Error("internal error: expected a 2-unit flow past the retired arcs");
    // the integral 2-unit flow splits into two unit paths, or one value-2
    // path when both units ride the same bridge-only route
    PathFlow two = path_decompose(net, mf.arc_flow, net.source(), net.sink());
    if (two.value() != 2)
        throw Error("internal error: decomposition lost flow value");
    outcome.feasible = true;
    for (auto& [path, val] : two.entries) {
        if (!is_integer(val))
            throw Error("internal error: fractional path in unit-demand flow");
        outcome.flow.entries.emplace_back(path, val / 2);
    }
    return outcome;
}

std::optional<std::pair<std::string, std::set<std::string>>> strict_violation_cut(
    const Network& net, const PathFlow& x) {
    require_unit(net);
    x.validate(net);
    auto flows = arc_flow_of(net, x);
    for (const Arc& a : net.arcs()) {
        auto it = flows.find(a.id);
        if (it == flows.end() || it->second == 0)
            continue;
        auto result = find_rerouting(net, x, a.id, it->second, true);
        if (auto* vc = std::get_if<ViolatedCut>(&result)) {
            std::set<std::string> cut = vc->cut;
            cut.insert(a.id);
            return std::make_pair(a.id, std::move(cut));
        }
    }
    return std::nullopt;
}

std::optional<BadCutReport> is_bad_cut(const Network& net, const PathFlow& x,
                                       const std::set<std::string>& S,
                                       std::vector<std::string>* non_bad) {
    for (const std::string& v : S)
        if (!net.has_node(v))
            throw Error("unknown node '" + v + "' in S");
    if (S.count(net.sink()))
        throw Error("S must not contain the sink");
    std::set<std::string> cut;
    for (const Arc& a : net.arcs())
        if (S.count(a.tail) && !S.count(a.head))
            cut.insert(a.id);
    if (cut.empty())
        throw Error("S induces an empty cut");

    BadCutReport report;
    report.S = S;
    report.cut = cut;
    bool bad = true;
    for (const std::string& bar : cut) {
        bool found = false;
        for (std::size_t i = 0; i < x.entries.size() && !found; ++i) {
            const auto& [path, val] = x.entries[i];
            if (val == 0)
                continue;
            int p = path.position(bar);
            if (p < 0)
                continue;
            for (std::size_t q = p + 1; q < path.arcs.size(); ++q) {
                if (cut.count(path.arcs[q])) {
                    report.witnesses[bar] = {path.arcs[q], i};
                    found = true;
                    break;
                }
            }
        }
        if (!found) {
            bad = false;
            if (non_bad)
                non_bad->push_back(bar);
            else
                break;
        }
    }
    if (!bad)
        return std::nullopt;
    return report;
}

std::optional<BadCutReport> rightmost_bad_cut(const Network& net, const PathFlow& x,
                                              std::size_t node_budget) {
    std::vector<std::string> candidates;
    for (const std::string& v : net.nodes())
        if (v != net.sink())
            candidates.push_back(v);
    if (candidates.size() > node_budget)
        throw BudgetExceeded("node count " + std::to_string(candidates.size()) +
                             " exceeds enumeration budget " +
                             std::to_string(node_budget));

    std::set<std::string> star;
    std::uint64_t limit = std::uint64_t(1) << candidates.size();
    for (std::uint64_t mask = 1; mask < limit; ++mask) {
        std::set<std::string> S;
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (mask & (std::uint64_t(1) << i))
                S.insert(candidates[i]);
        bool has_out = false;
        for (const Arc& a : net.arcs())
            if (S.count(a.tail) && !S.count(a.head)) {
                has_out = true;
                break;
            }
        if (!has_out)
            continue;
        if (is_bad_cut(net, x, S))
            star.insert(S.begin(), S.end());
    }
    if (star.empty())
        return std::nullopt;
    auto report = is_bad_cut(net, x, star);
    if (!report)
        throw Error("internal error: union of bad-cut sets is not bad");
    return report;
}

namespace {

// Simple path from a walk: whenever the walk returns to an earlier node, the
// enclosed sub-walk is dropped.
ArcPath simplify_walk(const Network& net, const std::vector<std::string>& walk) {
    std::vector<std::string> nodes{net.arc(walk.front()).tail};
    std::vector<std::string> arcs;
    for (const std::string& id : walk) {
        const Arc& a = net.arc(id);
        auto it = std::find(nodes.begin(), nodes.end(), a.head);
        if (it != nodes.end()) {
            std::size_t keep = static_cast<std::size_t>(it - nodes.begin());
            arcs.resize(keep);
            nodes.resize(keep + 1);
        } else {
            arcs.push_back(id);
            nodes.push_back(a.head);
        }
    }
    return ArcPath{arcs};
}

} // namespace

std::pair<PathFlow, UncrossCertificate> uncross_step(const Network& net,
                                                     const PathFlow& x,
                                                     const BadCutReport& report) {
    auto checked = is_bad_cut(net, x, report.S);
    if (!checked)
        throw Error("report does not describe an x-bad cut");
    const std::set<std::string>& cstar = checked->cut;

    // Crossing-pattern graph H on the cut arcs: bar -> a when some support
    // path traverses bar and later has a as its last cut arc.
    std::map<std::string, std::pair<std::string, std::size_t>> succ;
    for (const std::string& bar : cstar) {
        for (std::size_t i = 0; i < x.entries.size(); ++i) {
            const auto& [path, val] = x.entries[i];
            if (val == 0)
                continue;
            int p = path.position(bar);
            if (p < 0)
                continue;
            int last = -1;
            for (std::size_t q = 0; q < path.arcs.size(); ++q)
                if (cstar.count(path.arcs[q]))
                    last = static_cast<int>(q);
            if (last > p) {
                succ[bar] = {path.arcs[last], i};
                break;
            }
        }
        if (!succ.count(bar))
            throw Error("internal error: bad-cut arc without crossing witness");
    }

    // Walk successor pointers until an arc repeats; that closes the cycle.
    std::vector<std::string> order;
    std::map<std::string, int> pos;
    std::string cur = *cstar.begin();
    while (!pos.count(cur)) {
        pos[cur] = static_cast<int>(order.size());
        order.push_back(cur);
        cur = succ[cur].first;
    }
    std::vector<std::string> cycle(order.begin() + pos[cur], order.end());
    std::size_t k = cycle.size();

    // P_i is the witness for the H-arc entering a_i, i.e. the path on which
    // a_i is the last crossing.
    std::vector<std::size_t> path_idx(k);
    for (std::size_t i = 0; i < k; ++i)
        path_idx[(i + 1) % k] = succ[cycle[i]].second;
    std::set<std::size_t> distinct(path_idx.begin(), path_idx.end());
    if (distinct.size() != k)
        throw Error("internal error: cycle paths are not distinct");

    Rational eps = x.entries[path_idx[0]].second;
    for (std::size_t i = 1; i < k; ++i)
        eps = std::min(eps, x.entries[path_idx[i]].second);
    if (eps <= 0)
        throw Error("internal error: nonpositive uncrossing step");

    // P'_i = P_{i+1} x_{a_i} P_i.
    std::vector<ArcPath> new_paths(k);
    for (std::size_t i = 0; i < k; ++i) {
        const ArcPath& pi = x.entries[path_idx[i]].first;
        const ArcPath& pnext = x.entries[path_idx[(i + 1) % k]].first;
        int cut_pos_next = pnext.position(cycle[i]);
        int cut_pos = pi.position(cycle[i]);
        if (cut_pos_next < 0 || cut_pos < 0)
            throw Error("internal error: splice arc missing from cycle path");
        std::vector<std::string> walk(pnext.arcs.begin(),
                                      pnext.arcs.begin() + cut_pos_next + 1);
        walk.insert(walk.end(), pi.arcs.begin() + cut_pos + 1, pi.arcs.end());
        new_paths[i] = simplify_walk(net, walk);
        new_paths[i].validate(net);
    }

    PathFlow result = x;
    for (std::size_t i = 0; i < k; ++i)
        result.entries[path_idx[i]].second -= eps;
    for (const ArcPath& np : new_paths) {
        bool merged = false;
        for (auto& [path, val] : result.entries)
            if (path == np) {
                val += eps;
                merged = true;
                break;
            }
        if (!merged)
            result.entries.emplace_back(np, eps);
    }
    result.entries.erase(
        std::remove_if(result.entries.begin(), result.entries.end(),
                       [](const auto& e) { return e.second == 0; }),
        result.entries.end());

    if (result.value() != x.value())
        throw Error("internal error: uncrossing changed the flow value");
    auto before = arc_flow_of(net, x);
    auto after = arc_flow_of(net, result);
    Rational total_before(0), total_after(0);
    for (const auto& [id, v] : before)
        total_before += v;
    for (const auto& [id, v] : after) {
        total_after += v;
        auto it = before.find(id);
        if (it == before.end() ? v > 0 : v > it->second)
            throw Error("internal error: uncrossing increased flow on '" + id + "'");
    }
    if (total_after >= total_before)
        throw Error("internal error: total arc flow did not decrease");

    UncrossCertificate cert;
    cert.cstar = *checked;
    cert.cycle_arcs = cycle;
    for (std::size_t i = 0; i < k; ++i)
        cert.cycle_paths.push_back(x.entries[path_idx[i]].first);
    cert.epsilon = eps;
    cert.new_paths = new_paths;
    return {std::move(result), std::move(cert)};
}

PathFlow make_strict(const Network& net, const PathFlow& x,
                     std::size_t node_budget) {
    require_unit(net);
    if (!verify_reroutable(net, x, false).ok)
        throw Error("make_strict requires a reroutable input flow");
    PathFlow cur;
    for (const auto& [path, val] : x.entries)
        if (val > 0)
            cur.entries.emplace_back(path, val);

    const std::size_t iteration_cap = 10000;
    for (std::size_t iter = 0; iter < iteration_cap; ++iter) {
        if (!strict_violation_cut(net, cur))
            return cur;
        auto report = rightmost_bad_cut(net, cur, node_budget);
        if (!report)
            throw Error("internal error: strictness violated but no bad cut found");
        cur = uncross_step(net, cur, *report).first;
    }
    throw Error("make_strict exceeded its iteration cap");
}

} // namespace rrflow
