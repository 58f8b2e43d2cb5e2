#include "rrflow/flow_model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rrflow {

Rational PathFlow::value() const {
    Rational v(0);
    for (const auto& [path, val] : entries)
        v += val;
    return v;
}

void PathFlow::validate(const Network& net) const {
    for (const auto& [path, val] : entries) {
        path.validate(net);
        if (path.first_tail(net) != net.source() || path.last_head(net) != net.sink())
            throw Error("flow path does not run from source to sink");
        if (val < 0)
            throw Error("negative flow value on a path");
    }
    auto flows = arc_flow_of(net, *this);
    for (const auto& [id, v] : flows)
        if (v > net.arc(id).capacity)
            throw Error("arc '" + id + "' overloaded: flow " + format_rational(v) +
                        " exceeds capacity " + format_rational(net.arc(id).capacity));
}

PathFlow PathFlow::scaled(const Rational& factor) const {
    PathFlow out;
    for (const auto& [path, val] : entries)
        out.entries.emplace_back(path, val * factor);
    return out;
}

Rational ReroutingFlow::value() const {
    Rational v(0);
    for (const auto& [path, val] : entries)
        v += val;
    return v;
}

Rational FailureScenario::total() const {
    Rational v(0);
    for (const auto& [arc, val] : interrupted)
        v += val;
    return v;
}

std::map<std::string, Rational> arc_flow_of(const Network& net, const PathFlow& x) {
    std::map<std::string, Rational> flows;
    for (const auto& [path, val] : x.entries)
        for (const std::string& a : path.arcs)
            flows[a] += val;
    return flows;
}

Rational available_capacity(const Network& net, const PathFlow& x,
                            const std::string& failing, const std::string& a,
                            bool strict) {
    if (a == failing)
        throw Error("available_capacity: arc equals the failing arc");
    Rational used(0);
    for (const auto& [path, val] : x.entries) {
        if (!path.contains(a))
            continue;
        if (!strict && path.precedes(failing, a))
            continue; // this flow is interrupted before reaching a
        used += val;
    }
    return net.arc(a).capacity - used;
}

CapacityFunction rerouting_capacities(const Network& net, const PathFlow& x,
                                      const std::string& failing, bool strict) {
    std::map<std::string, Rational> used;
    for (const auto& [path, val] : x.entries) {
        int fail_pos = strict ? -1 : path.position(failing);
        for (std::size_t i = 0; i < path.arcs.size(); ++i) {
            if (fail_pos >= 0 && static_cast<int>(i) > fail_pos)
                break; // flow never reaches arcs after the failure
            used[path.arcs[i]] += val;
        }
    }
    CapacityFunction cap;
    for (const auto& [id, v] : used)
        if (id != failing)
            cap.set(id, net.arc(id).capacity - v);
    return cap;
}

std::variant<ReroutingFlow, ViolatedCut> find_rerouting(
    const Network& net, const PathFlow& x, const std::string& failing,
    const std::optional<Rational>& demand, bool strict) {
    const Arc& bar = net.arc(failing);
    Rational need = demand ? *demand : arc_flow_of(net, x)[failing];
    if (need < 0)
        throw Error("negative rerouting demand");
    if (need == 0)
        return ReroutingFlow{failing, {}};

    CapacityFunction cap = rerouting_capacities(net, x, failing, strict);
    MaxFlowResult mf =
        max_flow(net, cap, bar.tail, net.sink(), {failing}, need);
    if (mf.value < need) {
        // With the target unreached, the run degenerated to a full max flow
        // and its residual cut is a valid witness.
        ViolatedCut vc;
        vc.slack = mf.value;
        for (const Arc& a : net.arcs()) {
            if (a.id == failing)
                continue;
            if (mf.min_cut_source_side.count(a.tail) &&
                !mf.min_cut_source_side.count(a.head))
                vc.cut.insert(a.id);
        }
        return vc;
    }
    PathFlow decomposed = path_decompose(net, mf.arc_flow, bar.tail, net.sink());
    ReroutingFlow rf{failing, std::move(decomposed.entries)};
    return rf;
}

RerouteVerdict verify_reroutable(const Network& net, const PathFlow& x, bool strict) {
    x.validate(net);
    auto flows = arc_flow_of(net, x);
    std::vector<std::string> targets;
    for (const Arc& a : net.arcs())
        if (flows.count(a.id) && flows[a.id] > 0)
            targets.push_back(a.id);

    std::vector<std::variant<ReroutingFlow, ViolatedCut>> results(targets.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < targets.size(); ++i)
        results[i] = find_rerouting(net, x, targets[i], flows[targets[i]], strict);

    RerouteVerdict verdict;
    verdict.strict = strict;
    verdict.ok = true;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (auto* rf = std::get_if<ReroutingFlow>(&results[i])) {
            verdict.reroutings[targets[i]] = *rf;
        } else {
            verdict.violations[targets[i]] = std::get<ViolatedCut>(results[i]);
            verdict.ok = false;
        }
    }
    return verdict;
}

FailureScenario interrupted_values(const Network& net, const PathFlow& x,
                                   const std::set<std::string>& failed) {
    if (failed.empty())
        throw Error("empty failure set");
    FailureScenario sc;
    sc.failed = failed;
    for (const std::string& id : failed) {
        net.arc(id);
        sc.interrupted[id] = 0;
    }
    for (const auto& [path, val] : x.entries) {
        for (const std::string& a : path.arcs) {
            if (failed.count(a)) {
                sc.interrupted[a] += val;
                break; // flow stops at the first failed arc it meets
            }
        }
    }
    return sc;
}

namespace {

// Capacities remaining for rerouting after failure of S: flow on a path is
// charged to every arc up to (and excluding arcs past) its first failed arc.
CapacityFunction multi_failure_capacities(const Network& net, const PathFlow& x,
                                          const std::set<std::string>& failed,
                                          bool strict) {
    std::map<std::string, Rational> used;
    for (const auto& [path, val] : x.entries) {
        std::size_t stop = path.arcs.size();
        if (!strict) {
            for (std::size_t i = 0; i < path.arcs.size(); ++i)
                if (failed.count(path.arcs[i])) {
                    stop = i + 1;
                    break;
                }
        }
        for (std::size_t i = 0; i < stop && i < path.arcs.size(); ++i)
            used[path.arcs[i]] += val;
    }
    CapacityFunction cap;
    for (const auto& [id, v] : used)
        if (!failed.count(id))
            cap.set(id, net.arc(id).capacity - v);
    return cap;
}

bool check_failure_set(const Network& net, const PathFlow& x,
                       const std::set<std::string>& failed, bool strict,
                       Rational& demanded, Rational& achievable) {
    FailureScenario sc = interrupted_values(net, x, failed);
    demanded = sc.total();
    achievable = demanded;
    if (demanded == 0)
        return true;

    Network aux;
    std::string sigma = "__sigma";
    while (net.has_node(sigma))
        sigma += "_";
    aux.add_node(sigma);
    for (const std::string& n : net.nodes())
        aux.add_node(n);
    aux.set_source(sigma);
    aux.set_sink(net.sink());
    for (const Arc& a : net.arcs())
        if (!failed.count(a.id))
            aux.add_arc(a.id, a.tail, a.head, a.capacity);
    CapacityFunction base = multi_failure_capacities(net, x, failed, strict);
    CapacityFunction cap;
    for (const Arc& a : net.arcs())
        if (!failed.count(a.id))
            cap.set(a.id, base(a));
    int supply = 0;
    for (const auto& [id, v] : sc.interrupted) {
        if (v == 0)
            continue;
        std::string sup = "__sup" + std::to_string(supply++);
        aux.add_arc(sup, sigma, net.arc(id).tail, v);
    }

    MaxFlowResult mf = max_flow(aux, cap, sigma, aux.sink());
    achievable = mf.value;
    return mf.value == demanded;
}

void enumerate_subsets(const std::vector<std::string>& ids, int k, std::size_t start,
                       std::set<std::string>& current,
                       std::vector<std::set<std::string>>& out, std::size_t max_sets) {
    if (!current.empty()) {
        if (out.size() >= max_sets)
            throw BudgetExceeded("more than " + std::to_string(max_sets) +
                                 " failure sets");
        out.push_back(current);
    }
    if (static_cast<int>(current.size()) == k)
        return;
    for (std::size_t i = start; i < ids.size(); ++i) {
        current.insert(ids[i]);
        enumerate_subsets(ids, k, i + 1, current, out, max_sets);
        current.erase(ids[i]);
    }
}

} // namespace

KRerouteVerdict verify_k_reroutable(const Network& net, const PathFlow& x, int k,
                                    bool strict, std::size_t max_sets) {
    if (k < 1)
        throw Error("k must be at least 1");
    x.validate(net);
    std::vector<std::string> ids;
    for (const Arc& a : net.arcs())
        ids.push_back(a.id);
    std::vector<std::set<std::string>> sets;
    std::set<std::string> current;
    enumerate_subsets(ids, k, 0, current, sets, max_sets);

    KRerouteVerdict verdict;
    verdict.strict = strict;
    verdict.k = k;
    verdict.checked_sets = sets.size();

    std::vector<char> failed_flags(sets.size(), 0);
    std::vector<std::pair<Rational, Rational>> amounts(sets.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < sets.size(); ++i) {
        Rational demanded, achievable;
        if (!check_failure_set(net, x, sets[i], strict, demanded, achievable))
            failed_flags[i] = 1;
        amounts[i] = {demanded, achievable};
    }
    verdict.ok = true;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (!failed_flags[i])
            continue;
        verdict.ok = false;
        verdict.violations.push_back(
            KRerouteVerdict::Violation{sets[i], amounts[i].first, amounts[i].second});
    }
    return verdict;
}

PathFlow path_decompose(const Network& net,
                        const std::map<std::string, Rational>& arc_flow,
                        const std::string& from, const std::string& to) {
    std::map<std::string, Rational> rem;
    for (const auto& [id, v] : arc_flow) {
        if (v < 0)
            throw Error("negative arc flow on '" + id + "'");
        if (v > 0) {
            net.arc(id);
            rem[id] = v;
        }
    }
    // Conservation check at interior nodes.
    std::map<std::string, Rational> balance;
    for (const auto& [id, v] : rem) {
        const Arc& a = net.arc(id);
        balance[a.tail] += v;
        balance[a.head] -= v;
    }
    for (const auto& [node, b] : balance)
        if (node != from && node != to && b != 0)
            throw Error("flow conservation violated at node '" + node + "'");

    // Out-adjacency in arc-id order for deterministic traversal.
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& [id, v] : rem)
        out[net.arc(id).tail].push_back(id);
    for (auto& [node, list] : out)
        std::sort(list.begin(), list.end());

    auto first_positive = [&](const std::string& v) -> const std::string* {
        auto it = out.find(v);
        if (it == out.end())
            return nullptr;
        for (const std::string& id : it->second)
            if (rem[id] > 0)
                return &id;
        return nullptr;
    };

    PathFlow result;
    for (;;) {
        std::vector<std::string> walk_arcs;
        std::map<std::string, int> seen{{from, 0}};
        std::string v = from;
        bool progressed = true;
        while (v != to) {
            const std::string* next = first_positive(v);
            if (!next) {
                if (v == from) {
                    progressed = false;
                    break;
                }
                throw Error("path_decompose internal error: stuck at '" + v + "'");
            }
            const Arc& a = net.arc(*next);
            walk_arcs.push_back(a.id);
            v = a.head;
            auto it = seen.find(v);
            if (it != seen.end()) {
                // Cancel the circulation and restart the walk.
                Rational eps = rem[walk_arcs[it->second]];
                for (std::size_t i = it->second; i < walk_arcs.size(); ++i)
                    eps = std::min(eps, rem[walk_arcs[i]]);
                for (std::size_t i = it->second; i < walk_arcs.size(); ++i)
                    rem[walk_arcs[i]] -= eps;
                walk_arcs.clear();
                seen = {{from, 0}};
                v = from;
                continue;
            }
            seen[v] = static_cast<int>(walk_arcs.size());
        }
        if (!progressed)
            break;
        Rational eps = rem[walk_arcs[0]];
        for (const std::string& id : walk_arcs)
            eps = std::min(eps, rem[id]);
        for (const std::string& id : walk_arcs)
            rem[id] -= eps;
        result.entries.emplace_back(ArcPath{walk_arcs}, eps);
    }
    return result;
}

PathFlow parse_path_flow(std::istream& in, const Network& net) {
    PathFlow x;
    int line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream iss(line);
        std::string kind;
        if (!(iss >> kind))
            continue;
        if (kind != "f")
            throw Error("line " + std::to_string(line_no) + ": expected 'f' line");
        std::string value_tok;
        if (!(iss >> value_tok))
            throw Error("line " + std::to_string(line_no) + ": missing flow value");
        ArcPath path;
        std::string arc_id;
        while (iss >> arc_id)
            path.arcs.push_back(arc_id);
        if (path.arcs.empty())
            throw Error("line " + std::to_string(line_no) + ": empty path");
        x.entries.emplace_back(std::move(path), parse_rational(value_tok));
    }
    x.validate(net);
    return x;
}

PathFlow parse_path_flow(const std::string& text, const Network& net) {
    std::istringstream iss(text);
    return parse_path_flow(iss, net);
}

std::string write_path_flow(const PathFlow& x) {
    std::ostringstream out;
    for (const auto& [path, val] : x.entries) {
        out << "f " << format_rational(val);
        for (const std::string& id : path.arcs)
            out << " " << id;
        out << "\n";
    }
    return out.str();
}

PathFlow read_flow_file(const std::string& path, const Network& net) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open flow file '" + path + "'");
    try {
        return parse_path_flow(in, net);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

} // namespace rrflow
