#include "rrflow/rcut.hpp"

#include <fstream>
#include <sstream>

namespace rrflow {

void RCut::validate(const Network& net) const {
    for (const auto& [a, cut] : cuts)
        if (!R.count(a))
            throw Error("cut given for arc '" + a + "' not in R");
    for (const std::string& a : R) {
        auto it = cuts.find(a);
        if (it == cuts.end())
            throw Error("missing cut for arc '" + a + "'");
        const std::set<std::string>& cut = it->second;
        if (!cut.count(a))
            throw Error("C_a for arc '" + a + "' does not contain it");
        for (const std::string& id : cut)
            net.arc(id);
        if (!is_cut(net, cut, net.arc(a).tail, net.sink()))
            throw Error("C_a for arc '" + a + "' is not a tail-to-sink cut");
    }
}

std::set<std::string> RCut::removed_union() const {
    std::set<std::string> all;
    for (const auto& [a, cut] : cuts)
        all.insert(cut.begin(), cut.end());
    return all;
}

Rational rcut_capacity(const Network& net, const RCut& rc) {
    rc.validate(net);
    CapacityFunction cap;
    Rational phi =
        max_flow(net, cap, net.source(), net.sink(), rc.removed_union()).value;
    Rational total = phi;
    for (const std::string& a : rc.R)
        for (const std::string& id : rc.cuts.at(a))
            if (id != a)
                total += net.arc(id).capacity;
    return total;
}

bool verify_upper_bound(const Network& net, const RCut& rc, const PathFlow& x) {
    return x.value() <= rcut_capacity(net, rc);
}

namespace {

struct ClampResult {
    std::map<std::string, std::set<std::string>> tail_cuts; // a -> C_a
    CapacityFunction clamped;                               // u'
    std::map<std::string, Rational> uprime;
};

ClampResult clamp_capacities(const Network& net) {
    ClampResult res;
    for (const Arc& a : net.arcs()) {
        std::set<std::string> ca{a.id};
        Rational rest;
        if (a.tail == net.sink()) {
            rest = a.capacity; // never on an s-t path; keep it unclamped
        } else {
            auto [cut_arcs, cut_value] =
                min_cut(net, CapacityFunction(), a.tail, net.sink(), {a.id});
            ca.insert(cut_arcs.begin(), cut_arcs.end());
            rest = cut_value;
        }
        res.tail_cuts[a.id] = std::move(ca);
        Rational up = std::min(a.capacity, rest);
        res.uprime[a.id] = up;
        res.clamped.set(a.id, up);
    }
    return res;
}

RCutApproximation approx_min_rcut_impl(const Network& net) {
    net.validate();
    ClampResult clamp = clamp_capacities(net);
    MaxFlowResult mf =
        max_flow(net, clamp.clamped, net.source(), net.sink());

    RCutApproximation res;
    for (const Arc& a : net.arcs()) {
        bool in_cprime = mf.min_cut_source_side.count(a.tail) &&
                         !mf.min_cut_source_side.count(a.head);
        if (in_cprime && clamp.uprime[a.id] < a.capacity) {
            res.rcut.R.insert(a.id);
            res.rcut.cuts[a.id] = clamp.tail_cuts[a.id];
        }
    }
    res.capacity = rcut_capacity(net, res.rcut);
    res.witness = path_decompose(net, mf.arc_flow, net.source(), net.sink())
                      .scaled(Rational(1, 2));
    return res;
}

} // namespace

RCutApproximation approx_min_rcut(const Network& net) {
    return approx_min_rcut_impl(net);
}

PathFlow half_integral_approx_flow(const Network& net) {
    for (const Arc& a : net.arcs())
        if (!is_integer(a.capacity))
            throw Error("half_integral_approx_flow requires integral capacities");
    PathFlow witness = approx_min_rcut_impl(net).witness;
    for (const auto& [path, val] : witness.entries)
        if (!is_half_integral(val))
            throw Error("internal error: witness flow is not half-integral");
    return witness;
}

Rational DualSolution::objective(const Network& net) const {
    Rational total(0);
    for (const auto& [key, val] : y)
        total += net.arc(key.second).capacity * val;
    return total;
}

namespace {

// Shortest from-to path cost under nonnegative arc costs (Bellman-Ford,
// desk-scale graphs); nullopt when unreachable.
std::optional<Rational> shortest_path_cost(
    const Network& net, const std::map<std::string, Rational>& cost,
    const std::string& from, const std::string& to,
    const std::set<std::string>& removed) {
    std::map<std::string, Rational> dist;
    dist[from] = 0;
    std::size_t n = net.nodes().size();
    for (std::size_t round = 0; round + 1 < n; ++round) {
        bool changed = false;
        for (const Arc& a : net.arcs()) {
            if (removed.count(a.id))
                continue;
            auto it = dist.find(a.tail);
            if (it == dist.end())
                continue;
            Rational c(0);
            auto cit = cost.find(a.id);
            if (cit != cost.end())
                c = cit->second;
            Rational cand = it->second + c;
            auto hit = dist.find(a.head);
            if (hit == dist.end() || cand < hit->second) {
                dist[a.head] = cand;
                changed = true;
            }
        }
        if (!changed)
            break;
    }
    auto it = dist.find(to);
    if (it == dist.end())
        return std::nullopt;
    return it->second;
}

} // namespace

DualSolution rcut_to_dual(const Network& net, const RCut& rc) {
    rc.validate(net);
    DualSolution dual;
    for (const std::string& bar : rc.R) {
        dual.z[bar] = 1;
        for (const std::string& a : rc.cuts.at(bar))
            if (a != bar)
                dual.y[{bar, a}] = 1;
    }
    auto [cstar, phi] = min_cut(net, CapacityFunction(), net.source(), net.sink(),
                                rc.removed_union());
    for (const std::string& a : cstar)
        dual.y[{a, a}] = 1;

    if (dual.objective(net) != rcut_capacity(net, rc))
        throw Error("internal error: dual objective mismatch");

    // Feasibility via shortest-path separation: every s-t path must collect
    // cost >= 1, every rerouting path for a covered arc must collect its z.
    std::map<std::string, Rational> path_cost;
    for (const auto& [key, val] : dual.y)
        path_cost[key.second] += val;
    for (const auto& [a, val] : dual.z)
        path_cost[a] += val;
    auto sp = shortest_path_cost(net, path_cost, net.source(), net.sink(), {});
    if (sp && *sp < 1)
        throw Error("internal error: dual violates a path constraint");
    for (const auto& [bar, zval] : dual.z) {
        if (zval == 0)
            continue;
        std::map<std::string, Rational> ycost;
        for (const auto& [key, val] : dual.y)
            if (key.first == bar)
                ycost[key.second] += val;
        auto rp = shortest_path_cost(net, ycost, net.arc(bar).tail, net.sink(),
                                     {bar});
        if (rp && *rp < zval)
            throw Error("internal error: dual violates a rerouting constraint");
    }
    return dual;
}

RCut parse_rcut(std::istream& in, const Network& net) {
    RCut rc;
    bool got_r = false;
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
        if (kind == "R") {
            if (got_r)
                throw Error("line " + std::to_string(line_no) + ": second R line");
            got_r = true;
            std::string id;
            while (iss >> id)
                rc.R.insert(id);
        } else if (kind == "C") {
            std::string a;
            if (!(iss >> a))
                throw Error("line " + std::to_string(line_no) + ": missing arc on C line");
            std::string id;
            std::set<std::string> cut;
            while (iss >> id)
                cut.insert(id);
            rc.cuts[a] = std::move(cut);
        } else {
            throw Error("line " + std::to_string(line_no) + ": unknown line kind '" +
                        kind + "'");
        }
    }
    if (!got_r)
        throw Error("missing R line");
    rc.validate(net);
    return rc;
}

RCut parse_rcut(const std::string& text, const Network& net) {
    std::istringstream iss(text);
    return parse_rcut(iss, net);
}

std::string write_rcut(const RCut& rc) {
    std::ostringstream out;
    out << "R";
    for (const std::string& a : rc.R)
        out << " " << a;
    out << "\n";
    for (const auto& [a, cut] : rc.cuts) {
        out << "C " << a;
        for (const std::string& id : cut)
            out << " " << id;
        out << "\n";
    }
    return out.str();
}

RCut read_rcut_file(const std::string& path, const Network& net) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open R-cut file '" + path + "'");
    try {
        return parse_rcut(in, net);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

} // namespace rrflow
