#include "rrflow/oracle.hpp"

#include <algorithm>
#include <functional>

namespace rrflow {

namespace {

// Capacity rows held back until the current optimum violates them; keeps the
// simplex tableaux small even when the row pool is quadratic.
struct LazyLp {
    LinearProgram lp;
    std::vector<LpConstraint> pool;

    LpOutcome solve() {
        for (;;) {
            LpOutcome out = solve_lp(lp);
            if (out.status != LpStatus::Optimal)
                throw Error("oracle LP unexpectedly not optimal");
            std::vector<LpConstraint> rest;
            bool added = false;
            for (auto& c : pool) {
                Rational lhs(0);
                for (const auto& [idx, coef] : c.row)
                    lhs += coef * out.assignment[idx];
                if (lhs > c.rhs) {
                    lp.constraints.push_back(std::move(c));
                    added = true;
                } else {
                    rest.push_back(std::move(c));
                }
            }
            pool = std::move(rest);
            if (!added)
                return out;
        }
    }
};

std::vector<ArcPath> rerouting_paths(const Network& net, const std::string& from,
                                     const std::set<std::string>& avoid,
                                     std::size_t limit) {
    std::vector<ArcPath> result;
    for (ArcPath& p : enumerate_simple_paths(net, from, net.sink(), limit)) {
        bool clean = true;
        for (const std::string& id : avoid)
            if (p.contains(id)) {
                clean = false;
                break;
            }
        if (clean)
            result.push_back(std::move(p));
    }
    return result;
}

PathFlow flow_from(const std::vector<ArcPath>& paths, const std::vector<int>& vars,
                   const LpOutcome& out) {
    PathFlow flow;
    for (std::size_t i = 0; i < paths.size(); ++i)
        if (out.assignment[vars[i]] > 0)
            flow.entries.emplace_back(paths[i], out.assignment[vars[i]]);
    return flow;
}

std::pair<Rational, PathFlow> path_lp_optimum(const Network& net,
                                              const OracleBudget& budget,
                                              bool strict) {
    net.validate();
    std::vector<ArcPath> paths =
        enumerate_simple_paths(net, net.source(), net.sink(), budget.max_paths);
    std::size_t n = paths.size();

    LazyLp L;
    std::vector<int> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = L.lp.add_variable("x#" + std::to_string(i));

    std::set<std::string> used;
    for (const ArcPath& p : paths)
        used.insert(p.arcs.begin(), p.arcs.end());

    // One block of rerouting variables per arc that can carry flow.
    std::map<std::string, std::vector<ArcPath>> rpaths;
    std::map<std::string, std::vector<int>> rvars;
    for (const Arc& bar : net.arcs()) {
        if (!used.count(bar.id))
            continue;
        auto rp = rerouting_paths(net, bar.tail, {bar.id}, budget.max_paths);
        std::vector<int> rv;
        SparseRow eq;
        for (std::size_t i = 0; i < n; ++i)
            if (paths[i].contains(bar.id))
                eq.emplace_back(x[i], Rational(1));
        for (std::size_t j = 0; j < rp.size(); ++j) {
            rv.push_back(L.lp.add_variable("r[" + bar.id + "]#" + std::to_string(j)));
            eq.emplace_back(rv.back(), Rational(-1));
        }
        L.lp.add_constraint(std::move(eq), Rel::Eq, Rational(0));
        rpaths[bar.id] = std::move(rp);
        rvars[bar.id] = std::move(rv);
    }

    for (const Arc& a : net.arcs()) {
        SparseRow base;
        for (std::size_t i = 0; i < n; ++i)
            if (paths[i].contains(a.id))
                base.emplace_back(x[i], Rational(1));
        if (base.empty())
            continue;
        L.lp.add_constraint(base, Rel::LessEq, a.capacity);

        for (const auto& [bar, rp] : rpaths) {
            if (bar == a.id)
                continue;
            SparseRow row;
            for (std::size_t i = 0; i < n; ++i) {
                if (!paths[i].contains(a.id))
                    continue;
                if (!strict && paths[i].precedes(bar, a.id))
                    continue; // already past the failure when it hits a
                row.emplace_back(x[i], Rational(1));
            }
            bool any_r = false;
            const auto& rv = rvars.at(bar);
            for (std::size_t j = 0; j < rp.size(); ++j)
                if (rp[j].contains(a.id)) {
                    row.emplace_back(rv[j], Rational(1));
                    any_r = true;
                }
            if (any_r)
                L.pool.push_back(LpConstraint{std::move(row), Rel::LessEq, a.capacity});
        }
    }

    SparseRow obj;
    for (std::size_t i = 0; i < n; ++i)
        obj.emplace_back(x[i], Rational(1));
    L.lp.set_objective(std::move(obj), Sense::Maximize);

    LpOutcome out = L.solve();
    PathFlow flow = flow_from(paths, x, out);
    if (!verify_reroutable(net, flow, strict).ok)
        throw Error("internal error: oracle optimum fails its own verifier");
    return {out.value, std::move(flow)};
}

} // namespace

std::pair<Rational, PathFlow> oracle_max_srf_paths(const Network& net,
                                                   const OracleBudget& budget) {
    return path_lp_optimum(net, budget, true);
}

std::pair<Rational, PathFlow> oracle_max_rf(const Network& net,
                                            const OracleBudget& budget) {
    return path_lp_optimum(net, budget, false);
}

std::pair<Rational, PathFlow> oracle_max_k_rf(const Network& net, int k,
                                              const OracleBudget& budget) {
    net.validate();
    if (k < 1)
        throw Error("k must be at least 1");
    std::size_t m = net.arcs().size();

    // Count failure sets before materializing any of them.
    Rational sets(0), binom(1);
    for (int i = 1; i <= std::min<std::size_t>(k, m); ++i) {
        binom = binom * Rational(m - i + 1) / Rational(i);
        sets += binom;
        if (sets > Rational(budget.max_failure_sets))
            throw BudgetExceeded("failure set count exceeds budget " +
                                 std::to_string(budget.max_failure_sets));
    }

    std::vector<ArcPath> paths =
        enumerate_simple_paths(net, net.source(), net.sink(), budget.max_paths);
    std::size_t n = paths.size();

    LazyLp L;
    std::vector<int> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = L.lp.add_variable("x#" + std::to_string(i));
    for (const Arc& a : net.arcs()) {
        SparseRow base;
        for (std::size_t i = 0; i < n; ++i)
            if (paths[i].contains(a.id))
                base.emplace_back(x[i], Rational(1));
        if (!base.empty())
            L.lp.add_constraint(std::move(base), Rel::LessEq, a.capacity);
    }

    std::vector<int> combo;
    int scenario_no = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t start) {
        if (!combo.empty()) {
            std::set<std::string> S;
            for (int idx : combo)
                S.insert(net.arcs()[idx].id);

            // First failed arc per nominal path; flow is interrupted there.
            std::map<std::string, std::vector<std::size_t>> firsts;
            for (std::size_t i = 0; i < n; ++i) {
                int best = -1;
                for (const std::string& id : S) {
                    int p = paths[i].position(id);
                    if (p >= 0 && (best < 0 || p < best))
                        best = p;
                }
                if (best >= 0)
                    firsts[paths[i].arcs[best]].push_back(i);
            }
            if (!firsts.empty()) {
                ++scenario_no;
                std::map<std::string, std::vector<ArcPath>> rpaths;
                std::map<std::string, std::vector<int>> rvars;
                for (const auto& [bar, hit] : firsts) {
                    auto rp = rerouting_paths(net, net.arc(bar).tail, S,
                                              budget.max_paths);
                    if (L.lp.variables.size() + rp.size() > budget.max_paths)
                        throw BudgetExceeded(
                            "k-failure LP exceeds the variable budget " +
                            std::to_string(budget.max_paths));
                    std::vector<int> rv;
                    SparseRow eq;
                    for (std::size_t i : hit)
                        eq.emplace_back(x[i], Rational(-1));
                    for (std::size_t j = 0; j < rp.size(); ++j) {
                        rv.push_back(L.lp.add_variable(
                            "r" + std::to_string(scenario_no) + "[" + bar + "]#" +
                            std::to_string(j)));
                        eq.emplace_back(rv.back(), Rational(1));
                    }
                    L.lp.add_constraint(std::move(eq), Rel::Eq, Rational(0));
                    rpaths[bar] = std::move(rp);
                    rvars[bar] = std::move(rv);
                }
                for (const Arc& a : net.arcs()) {
                    if (S.count(a.id))
                        continue;
                    SparseRow row;
                    for (std::size_t i = 0; i < n; ++i) {
                        int p = paths[i].position(a.id);
                        if (p < 0)
                            continue;
                        int first = -1;
                        for (const std::string& id : S) {
                            int q = paths[i].position(id);
                            if (q >= 0 && (first < 0 || q < first))
                                first = q;
                        }
                        if (first < 0 || p < first)
                            row.emplace_back(x[i], Rational(1));
                    }
                    bool any_r = false;
                    for (const auto& [bar, rp] : rpaths) {
                        const auto& rv = rvars.at(bar);
                        for (std::size_t j = 0; j < rp.size(); ++j)
                            if (rp[j].contains(a.id)) {
                                row.emplace_back(rv[j], Rational(1));
                                any_r = true;
                            }
                    }
                    if (any_r)
                        L.pool.push_back(
                            LpConstraint{std::move(row), Rel::LessEq, a.capacity});
                }
            }
        }
        if (static_cast<int>(combo.size()) == k)
            return;
        for (std::size_t idx = start; idx < m; ++idx) {
            combo.push_back(static_cast<int>(idx));
            visit(idx + 1);
            combo.pop_back();
        }
    };
    visit(0);

    SparseRow obj;
    for (std::size_t i = 0; i < n; ++i)
        obj.emplace_back(x[i], Rational(1));
    L.lp.set_objective(std::move(obj), Sense::Maximize);

    LpOutcome out = L.solve();
    PathFlow flow = flow_from(paths, x, out);
    if (!verify_k_reroutable(net, flow, k, false).ok)
        throw Error("internal error: k-failure oracle optimum fails the verifier");
    return {out.value, std::move(flow)};
}

namespace {

struct RcutSearch {
    const Network& net;
    const OracleBudget& budget;
    std::map<std::set<std::string>, Rational> phi_memo;
    std::size_t evals = 0;

    RCut best;
    Rational best_cap;

    // Per non-forced arc: candidate cuts sorted by side capacity.
    struct Candidate {
        Rational cost;
        std::set<std::string> cut;
    };
    std::vector<std::pair<std::string, std::vector<Candidate>>> choices;

    Rational phi(const std::set<std::string>& removed) {
        auto it = phi_memo.find(removed);
        if (it != phi_memo.end())
            return it->second;
        if (++evals > 2000000)
            throw BudgetExceeded("R-cut search exceeded its evaluation budget");
        Rational v = max_flow(net, CapacityFunction(), net.source(), net.sink(),
                              removed)
                         .value;
        phi_memo.emplace(removed, v);
        return v;
    }

    void consider(const RCut& rc, const std::set<std::string>& removed,
                  const Rational& side_cost) {
        Rational cap = phi(removed) + side_cost;
        if (cap < best_cap) {
            best_cap = cap;
            best = rc;
        }
    }

    void dfs(std::size_t i, RCut& rc, std::set<std::string>& removed,
             const Rational& side_cost) {
        if (i == choices.size())
            return;
        dfs(i + 1, rc, removed, side_cost); // arc stays out of R
        const auto& [arc_id, cands] = choices[i];
        for (const Candidate& c : cands) {
            Rational next_cost = side_cost + c.cost;
            if (next_cost >= best_cap)
                break; // sorted by cost; capacity cannot drop below this
            std::vector<std::string> fresh;
            for (const std::string& id : c.cut)
                if (removed.insert(id).second)
                    fresh.push_back(id);
            rc.R.insert(arc_id);
            rc.cuts[arc_id] = c.cut;
            consider(rc, removed, next_cost);
            dfs(i + 1, rc, removed, next_cost);
            rc.R.erase(arc_id);
            rc.cuts.erase(arc_id);
            for (const std::string& id : fresh)
                removed.erase(id);
        }
    }
};

} // namespace

std::pair<RCut, Rational> oracle_min_rcut(const Network& net,
                                          const OracleBudget& budget) {
    net.validate();
    if (net.nodes().size() > budget.max_nodes)
        throw BudgetExceeded("node count " + std::to_string(net.nodes().size()) +
                             " exceeds enumeration budget " +
                             std::to_string(budget.max_nodes));

    // Only arcs on some s-t path can ever help an R-cut.
    std::set<std::string> from_s = reachable_nodes(net, net.source());
    std::set<std::string> to_t;
    for (const std::string& v : net.nodes())
        if (reachable_nodes(net, v).count(net.sink()))
            to_t.insert(v);
    std::vector<std::string> relevant;
    for (const Arc& a : net.arcs())
        if (from_s.count(a.tail) && to_t.count(a.head))
            relevant.push_back(a.id);

    RcutSearch search{net, budget};

    // An arc that alone separates its tail from t contributes cut {a} at zero
    // side capacity; including it can only lower the remaining min cut, so it
    // is always taken.
    RCut base;
    std::set<std::string> base_removed;
    std::vector<std::string> open;
    for (const std::string& id : relevant) {
        if (is_cut(net, {id}, net.arc(id).tail, net.sink())) {
            base.R.insert(id);
            base.cuts[id] = {id};
            base_removed.insert(id);
        } else {
            open.push_back(id);
        }
    }

    // Candidate cuts per open arc: cuts induced by node sets around the tail.
    std::vector<std::string> inner;
    for (const std::string& v : net.nodes())
        if (v != net.sink())
            inner.push_back(v);
    for (const std::string& id : open) {
        const Arc& a = net.arc(id);
        std::set<std::set<std::string>> seen;
        std::vector<RcutSearch::Candidate> cands;
        std::uint64_t limit = std::uint64_t(1) << inner.size();
        for (std::uint64_t mask = 0; mask < limit; ++mask) {
            std::set<std::string> S;
            for (std::size_t b = 0; b < inner.size(); ++b)
                if (mask & (std::uint64_t(1) << b))
                    S.insert(inner[b]);
            if (!S.count(a.tail))
                continue;
            std::set<std::string> cut;
            for (const Arc& e : net.arcs())
                if (S.count(e.tail) && !S.count(e.head))
                    cut.insert(e.id);
            cut.insert(id);
            if (!seen.insert(cut).second)
                continue;
            Rational cost(0);
            for (const std::string& e : cut)
                if (e != id)
                    cost += net.arc(e).capacity;
            cands.push_back({std::move(cost), std::move(cut)});
        }
        // A superset cut costs exactly the extra side capacity while lowering
        // the residual min cut by at most that; keep inclusion-minimal ones.
        std::vector<RcutSearch::Candidate> minimal;
        for (const auto& c : cands) {
            bool dominated = false;
            for (const auto& d : cands)
                if (d.cut != c.cut &&
                    std::includes(c.cut.begin(), c.cut.end(), d.cut.begin(),
                                  d.cut.end())) {
                    dominated = true;
                    break;
                }
            if (!dominated)
                minimal.push_back(c);
        }
        cands = std::move(minimal);
        std::sort(cands.begin(), cands.end(),
                  [](const auto& l, const auto& r) {
                      return l.cost != r.cost ? l.cost < r.cost : l.cut < r.cut;
                  });
        search.choices.emplace_back(id, std::move(cands));
    }

    search.best = base;
    search.best_cap = search.phi(base_removed) + 0;
    RCut rc = base;
    std::set<std::string> removed = base_removed;
    search.dfs(0, rc, removed, Rational(0));

    Rational check = rcut_capacity(net, search.best);
    if (check != search.best_cap)
        throw Error("internal error: R-cut capacity mismatch in the oracle");
    return {std::move(search.best), std::move(search.best_cap)};
}

bool oracle_strict_check_cuts(const Network& net, const PathFlow& x,
                              const OracleBudget& budget) {
    x.validate(net);
    for (const Arc& a : net.arcs())
        if (a.capacity != 1)
            throw Error("oracle_strict_check_cuts requires unit capacities");
    std::vector<std::string> inner;
    for (const std::string& v : net.nodes())
        if (v != net.sink())
            inner.push_back(v);
    if (inner.size() > budget.max_nodes)
        throw BudgetExceeded("node count exceeds enumeration budget " +
                             std::to_string(budget.max_nodes));
    auto flows = arc_flow_of(net, x);
    std::uint64_t limit = std::uint64_t(1) << inner.size();
    for (std::uint64_t mask = 1; mask < limit; ++mask) {
        std::set<std::string> S;
        for (std::size_t b = 0; b < inner.size(); ++b)
            if (mask & (std::uint64_t(1) << b))
                S.insert(inner[b]);
        Rational slack(0);
        bool empty = true;
        for (const Arc& a : net.arcs()) {
            if (!S.count(a.tail) || S.count(a.head))
                continue;
            empty = false;
            Rational f(0);
            auto it = flows.find(a.id);
            if (it != flows.end())
                f = it->second;
            slack += 1 - f;
        }
        if (!empty && slack < 1)
            return false;
    }
    return true;
}

std::optional<ArcPath> oracle_integral_unit_flow(const Network& net,
                                                 const OracleBudget& budget) {
    net.validate();
    for (const ArcPath& p :
         enumerate_simple_paths(net, net.source(), net.sink(), budget.max_paths)) {
        bool fits = true;
        for (const std::string& id : p.arcs)
            if (net.arc(id).capacity < 1) {
                fits = false;
                break;
            }
        if (!fits)
            continue;
        PathFlow x;
        x.entries.emplace_back(p, Rational(1));
        if (verify_reroutable(net, x, false).ok)
            return p;
    }
    return std::nullopt;
}

} // namespace rrflow
