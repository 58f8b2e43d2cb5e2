#include "rrflow/srf_solver.hpp"

#include <algorithm>

namespace rrflow {

LinearProgram build_compact_srf_lp(const Network& net) {
    LinearProgram lp;
    const auto& arcs = net.arcs();
    int m = static_cast<int>(arcs.size());

    std::vector<int> x(m);
    for (int i = 0; i < m; ++i)
        x[i] = lp.add_variable("x(" + arcs[i].id + ")");
    // y[bar][a]: rerouting flow for failure of arcs[bar] on arcs[a].
    std::vector<std::vector<int>> y(m, std::vector<int>(m, -1));
    for (int bar = 0; bar < m; ++bar)
        for (int a = 0; a < m; ++a)
            if (a != bar)
                y[bar][a] =
                    lp.add_variable("y[" + arcs[bar].id + "](" + arcs[a].id + ")");

    // Nominal flow conservation at interior nodes.
    for (const std::string& v : net.nodes()) {
        if (v == net.source() || v == net.sink())
            continue;
        SparseRow row;
        for (int i = 0; i < m; ++i) {
            if (arcs[i].head == v)
                row.emplace_back(x[i], Rational(1));
            if (arcs[i].tail == v)
                row.emplace_back(x[i], Rational(-1));
        }
        lp.add_constraint(std::move(row), Rel::Eq, Rational(0));
    }

    // Rerouting conservation; net outflow x(bar) at the failing arc's tail.
    for (int bar = 0; bar < m; ++bar) {
        const std::string& origin = arcs[bar].tail;
        if (origin == net.sink())
            continue; // flow interrupted at t needs no rerouting
        for (const std::string& v : net.nodes()) {
            if (v == net.sink())
                continue;
            SparseRow row;
            for (int a = 0; a < m; ++a) {
                if (a == bar)
                    continue;
                if (arcs[a].tail == v)
                    row.emplace_back(y[bar][a], Rational(1));
                if (arcs[a].head == v)
                    row.emplace_back(y[bar][a], Rational(-1));
            }
            if (v == origin) {
                row.emplace_back(x[bar], Rational(-1));
                lp.add_constraint(std::move(row), Rel::Eq, Rational(0));
            } else {
                lp.add_constraint(std::move(row), Rel::Eq, Rational(0));
            }
        }
    }

    // Capacity coupling.
    for (int a = 0; a < m; ++a) {
        lp.add_constraint({{x[a], Rational(1)}}, Rel::LessEq, arcs[a].capacity);
        for (int bar = 0; bar < m; ++bar) {
            if (bar == a)
                continue;
            lp.add_constraint({{x[a], Rational(1)}, {y[bar][a], Rational(1)}},
                              Rel::LessEq, arcs[a].capacity);
        }
    }

    SparseRow obj;
    for (int i = 0; i < m; ++i) {
        if (arcs[i].tail == net.source())
            obj.emplace_back(x[i], Rational(1));
        if (arcs[i].head == net.source())
            obj.emplace_back(x[i], Rational(-1));
    }
    lp.set_objective(std::move(obj), Sense::Maximize);
    return lp;
}

namespace {

// Arc-flow master problem plus accumulated failure cuts.
struct Master {
    LinearProgram lp;
    std::vector<int> x; // variable index per arc index

    explicit Master(const Network& net) {
        const auto& arcs = net.arcs();
        int m = static_cast<int>(arcs.size());
        x.resize(m);
        for (int i = 0; i < m; ++i)
            x[i] = lp.add_variable("x(" + arcs[i].id + ")");
        for (const std::string& v : net.nodes()) {
            if (v == net.source() || v == net.sink())
                continue;
            SparseRow row;
            for (int i = 0; i < m; ++i) {
                if (arcs[i].head == v)
                    row.emplace_back(x[i], Rational(1));
                if (arcs[i].tail == v)
                    row.emplace_back(x[i], Rational(-1));
            }
            lp.add_constraint(std::move(row), Rel::Eq, Rational(0));
        }
        for (int i = 0; i < m; ++i)
            lp.add_constraint({{x[i], Rational(1)}}, Rel::LessEq, arcs[i].capacity);
        SparseRow obj;
        for (int i = 0; i < m; ++i) {
            if (arcs[i].tail == net.source())
                obj.emplace_back(x[i], Rational(1));
            if (arcs[i].head == net.source())
                obj.emplace_back(x[i], Rational(-1));
        }
        lp.set_objective(std::move(obj), Sense::Maximize);
    }

    void add_failure_cut(const Network& net, int bar,
                         const std::set<std::string>& cut) {
        SparseRow row{{x[bar], Rational(1)}};
        Rational rhs(0);
        for (const std::string& id : cut) {
            row.emplace_back(x[net.arc_index(id)], Rational(1));
            rhs += net.arc(id).capacity;
        }
        lp.add_constraint(std::move(row), Rel::LessEq, rhs);
    }
};

} // namespace

SrfSolution solve_max_srf(const Network& net, int threads) {
    net.validate();
    const auto& arcs = net.arcs();
    int m = static_cast<int>(arcs.size());
    Master master(net);
    std::set<std::pair<int, std::set<std::string>>> seen_cuts;

    std::vector<Rational> xval(m, Rational(0));
    for (;;) {
        LpOutcome out = solve_lp(master.lp, threads);
        if (out.status != LpStatus::Optimal)
            throw Error("srf master LP not optimal (unexpected)");
        for (int i = 0; i < m; ++i)
            xval[i] = out.assignment[master.x[i]];

        // Separation: failure of arc bar is coverable iff a max flow from
        // tail(bar) to t under slack capacities u - x reaches x(bar).
        bool added = false;
        for (int bar = 0; bar < m; ++bar) {
            if (xval[bar] == 0)
                continue;
            const Arc& barc = arcs[bar];
            if (barc.tail == net.sink())
                continue;
            CapacityFunction slack;
            for (int i = 0; i < m; ++i)
                slack.set(arcs[i].id, arcs[i].capacity - xval[i]);
            MaxFlowResult mf =
                max_flow(net, slack, barc.tail, net.sink(), {barc.id});
            if (mf.value >= xval[bar])
                continue;
            std::set<std::string> cut;
            for (const Arc& a : arcs) {
                if (a.id == barc.id)
                    continue;
                if (mf.min_cut_source_side.count(a.tail) &&
                    !mf.min_cut_source_side.count(a.head))
                    cut.insert(a.id);
            }
            if (!seen_cuts.insert({bar, cut}).second)
                throw Error("srf solver internal error: repeated cut");
            master.add_failure_cut(net, bar, cut);
            added = true;
        }
        if (!added)
            break;
    }

    std::map<std::string, Rational> arc_flow;
    for (int i = 0; i < m; ++i)
        if (xval[i] > 0)
            arc_flow[arcs[i].id] = xval[i];
    SrfSolution sol;
    sol.nominal = path_decompose(net, arc_flow, net.source(), net.sink());
    sol.value = sol.nominal.value();

    RerouteVerdict verdict = verify_reroutable(net, sol.nominal, true);
    if (!verdict.ok)
        throw Error("srf solver internal error: optimal flow fails strict verification");
    sol.reroutings = std::move(verdict.reroutings);
    return sol;
}

RfApproximation approx_max_rf(const Network& net, int threads) {
    SrfSolution srf = solve_max_srf(net, threads);
    return RfApproximation{std::move(srf.nominal), srf.value, "OPT_RF <= 2*value"};
}

} // namespace rrflow
