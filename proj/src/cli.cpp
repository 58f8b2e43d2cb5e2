#include "rrflow/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rrflow/instances.hpp"
#include "rrflow/oracle.hpp"
#include "rrflow/srf_solver.hpp"
#include "rrflow/unit_cap.hpp"

namespace rrflow {

namespace {

using nlohmann::json;

json jrat(const Rational& r) { return format_rational(r); }

json jflow(const PathFlow& x) {
    json entries = json::array();
    for (const auto& [path, val] : x.entries)
        entries.push_back({{"value", jrat(val)}, {"arcs", path.arcs}});
    return {{"value", jrat(x.value())}, {"paths", entries}};
}

json jrerouting(const ReroutingFlow& r) {
    json entries = json::array();
    for (const auto& [path, val] : r.entries)
        entries.push_back({{"value", jrat(val)}, {"arcs", path.arcs}});
    return {{"failing", r.failing_arc}, {"value", jrat(r.value())},
            {"paths", entries}};
}

json jrcut(const RCut& rc) {
    json cuts = json::object();
    for (const auto& [a, cut] : rc.cuts)
        cuts[a] = std::vector<std::string>(cut.begin(), cut.end());
    return {{"R", std::vector<std::string>(rc.R.begin(), rc.R.end())},
            {"cuts", cuts}};
}

void emit(const json& payload, bool as_json) {
    if (as_json) {
        std::cout << payload.dump(2) << "\n";
        return;
    }
    // terse line-oriented rendering of the same payload
    std::function<void(const std::string&, const json&)> walk =
        [&](const std::string& prefix, const json& j) {
            if (j.is_object()) {
                for (const auto& [k, v] : j.items())
                    walk(prefix.empty() ? k : prefix + "." + k, v);
            } else if (j.is_array()) {
                std::cout << prefix << ":";
                for (const auto& v : j)
                    std::cout << " " << (v.is_string() ? v.get<std::string>()
                                                       : v.dump());
                std::cout << "\n";
            } else {
                std::cout << prefix << " "
                          << (j.is_string() ? j.get<std::string>() : j.dump())
                          << "\n";
            }
        };
    walk("", payload);
}

void write_reroutings(const std::string& dir,
                      const std::map<std::string, ReroutingFlow>& reroutings) {
    std::filesystem::create_directories(dir);
    for (const auto& [failing, r] : reroutings) {
        std::ofstream out(dir + "/" + failing + ".flow");
        if (!out)
            throw Error("cannot write rerouting file for arc '" + failing + "'");
        for (const auto& [path, val] : r.entries) {
            out << "f " << format_rational(val);
            for (const std::string& id : path.arcs)
                out << " " << id;
            out << "\n";
        }
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write file '" + path + "'");
    out << text;
}

OracleBudget budget_of(std::size_t budget) {
    OracleBudget b;
    if (budget > 0) {
        b.max_paths = budget;
        b.max_failure_sets = budget;
    }
    return b;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"reroutable network flow toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    bool trace = false;
    int threads = 1;
    app.add_flag("--json", as_json, "JSON output");
    app.add_flag("--trace", trace, "progress notes on stderr");
    app.add_option("--threads", threads, "solver threads (0 = all)");

    std::string instance_path, flow_path, rcut_path, out_path, emit_dir;
    std::string which, fp_path, caps_spec = "1,2";
    int k = 1, fig3_k = 3, rnd_nodes = 6, rnd_arcs = 10;
    std::size_t budget = 0;
    std::uint64_t seed = 1;
    std::string a1_cap = "1";

    auto* solve_srf = app.add_subcommand("solve-srf", "maximum strictly reroutable flow");
    solve_srf->add_option("instance", instance_path)->required();
    solve_srf->add_option("--emit-reroutings", emit_dir);

    auto* approx_rf = app.add_subcommand("approx-rf", "2-approximate maximum reroutable flow");
    approx_rf->add_option("instance", instance_path)->required();

    auto* verify = app.add_subcommand("verify", "check a flow for reroutability");
    bool strict = false;
    verify->add_option("instance", instance_path)->required();
    verify->add_option("--flow", flow_path)->required();
    verify->add_flag("--strict", strict);
    verify->add_option("--emit-reroutings", emit_dir);

    auto* verify_k = app.add_subcommand("verify-k", "check k-failure reroutability");
    verify_k->add_option("instance", instance_path)->required();
    verify_k->add_option("--flow", flow_path)->required();
    verify_k->add_option("--k", k)->required();
    verify_k->add_flag("--strict", strict);
    verify_k->add_option("--budget", budget);

    auto* rcut_cap = app.add_subcommand("rcut-capacity", "capacity of a given R-cut");
    rcut_cap->add_option("instance", instance_path)->required();
    rcut_cap->add_option("rcut", rcut_path)->required();

    auto* rcut_approx = app.add_subcommand("rcut-approx", "2-approximate minimum R-cut");
    rcut_approx->add_option("instance", instance_path)->required();

    auto* rcut_dual = app.add_subcommand("rcut-dual", "dual solution of an R-cut");
    rcut_dual->add_option("instance", instance_path)->required();
    rcut_dual->add_option("rcut", rcut_path)->required();

    auto* unit_demand = app.add_subcommand("unit-demand", "half-integral unit-demand flow");
    unit_demand->add_option("instance", instance_path)->required();

    auto* uncross = app.add_subcommand("uncross", "uncross a reroutable flow until strict");
    uncross->add_option("instance", instance_path)->required();
    uncross->add_option("--flow", flow_path)->required();
    uncross->add_option("--budget", budget);

    auto* half_approx = app.add_subcommand("half-approx", "half-integral 2-approximate flow");
    half_approx->add_option("instance", instance_path)->required();

    auto* oracle = app.add_subcommand("oracle", "brute-force reference computations");
    oracle->add_option("which", which)
        ->required()
        ->check(CLI::IsMember({"max-srf", "max-rf", "max-k-rf", "min-rcut",
                               "strict-cuts", "integral-unit"}));
    oracle->add_option("instance", instance_path)->required();
    oracle->add_option("--flow", flow_path);
    oracle->add_option("--k", k);
    oracle->add_option("--budget", budget);

    auto* gen = app.add_subcommand("gen", "instance generators");
    gen->add_option("which", which)
        ->required()
        ->check(CLI::IsMember({"fig2", "fig3", "random", "reduce-cap12",
                               "reduce-integral", "reduce-k2"}));
    gen->add_option("--a1", a1_cap, "fig2 a1 capacity");
    gen->add_option("--k", fig3_k, "fig3 path count");
    gen->add_option("--nodes", rnd_nodes);
    gen->add_option("--arcs", rnd_arcs);
    gen->add_option("--caps", caps_spec, "comma-separated capacity choices");
    gen->add_option("--seed", seed);
    gen->add_option("--fp", fp_path, "forbidden-pairs input for reductions");
    gen->add_option("--out", out_path, "output file (default stdout)");

    auto* fp_solve = app.add_subcommand("fp-solve", "brute-force forbidden-pairs path");
    fp_solve->add_option("instance", fp_path)->required();
    fp_solve->add_option("--budget", budget);

    for (CLI::App* sub : app.get_subcommands(std::function<bool(CLI::App*)>()))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*solve_srf) {
            Network net = read_network_file(instance_path);
            SrfSolution sol = solve_max_srf(net, threads);
            if (trace)
                std::cerr << "srf: " << sol.nominal.entries.size()
                          << " nominal paths\n";
            if (!emit_dir.empty())
                write_reroutings(emit_dir, sol.reroutings);
            emit({{"status", "ok"}, {"value", jrat(sol.value)},
                  {"flow", jflow(sol.nominal)}},
                 as_json);
            return 0;
        }
        if (*approx_rf) {
            Network net = read_network_file(instance_path);
            RfApproximation res = approx_max_rf(net, threads);
            emit({{"status", "ok"}, {"value", jrat(res.value)},
                  {"guarantee", res.guarantee}, {"flow", jflow(res.flow)}},
                 as_json);
            return 0;
        }
        if (*verify) {
            Network net = read_network_file(instance_path);
            PathFlow x = read_flow_file(flow_path, net);
            RerouteVerdict v = verify_reroutable(net, x, strict);
            if (!emit_dir.empty())
                write_reroutings(emit_dir, v.reroutings);
            json violations = json::object();
            for (const auto& [a, vc] : v.violations)
                violations[a] = {
                    {"cut", std::vector<std::string>(vc.cut.begin(), vc.cut.end())},
                    {"slack", jrat(vc.slack)}};
            emit({{"status", "ok"}, {"ok", v.ok}, {"strict", strict},
                  {"violations", violations}},
                 as_json);
            return v.ok ? 0 : 1;
        }
        if (*verify_k) {
            Network net = read_network_file(instance_path);
            PathFlow x = read_flow_file(flow_path, net);
            KRerouteVerdict v = verify_k_reroutable(net, x, k, strict,
                                                    budget ? budget : 200000);
            json violations = json::array();
            for (const auto& viol : v.violations)
                violations.push_back(
                    {{"failed", std::vector<std::string>(viol.failed.begin(),
                                                         viol.failed.end())},
                     {"demanded", jrat(viol.demanded)},
                     {"achievable", jrat(viol.achievable)}});
            emit({{"status", "ok"}, {"ok", v.ok}, {"k", k},
                  {"checked_sets", v.checked_sets}, {"violations", violations}},
                 as_json);
            return v.ok ? 0 : 1;
        }
        if (*rcut_cap) {
            Network net = read_network_file(instance_path);
            RCut rc = read_rcut_file(rcut_path, net);
            emit({{"status", "ok"}, {"capacity", jrat(rcut_capacity(net, rc))}},
                 as_json);
            return 0;
        }
        if (*rcut_approx) {
            Network net = read_network_file(instance_path);
            RCutApproximation res = approx_min_rcut(net);
            emit({{"status", "ok"}, {"capacity", jrat(res.capacity)},
                  {"rcut", jrcut(res.rcut)}, {"witness", jflow(res.witness)}},
                 as_json);
            return 0;
        }
        if (*rcut_dual) {
            Network net = read_network_file(instance_path);
            RCut rc = read_rcut_file(rcut_path, net);
            DualSolution dual = rcut_to_dual(net, rc);
            json y = json::array();
            for (const auto& [key, val] : dual.y)
                y.push_back({{"failing", key.first}, {"arc", key.second},
                             {"value", jrat(val)}});
            json z = json::object();
            for (const auto& [a, val] : dual.z)
                z[a] = jrat(val);
            emit({{"status", "ok"}, {"objective", jrat(dual.objective(net))},
                  {"y", y}, {"z", z}},
                 as_json);
            return 0;
        }
        if (*unit_demand) {
            Network net = read_network_file(instance_path);
            UnitDemandOutcome res = unit_demand_half_integral(net);
            if (res.feasible) {
                emit({{"status", "ok"}, {"feasible", true},
                      {"flow", jflow(res.flow)}},
                     as_json);
                return 0;
            }
            emit({{"status", "ok"}, {"feasible", false},
                  {"certificate", std::vector<std::string>(
                                      res.certificate.begin(),
                                      res.certificate.end())}},
                 as_json);
            return 1;
        }
        if (*uncross) {
            Network net = read_network_file(instance_path);
            PathFlow x = read_flow_file(flow_path, net);
            PathFlow result = make_strict(net, x, budget ? budget : 20);
            emit({{"status", "ok"}, {"flow", jflow(result)}}, as_json);
            return 0;
        }
        if (*half_approx) {
            Network net = read_network_file(instance_path);
            PathFlow x = half_integral_approx_flow(net);
            emit({{"status", "ok"}, {"flow", jflow(x)}}, as_json);
            return 0;
        }
        if (*oracle) {
            Network net = read_network_file(instance_path);
            OracleBudget b = budget_of(budget);
            if (which == "max-srf" || which == "max-rf") {
                auto [value, flow] = which == "max-srf"
                                         ? oracle_max_srf_paths(net, b)
                                         : oracle_max_rf(net, b);
                emit({{"status", "ok"}, {"value", jrat(value)},
                      {"flow", jflow(flow)}},
                     as_json);
                return 0;
            }
            if (which == "max-k-rf") {
                auto [value, flow] = oracle_max_k_rf(net, k, b);
                emit({{"status", "ok"}, {"k", k}, {"value", jrat(value)},
                      {"flow", jflow(flow)}},
                     as_json);
                return 0;
            }
            if (which == "min-rcut") {
                auto [rc, cap] = oracle_min_rcut(net, b);
                emit({{"status", "ok"}, {"capacity", jrat(cap)},
                      {"rcut", jrcut(rc)}},
                     as_json);
                return 0;
            }
            if (which == "strict-cuts") {
                if (flow_path.empty())
                    throw Error("strict-cuts needs --flow");
                PathFlow x = read_flow_file(flow_path, net);
                bool ok = oracle_strict_check_cuts(net, x, b);
                emit({{"status", "ok"}, {"ok", ok}}, as_json);
                return ok ? 0 : 1;
            }
            auto path = oracle_integral_unit_flow(net, b);
            if (path) {
                emit({{"status", "ok"}, {"found", true}, {"arcs", path->arcs}},
                     as_json);
                return 0;
            }
            emit({{"status", "ok"}, {"found", false}}, as_json);
            return 1;
        }
        if (*gen) {
            Network net;
            if (which == "fig2") {
                net = gen_fig2(parse_rational(a1_cap));
            } else if (which == "fig3") {
                net = gen_fig3(fig3_k);
            } else if (which == "random") {
                std::vector<Rational> caps;
                std::istringstream iss(caps_spec);
                std::string tok;
                while (std::getline(iss, tok, ','))
                    caps.push_back(parse_rational(tok));
                net = gen_random(rnd_nodes, rnd_arcs, caps, seed);
            } else {
                if (fp_path.empty())
                    throw Error("reductions need --fp");
                ForbiddenPairsInstance inst = normalize_fp(read_fp_file(fp_path));
                if (which == "reduce-cap12")
                    net = reduce_fp_cap12(inst);
                else if (which == "reduce-integral")
                    net = reduce_fp_integral(inst);
                else
                    net = reduce_fp_k2(inst);
            }
            write_text(out_path, write_network(net));
            return 0;
        }
        if (*fp_solve) {
            ForbiddenPairsInstance inst = read_fp_file(fp_path);
            auto path =
                solve_fp_bruteforce(inst, budget ? budget : std::size_t(100000));
            if (path) {
                emit({{"status", "ok"}, {"found", true}, {"arcs", path->arcs}},
                     as_json);
                return 0;
            }
            emit({{"status", "ok"}, {"found", false}}, as_json);
            return 1;
        }
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace rrflow
