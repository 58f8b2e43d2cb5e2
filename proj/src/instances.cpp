#include "rrflow/instances.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace rrflow {

namespace {

std::string fresh_node(const Network& net, std::string base) {
    while (net.has_node(base))
        base += "_";
    return base;
}

std::string fresh_arc(const Network& net, std::string base) {
    while (net.has_arc(base))
        base += "_";
    return base;
}

Network with_capacity(const Network& net, const std::string& arc_id,
                      const Rational& cap) {
    Network out;
    for (const std::string& v : net.nodes())
        out.add_node(v);
    for (const Arc& a : net.arcs())
        out.add_arc(a.id, a.tail, a.head, a.id == arc_id ? cap : a.capacity);
    out.set_source(net.source());
    out.set_sink(net.sink());
    return out;
}

// Replaces `arc_id` by two consecutive halves through a fresh node; returns
// (first half, second half).
std::pair<std::string, std::string> subdivide(Network& net,
                                              const std::string& arc_id) {
    const Arc old = net.arc(arc_id);
    std::string mid = fresh_node(net, arc_id + "_m");
    std::string first = fresh_arc(net, arc_id + "_1");
    Network out;
    for (const std::string& v : net.nodes())
        out.add_node(v);
    out.add_node(mid);
    std::string second;
    for (const Arc& a : net.arcs()) {
        if (a.id == arc_id) {
            out.add_arc(first, old.tail, mid, old.capacity);
            second = fresh_arc(out, arc_id + "_2");
            out.add_arc(second, mid, old.head, old.capacity);
        } else {
            out.add_arc(a.id, a.tail, a.head, a.capacity);
        }
    }
    out.set_source(net.source());
    out.set_sink(net.sink());
    net = std::move(out);
    return {first, second};
}

std::map<std::string, int> out_degrees(const Network& net) {
    std::map<std::string, int> deg;
    for (const Arc& a : net.arcs())
        ++deg[a.tail];
    return deg;
}

} // namespace

void ForbiddenPairsInstance::validate() const {
    net.validate();
    for (const auto& [a, b] : pairs) {
        net.arc(a);
        net.arc(b);
        if (a == b)
            throw Error("forbidden pair with identical arcs '" + a + "'");
    }
}

bool ForbiddenPairsInstance::normalized() const {
    std::map<std::string, int> uses;
    std::set<std::string> pair_arcs, pair_tails, pair_heads;
    for (const auto& [a, b] : pairs)
        for (const std::string& id : {a, b}) {
            if (++uses[id] > 1)
                return false;
            pair_arcs.insert(id);
            pair_tails.insert(net.arc(id).tail);
            pair_heads.insert(net.arc(id).head);
        }
    auto deg = out_degrees(net);
    for (const std::string& id : pair_arcs)
        if (deg[net.arc(id).tail] != 1)
            return false;
    for (const std::string& h : pair_heads)
        if (pair_tails.count(h))
            return false;
    return true;
}

ForbiddenPairsInstance normalize_fp(const ForbiddenPairsInstance& inst) {
    inst.validate();
    ForbiddenPairsInstance cur = inst;
    auto ref = [&cur](const std::string& id) -> std::vector<std::string*> {
        std::vector<std::string*> refs;
        for (auto& [a, b] : cur.pairs) {
            if (a == id)
                refs.push_back(&a);
            if (b == id)
                refs.push_back(&b);
        }
        return refs;
    };
    for (;;) {
        // (i) an arc shared by several pairs: split it, first user keeps the
        // first half.
        bool changed = false;
        for (const auto& [a, b] : cur.pairs) {
            for (const std::string id : {a, b}) {
                auto refs = ref(id);
                if (refs.size() < 2)
                    continue;
                auto [first, second] = subdivide(cur.net, id);
                *refs[0] = first;
                for (std::size_t i = 1; i < refs.size(); ++i)
                    *refs[i] = second;
                changed = true;
                break;
            }
            if (changed)
                break;
        }
        if (changed)
            continue;

        // (ii) a pair arc sharing its tail with other arcs: push the pair
        // onto the second half, whose tail is fresh.
        auto deg = out_degrees(cur.net);
        for (auto& [a, b] : cur.pairs) {
            for (std::string* id : {&a, &b})
                if (deg[cur.net.arc(*id).tail] > 1) {
                    *id = subdivide(cur.net, *id).second;
                    changed = true;
                    break;
                }
            if (changed)
                break;
        }
        if (changed)
            continue;

        // (iii) a pair arc starting where another pair arc ends: detach its
        // tail by subdividing.
        std::set<std::string> heads;
        for (const auto& [a, b] : cur.pairs) {
            heads.insert(cur.net.arc(a).head);
            heads.insert(cur.net.arc(b).head);
        }
        for (auto& [a, b] : cur.pairs) {
            for (std::string* id : {&a, &b})
                if (heads.count(cur.net.arc(*id).tail)) {
                    *id = subdivide(cur.net, *id).second;
                    changed = true;
                    break;
                }
            if (changed)
                break;
        }
        if (!changed)
            break;
    }
    if (!cur.normalized())
        throw Error("internal error: normalization did not converge");
    return cur;
}

Network add_backup_link(const Network& net, const std::string& v,
                        const std::string& w, bool bidirected) {
    if (!net.has_node(v) || !net.has_node(w))
        throw Error("backup link endpoint does not exist");
    Rational cap = net.arcs().empty() ? Rational(1) : net.max_capacity();
    Network out = net;
    auto one = [&out, &cap](const std::string& from, const std::string& to) {
        std::string mid = fresh_node(out, "bk_" + from + "_" + to);
        out.add_node(mid);
        out.add_arc(fresh_arc(out, mid + "_a"), from, mid, cap);
        out.add_arc(fresh_arc(out, mid + "_b"), mid, to, cap);
    };
    one(v, w);
    if (bidirected)
        one(w, v);
    return out;
}

Network gen_fig2(const Rational& a1_capacity) {
    if (a1_capacity != 1 && a1_capacity != 2)
        throw Error("a1 capacity must be 1 or 2");
    Network net;
    for (const char* v : {"s", "b", "c", "t"})
        net.add_node(v);
    net.add_arc("a1", "s", "b", a1_capacity);
    net.add_arc("a2", "b", "c", Rational(1));
    net.add_arc("a3", "c", "t", Rational(1));
    net.set_source("s");
    net.set_sink("t");
    net = add_backup_link(net, "s", "c", true);
    net = add_backup_link(net, "b", "t", false);
    return net;
}

Network gen_fig3(int k) {
    if (k < 3)
        throw Error("k must be at least 3");
    Network net;
    net.add_node("s");
    net.add_node("v");
    net.add_node("t");
    auto node = [](const char* fam, int i, int j) {
        return std::string(fam) + std::to_string(i) + "_" + std::to_string(j);
    };
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
            net.add_node(node("u", i, j));
            net.add_node(node("p", i, j));
        }
    net.add_arc("sv", "s", "v", Rational(1));
    for (int i = 1; i <= k; ++i) {
        std::string prev = "s";
        for (int j = 1; j <= k; ++j) {
            net.add_arc("su" + std::to_string(i) + "_" + std::to_string(j), prev,
                        node("u", i, j), Rational(1));
            prev = node("u", i, j);
        }
        net.add_arc("su" + std::to_string(i) + "_" + std::to_string(k + 1), prev,
                    "v", Rational(1));
    }
    for (int i = 1; i <= k; ++i) {
        std::string prev = "v";
        for (int j = 1; j <= k; ++j) {
            net.add_arc("vt" + std::to_string(i) + "_" + std::to_string(j), prev,
                        node("p", i, j), Rational(1));
            prev = node("p", i, j);
        }
        net.add_arc("vt" + std::to_string(i) + "_" + std::to_string(k + 1), prev,
                    "t", Rational(1));
    }
    net.set_source("s");
    net.set_sink("t");
    // Intermediate j of s-v path i pairs with intermediate i of v-t path j.
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j)
            net = add_backup_link(net, node("u", i, j), node("p", j, i), true);
    return net;
}

namespace {

void require_normalized(const ForbiddenPairsInstance& inst) {
    inst.validate();
    if (!inst.normalized())
        throw Error("forbidden-pairs instance is not normalized");
}

Network copy_digraph(const Network& src) {
    Network out;
    for (const std::string& v : src.nodes())
        out.add_node(v);
    for (const Arc& a : src.arcs())
        out.add_arc(a.id, a.tail, a.head, Rational(1));
    return out;
}

std::set<std::string> pair_tails_of(const ForbiddenPairsInstance& inst) {
    std::set<std::string> tails;
    for (const auto& [a, b] : inst.pairs) {
        tails.insert(inst.net.arc(a).tail);
        tails.insert(inst.net.arc(b).tail);
    }
    return tails;
}

} // namespace

Network reduce_fp_cap12(const ForbiddenPairsInstance& inst) {
    require_normalized(inst);
    int k = static_cast<int>(inst.pairs.size());
    Network net = copy_digraph(inst.net);
    const std::string s = inst.net.source();
    const std::string tprime = inst.net.sink();

    auto vnode = [&](int i) {
        return i == 1 ? tprime : fresh_node(net, "v" + std::to_string(i));
    };
    std::vector<std::string> v(k + 2);
    v[1] = tprime;
    for (int i = 2; i <= k + 1; ++i) {
        v[i] = vnode(i);
        net.add_node(v[i]);
    }
    std::string t = k == 0 ? tprime : v[k + 1];
    net.set_source(s);
    net.set_sink(t);

    std::vector<std::string> w(k + 1), wbar(k + 1);
    for (int i = 1; i <= k; ++i) {
        w[i] = fresh_node(net, "w" + std::to_string(i));
        net.add_node(w[i]);
        wbar[i] = fresh_node(net, "w" + std::to_string(i) + "bar");
        net.add_node(wbar[i]);
        net.add_arc(fresh_arc(net, "g" + std::to_string(i)), v[i], w[i],
                    Rational(1));
        net.add_arc(fresh_arc(net, "h" + std::to_string(i)), w[i], v[i + 1],
                    Rational(1));
        net.add_arc(fresh_arc(net, "g" + std::to_string(i) + "bar"), v[i],
                    wbar[i], Rational(1));
        net.add_arc(fresh_arc(net, "h" + std::to_string(i) + "bar"), wbar[i],
                    v[i + 1], Rational(1));
    }
    net.add_arc(fresh_arc(net, "st"), s, tprime, Rational(1));

    std::set<std::string> safe;
    for (int i = 1; i <= k; ++i)
        safe.insert(v[i]);
    std::set<std::string> ptails = pair_tails_of(inst);
    for (const std::string& node : inst.net.nodes())
        if (!ptails.count(node))
            safe.insert(node);
    safe.erase(t);
    for (const std::string& node : safe)
        net = add_backup_link(net, node, t, false);

    for (int i = 1; i <= k; ++i) {
        const auto& [a, abar] = inst.pairs[i - 1];
        const std::string z = inst.net.arc(a).tail;
        const std::string zbar = inst.net.arc(abar).tail;
        net = add_backup_link(net, z, w[i], true);
        net = add_backup_link(net, zbar, wbar[i], true);
    }

    for (const auto& [a, abar] : inst.pairs) {
        net = with_capacity(net, a, Rational(2));
        net = with_capacity(net, abar, Rational(2));
    }
    return net;
}

Network reduce_fp_integral(const ForbiddenPairsInstance& inst) {
    require_normalized(inst);
    Network net = copy_digraph(inst.net);
    net.set_source(inst.net.source());
    net.set_sink(inst.net.sink());
    const std::string t = inst.net.sink();

    for (const auto& [a, abar] : inst.pairs) {
        const std::string za = inst.net.arc(a).tail;
        const std::string zb = inst.net.arc(abar).tail;
        net = add_backup_link(net, za, zb, false);
        net = add_backup_link(net, zb, za, false);
    }
    std::set<std::string> ptails = pair_tails_of(inst);
    for (const std::string& node : inst.net.nodes())
        if (!ptails.count(node) && node != t)
            net = add_backup_link(net, node, t, false);
    return net;
}

Network reduce_fp_k2(const ForbiddenPairsInstance& inst) {
    require_normalized(inst);
    int l = static_cast<int>(inst.pairs.size());
    Network net = copy_digraph(inst.net);
    const std::string sprime = inst.net.source();
    const std::string t = inst.net.sink(); // t := t'

    auto two_backup = [&net](const std::string& from, const std::string& to) {
        net = add_backup_link(net, from, to, false);
        net = add_backup_link(net, from, to, false);
    };

    std::vector<std::string> v(l + 2), w(l + 1), vp(l + 1), wp(l + 1);
    std::vector<std::string> wbar(l + 1), vpbar(l + 1), wpbar(l + 1);
    v[l + 1] = sprime;
    for (int i = 1; i <= l; ++i) {
        for (auto [vec, base] : {std::pair{&v, "v"},       {&w, "w"},
                                 std::pair{&vp, "vp"},     {&wp, "wp"},
                                 std::pair{&wbar, "wbar"}, {&vpbar, "vpbar"},
                                 std::pair{&wpbar, "wpbar"}}) {
            (*vec)[i] = fresh_node(net, base + std::to_string(i));
            net.add_node((*vec)[i]);
        }
    }
    for (int i = 1; i <= l; ++i) {
        auto arc = [&](const char* base, const std::string& from,
                       const std::string& to) {
            net.add_arc(fresh_arc(net, base + std::to_string(i)), from, to,
                        Rational(1));
        };
        arc("g", v[i], w[i]);
        arc("h", w[i], vp[i]);
        arc("gp", vp[i], wp[i]);
        arc("hp", wp[i], v[i + 1]);
        arc("gbar", v[i], wbar[i]);
        arc("hbar", wbar[i], vpbar[i]);
        arc("gpbar", vpbar[i], wpbar[i]);
        arc("hpbar", wpbar[i], v[i + 1]);
    }
    net.set_source(l == 0 ? sprime : v[1]);
    net.set_sink(t);

    for (int i = 1; i <= l; ++i) {
        two_backup(v[i], t);
        two_backup(vp[i], t);
        two_backup(vpbar[i], t);
        const auto& [a, abar] = inst.pairs[i - 1];
        const std::string z = inst.net.arc(a).tail;
        const std::string zbar = inst.net.arc(abar).tail;
        two_backup(w[i], wp[i]);
        two_backup(wp[i], z);
        two_backup(z, w[i]);
        two_backup(wbar[i], wpbar[i]);
        two_backup(wpbar[i], zbar);
        two_backup(zbar, wbar[i]);
    }
    std::set<std::string> ptails = pair_tails_of(inst);
    for (const std::string& node : inst.net.nodes())
        if (!ptails.count(node) && node != t)
            two_backup(node, t);

    // The extra s'-t' path e1..e6 with its triangle of 2-backup links.
    std::vector<std::string> f(7);
    f[1] = sprime;
    for (int i = 2; i <= 6; ++i) {
        f[i] = fresh_node(net, "f" + std::to_string(i));
        net.add_node(f[i]);
    }
    for (int i = 1; i <= 6; ++i)
        net.add_arc(fresh_arc(net, "e" + std::to_string(i)), f[i],
                    i == 6 ? t : f[i + 1], Rational(1));
    two_backup(f[2], f[4]);
    two_backup(f[4], f[6]);
    two_backup(f[6], f[2]);
    two_backup(f[1], t);
    two_backup(f[3], t);
    two_backup(f[5], t);
    return net;
}

std::optional<ArcPath> solve_fp_bruteforce(const ForbiddenPairsInstance& inst,
                                           std::size_t max_paths) {
    inst.validate();
    for (const ArcPath& p : enumerate_simple_paths(
             inst.net, inst.net.source(), inst.net.sink(), max_paths)) {
        bool ok = true;
        for (const auto& [a, b] : inst.pairs)
            if (p.contains(a) && p.contains(b)) {
                ok = false;
                break;
            }
        if (ok)
            return p;
    }
    return std::nullopt;
}

Network gen_random(int nodes, int arcs, const std::vector<Rational>& cap_choices,
                   std::uint64_t seed) {
    if (nodes < 2)
        throw Error("need at least 2 nodes");
    if (cap_choices.empty())
        throw Error("empty capacity choice list");
    std::mt19937_64 rng(seed);
    Network net;
    for (int i = 0; i < nodes; ++i)
        net.add_node("n" + std::to_string(i));
    net.set_source("n0");
    net.set_sink("n" + std::to_string(nodes - 1));
    for (int i = 0; i < arcs; ++i) {
        // modulo draws keep the sequence identical across standard libraries
        int tail = static_cast<int>(rng() % nodes);
        int head = static_cast<int>(rng() % (nodes - 1));
        if (head >= tail)
            ++head;
        const Rational& cap = cap_choices[rng() % cap_choices.size()];
        net.add_arc("e" + std::to_string(i + 1), "n" + std::to_string(tail),
                    "n" + std::to_string(head), cap);
    }
    return net;
}

ForbiddenPairsInstance parse_fp(std::istream& in) {
    std::ostringstream netpart;
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = line;
        auto hash = stripped.find('#');
        if (hash != std::string::npos)
            stripped.erase(hash);
        std::istringstream iss(stripped);
        std::string kind;
        if (iss >> kind && kind == "pair") {
            std::string a, b, extra;
            if (!(iss >> a >> b) || (iss >> extra))
                throw Error("line " + std::to_string(line_no) +
                            ": pair line needs exactly two arc ids");
            pairs.emplace_back(a, b);
        } else {
            netpart << line << "\n";
        }
    }
    ForbiddenPairsInstance inst;
    inst.net = parse_network(netpart.str());
    inst.pairs = std::move(pairs);
    inst.validate();
    return inst;
}

ForbiddenPairsInstance parse_fp(const std::string& text) {
    std::istringstream iss(text);
    return parse_fp(iss);
}

std::string write_fp(const ForbiddenPairsInstance& inst) {
    std::string out = write_network(inst.net);
    for (const auto& [a, b] : inst.pairs)
        out += "pair " + a + " " + b + "\n";
    return out;
}

ForbiddenPairsInstance read_fp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open forbidden-pairs file '" + path + "'");
    try {
        return parse_fp(in);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

} // namespace rrflow
