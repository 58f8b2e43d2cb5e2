#include "rrflow/network.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>

namespace rrflow {

void Network::add_node(const std::string& id) {
    if (node_index_.count(id))
        throw Error("duplicate node id '" + id + "'");
    node_index_[id] = static_cast<int>(nodes_.size());
    nodes_.push_back(id);
}

void Network::add_arc(const std::string& id, const std::string& tail,
                      const std::string& head, const Rational& capacity) {
    if (arc_index_.count(id))
        throw Error("duplicate arc id '" + id + "'");
    if (!node_index_.count(tail))
        throw Error("arc '" + id + "': unknown tail node '" + tail + "'");
    if (!node_index_.count(head))
        throw Error("arc '" + id + "': unknown head node '" + head + "'");
    if (capacity < 0)
        throw Error("arc '" + id + "': negative capacity");
    arc_index_[id] = static_cast<int>(arcs_.size());
    arcs_.push_back(Arc{id, tail, head, capacity});
}

void Network::validate() const {
    if (source_.empty() || !node_index_.count(source_))
        throw Error("missing or unknown source node");
    if (sink_.empty() || !node_index_.count(sink_))
        throw Error("missing or unknown sink node");
    if (source_ == sink_)
        throw Error("source equals sink");
}

const Arc& Network::arc(const std::string& id) const {
    auto it = arc_index_.find(id);
    if (it == arc_index_.end())
        throw Error("unknown arc id '" + id + "'");
    return arcs_[it->second];
}

int Network::arc_index(const std::string& id) const {
    auto it = arc_index_.find(id);
    if (it == arc_index_.end())
        throw Error("unknown arc id '" + id + "'");
    return it->second;
}

const Rational& Network::max_capacity() const {
    if (arcs_.empty())
        throw Error("max_capacity of arcless network");
    const Rational* best = &arcs_[0].capacity;
    for (const Arc& a : arcs_)
        if (a.capacity > *best)
            best = &a.capacity;
    return *best;
}

bool Network::operator==(const Network& other) const {
    if (nodes_ != other.nodes_ || source_ != other.source_ || sink_ != other.sink_)
        return false;
    if (arcs_.size() != other.arcs_.size())
        return false;
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        const Arc& a = arcs_[i];
        const Arc& b = other.arcs_[i];
        if (a.id != b.id || a.tail != b.tail || a.head != b.head ||
            a.capacity != b.capacity)
            return false;
    }
    return true;
}

bool ArcPath::contains(const std::string& arc_id) const {
    return std::find(arcs.begin(), arcs.end(), arc_id) != arcs.end();
}

int ArcPath::position(const std::string& arc_id) const {
    auto it = std::find(arcs.begin(), arcs.end(), arc_id);
    return it == arcs.end() ? -1 : static_cast<int>(it - arcs.begin());
}

bool ArcPath::precedes(const std::string& earlier, const std::string& later) const {
    int p = position(earlier);
    int q = position(later);
    return p >= 0 && q >= 0 && p < q;
}

void ArcPath::validate(const Network& net) const {
    if (arcs.empty())
        throw Error("empty path");
    std::set<std::string> seen_nodes;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const Arc& a = net.arc(arcs[i]);
        if (i == 0) {
            seen_nodes.insert(a.tail);
        } else {
            const Arc& prev = net.arc(arcs[i - 1]);
            if (prev.head != a.tail)
                throw Error("path broken between '" + prev.id + "' and '" + a.id + "'");
        }
        if (!seen_nodes.insert(a.head).second)
            throw Error("path revisits node '" + a.head + "'");
    }
}

const std::string& ArcPath::first_tail(const Network& net) const {
    if (arcs.empty())
        throw Error("empty path");
    return net.arc(arcs.front()).tail;
}

const std::string& ArcPath::last_head(const Network& net) const {
    if (arcs.empty())
        throw Error("empty path");
    return net.arc(arcs.back()).head;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
    throw Error("line " + std::to_string(line) + ": " + msg);
}

} // namespace

Network parse_network(std::istream& in) {
    Network net;
    bool got_header = false;
    bool got_source = false, got_sink = false;
    int declared_nodes = 0, declared_arcs = 0;
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
        try {
            if (kind == "p") {
                std::string fmt;
                if (!(iss >> fmt >> declared_nodes >> declared_arcs) || fmt != "rrf")
                    parse_fail(line_no, "bad header, expected 'p rrf <nodes> <arcs>'");
                got_header = true;
            } else if (kind == "n") {
                if (!got_header)
                    parse_fail(line_no, "node line before header");
                std::string id, role;
                if (!(iss >> id))
                    parse_fail(line_no, "missing node id");
                net.add_node(id);
                if (iss >> role) {
                    if (role == "source") {
                        if (got_source)
                            parse_fail(line_no, "second source node");
                        net.set_source(id);
                        got_source = true;
                    } else if (role == "sink") {
                        if (got_sink)
                            parse_fail(line_no, "second sink node");
                        net.set_sink(id);
                        got_sink = true;
                    } else {
                        parse_fail(line_no, "unknown node role '" + role + "'");
                    }
                }
            } else if (kind == "a") {
                if (!got_header)
                    parse_fail(line_no, "arc line before header");
                std::string id, tail, head, cap;
                if (!(iss >> id >> tail >> head >> cap))
                    parse_fail(line_no, "expected 'a <id> <tail> <head> <capacity>'");
                net.add_arc(id, tail, head, parse_rational(cap));
            } else {
                parse_fail(line_no, "unknown line kind '" + kind + "'");
            }
        } catch (const BudgetExceeded&) {
            throw;
        } catch (const Error& e) {
            std::string what = e.what();
            if (what.rfind("line ", 0) == 0)
                throw;
            parse_fail(line_no, what);
        }
    }
    if (!got_header)
        throw Error("missing 'p rrf' header");
    if (static_cast<int>(net.nodes().size()) != declared_nodes)
        throw Error("header declares " + std::to_string(declared_nodes) + " nodes, found " +
                    std::to_string(net.nodes().size()));
    if (static_cast<int>(net.arcs().size()) != declared_arcs)
        throw Error("header declares " + std::to_string(declared_arcs) + " arcs, found " +
                    std::to_string(net.arcs().size()));
    net.validate();
    return net;
}

Network parse_network(const std::string& text) {
    std::istringstream iss(text);
    return parse_network(iss);
}

std::string write_network(const Network& net) {
    std::ostringstream out;
    out << "p rrf " << net.nodes().size() << " " << net.arcs().size() << "\n";
    for (const std::string& n : net.nodes()) {
        out << "n " << n;
        if (n == net.source())
            out << " source";
        else if (n == net.sink())
            out << " sink";
        out << "\n";
    }
    for (const Arc& a : net.arcs())
        out << "a " << a.id << " " << a.tail << " " << a.head << " "
            << format_rational(a.capacity) << "\n";
    return out.str();
}

Network read_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open instance file '" + path + "'");
    try {
        return parse_network(in);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

namespace {

// Adjacency as arc indices, out-arcs per node.
std::unordered_map<std::string, std::vector<int>> out_arcs(const Network& net) {
    std::unordered_map<std::string, std::vector<int>> out;
    for (int i = 0; i < static_cast<int>(net.arcs().size()); ++i)
        out[net.arcs()[i].tail].push_back(i);
    return out;
}

} // namespace

std::set<std::string> reachable_nodes(const Network& net, const std::string& from,
                                      const std::set<std::string>& removed_arcs) {
    auto out = out_arcs(net);
    std::set<std::string> seen{from};
    std::vector<std::string> stack{from};
    while (!stack.empty()) {
        std::string v = stack.back();
        stack.pop_back();
        auto it = out.find(v);
        if (it == out.end())
            continue;
        for (int ai : it->second) {
            const Arc& a = net.arcs()[ai];
            if (removed_arcs.count(a.id))
                continue;
            if (seen.insert(a.head).second)
                stack.push_back(a.head);
        }
    }
    return seen;
}

bool is_cut(const Network& net, const std::set<std::string>& arcs,
            const std::string& from, const std::string& to) {
    return reachable_nodes(net, from, arcs).count(to) == 0;
}

std::set<std::string> st_bridges(const Network& net) {
    std::set<std::string> bridges;
    if (is_cut(net, {}, net.source(), net.sink()))
        return bridges;
    for (const Arc& a : net.arcs())
        if (is_cut(net, {a.id}, net.source(), net.sink()))
            bridges.insert(a.id);
    return bridges;
}

std::vector<ArcPath> enumerate_simple_paths(const Network& net, const std::string& from,
                                            const std::string& to, std::size_t limit) {
    if (!net.has_node(from) || !net.has_node(to))
        throw Error("enumerate_simple_paths: unknown endpoint");
    auto out = out_arcs(net);
    // Lexicographic order of arc-id sequences: explore out-arcs sorted by id.
    for (auto& [node, list] : out)
        std::sort(list.begin(), list.end(), [&](int x, int y) {
            return net.arcs()[x].id < net.arcs()[y].id;
        });

    std::vector<ArcPath> result;
    std::set<std::string> on_path{from};
    std::vector<std::string> current;
    std::function<void(const std::string&)> dfs = [&](const std::string& v) {
        if (v == to) {
            if (result.size() >= limit)
                throw BudgetExceeded("more than " + std::to_string(limit) +
                                     " simple paths");
            result.push_back(ArcPath{current});
            return;
        }
        auto it = out.find(v);
        if (it == out.end())
            return;
        for (int ai : it->second) {
            const Arc& a = net.arcs()[ai];
            if (on_path.count(a.head))
                continue;
            on_path.insert(a.head);
            current.push_back(a.id);
            dfs(a.head);
            current.pop_back();
            on_path.erase(a.head);
        }
    };
    if (from != to)
        dfs(from);
    return result;
}

} // namespace rrflow
