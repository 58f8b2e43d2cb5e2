#pragma once

#include <map>
#include <optional>
#include <set>

#include "rrflow/network.hpp"

namespace rrflow {

// Capacity override; arcs absent from the map keep their network capacity.
class CapacityFunction {
public:
    CapacityFunction() = default;
    explicit CapacityFunction(std::map<std::string, Rational> overrides)
        : overrides_(std::move(overrides)) {
        for (const auto& [id, v] : overrides_)
            if (v < 0)
                throw Error("negative capacity override for arc '" + id + "'");
    }

    void set(const std::string& arc_id, Rational value) {
        if (value < 0)
            throw Error("negative capacity override for arc '" + arc_id + "'");
        overrides_[arc_id] = std::move(value);
    }

    const Rational& operator()(const Arc& arc) const {
        auto it = overrides_.find(arc.id);
        return it == overrides_.end() ? arc.capacity : it->second;
    }

private:
    std::map<std::string, Rational> overrides_;
};

struct MaxFlowResult {
    Rational value;
    std::map<std::string, Rational> arc_flow;
    // Nodes reachable from `from` in the final residual graph; the canonical
    // minimal source side of a minimum cut.
    std::set<std::string> min_cut_source_side;
};

// Exact Edmonds-Karp. `removed` arcs are treated as absent. `target` stops
// augmenting once the flow value reaches it.
MaxFlowResult max_flow(const Network& net, const CapacityFunction& cap,
                       const std::string& from, const std::string& to,
                       const std::set<std::string>& removed = {},
                       const std::optional<Rational>& target = std::nullopt);

// Arcs of the canonical minimum cut (delta-plus of the residual-reachable
// source side, minus removed arcs) and its capacity.
std::pair<std::set<std::string>, Rational> min_cut(
    const Network& net, const CapacityFunction& cap, const std::string& from,
    const std::string& to, const std::set<std::string>& removed = {});

} // namespace rrflow
