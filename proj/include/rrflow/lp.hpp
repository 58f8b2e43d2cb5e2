#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rrflow/rational.hpp"

namespace rrflow {

enum class Rel { LessEq, Eq, GreaterEq };
enum class Sense { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

using SparseRow = std::vector<std::pair<int, Rational>>;

struct LpConstraint {
    SparseRow row;
    Rel rel;
    Rational rhs;
};

// LP over nonnegative variables. Coefficient rows reference declared
// variables by index.
struct LinearProgram {
    std::vector<std::string> variables;
    std::vector<LpConstraint> constraints;
    SparseRow objective;
    Sense sense = Sense::Maximize;

    int add_variable(const std::string& name) {
        variables.push_back(name);
        return static_cast<int>(variables.size()) - 1;
    }
    void add_constraint(SparseRow row, Rel rel, Rational rhs) {
        check_row(row);
        constraints.push_back(LpConstraint{std::move(row), rel, std::move(rhs)});
    }
    void set_objective(SparseRow row, Sense s) {
        check_row(row);
        objective = std::move(row);
        sense = s;
    }

    // Human-readable listing for inspection.
    std::string dump() const;

private:
    void check_row(const SparseRow& row) const {
        for (const auto& [idx, coef] : row)
            if (idx < 0 || idx >= static_cast<int>(variables.size()))
                throw Error("coefficient references undeclared variable");
    }
};

struct LpOutcome {
    LpStatus status = LpStatus::Optimal;
    Rational value;
    std::vector<Rational> assignment; // one value per declared variable
};

// Exact two-phase primal simplex (Dantzig rule with Bland fallback for
// anti-cycling). threads <= 0 uses all available; 1 is the serial reference
// path. Results are identical for any thread count.
LpOutcome solve_lp(const LinearProgram& lp, int threads = 1);

} // namespace rrflow
