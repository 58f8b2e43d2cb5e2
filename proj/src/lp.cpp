#include "rrflow/lp.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rrflow {

std::string LinearProgram::dump() const {
    std::ostringstream out;
    out << (sense == Sense::Maximize ? "max" : "min");
    for (const auto& [idx, coef] : objective)
        out << " " << (coef >= 0 ? "+" : "") << format_rational(coef) << "*"
            << variables[idx];
    out << "\n";
    for (const LpConstraint& c : constraints) {
        out << " ";
        for (const auto& [idx, coef] : c.row)
            out << " " << (coef >= 0 ? "+" : "") << format_rational(coef) << "*"
                << variables[idx];
        switch (c.rel) {
        case Rel::LessEq: out << " <= "; break;
        case Rel::Eq: out << " == "; break;
        case Rel::GreaterEq: out << " >= "; break;
        }
        out << format_rational(c.rhs) << "\n";
    }
    return out.str();
}

namespace {

class Tableau {
public:
    Tableau(const LinearProgram& lp, int threads) : lp_(lp), threads_(threads) {
#ifdef _OPENMP
        if (threads_ <= 0)
            threads_ = omp_get_max_threads();
#else
        threads_ = 1;
#endif
        build();
    }

    LpOutcome solve() {
        if (has_artificials_) {
            LpStatus st = run_phase(true);
            if (st != LpStatus::Optimal || phase_value() != 0)
                return LpOutcome{LpStatus::Infeasible, Rational(0), {}};
            drive_out_artificials();
        }
        LpStatus st = run_phase(false);
        if (st == LpStatus::Unbounded)
            return LpOutcome{LpStatus::Unbounded, Rational(0), {}};

        LpOutcome out;
        out.status = LpStatus::Optimal;
        out.assignment.assign(num_vars_, Rational(0));
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < num_vars_)
                out.assignment[basis_[i]] = rows_[i][total_cols_];
        for (const auto& [idx, coef] : lp_.objective)
            out.value += coef * out.assignment[idx];
        verify(out);
        return out;
    }

private:
    const LinearProgram& lp_;
    int threads_;
    int num_vars_ = 0;   // declared variables
    int total_cols_ = 0; // declared + slack/surplus + artificial
    int first_artificial_ = 0;
    int m_ = 0;
    bool has_artificials_ = false;
    std::vector<std::vector<Rational>> rows_; // m x (total_cols_ + 1), last is rhs
    std::vector<Rational> cost_;              // reduced costs, total_cols_ + 1
    std::vector<int> basis_;

    void build() {
        num_vars_ = static_cast<int>(lp_.variables.size());
        m_ = static_cast<int>(lp_.constraints.size());
        int num_slacks = 0, num_arts = 0;
        for (const LpConstraint& c : lp_.constraints) {
            bool flip = c.rhs < 0;
            Rel rel = c.rel;
            if (flip && rel != Rel::Eq)
                rel = (rel == Rel::LessEq) ? Rel::GreaterEq : Rel::LessEq;
            if (rel != Rel::Eq)
                ++num_slacks;
            if (rel != Rel::LessEq)
                ++num_arts;
        }
        first_artificial_ = num_vars_ + num_slacks;
        total_cols_ = first_artificial_ + num_arts;
        has_artificials_ = num_arts > 0;

        rows_.assign(m_, std::vector<Rational>(total_cols_ + 1, Rational(0)));
        basis_.assign(m_, -1);
        int slack = num_vars_, art = first_artificial_;
        for (int i = 0; i < m_; ++i) {
            const LpConstraint& c = lp_.constraints[i];
            bool flip = c.rhs < 0;
            Rational sign(flip ? -1 : 1);
            for (const auto& [idx, coef] : c.row)
                rows_[i][idx] += sign * coef;
            rows_[i][total_cols_] = sign * c.rhs;
            Rel rel = c.rel;
            if (flip && rel != Rel::Eq)
                rel = (rel == Rel::LessEq) ? Rel::GreaterEq : Rel::LessEq;
            if (rel == Rel::LessEq) {
                rows_[i][slack] = 1;
                basis_[i] = slack++;
            } else if (rel == Rel::GreaterEq) {
                rows_[i][slack] = -1;
                ++slack;
                rows_[i][art] = 1;
                basis_[i] = art++;
            } else {
                rows_[i][art] = 1;
                basis_[i] = art++;
            }
        }
    }

    Rational phase_value() const { return -cost_[total_cols_]; }

    void set_phase_cost(bool phase1) {
        cost_.assign(total_cols_ + 1, Rational(0));
        if (phase1) {
            for (int j = first_artificial_; j < total_cols_; ++j)
                cost_[j] = 1;
        } else {
            // Minimization form; negate for maximization.
            Rational sign(lp_.sense == Sense::Maximize ? -1 : 1);
            for (const auto& [idx, coef] : lp_.objective)
                cost_[idx] += sign * coef;
        }
        // Price out the current basis.
        for (int i = 0; i < m_; ++i) {
            const Rational& cb = cost_[basis_[i]];
            if (cb == 0)
                continue;
            Rational factor = cb;
            for (int j = 0; j <= total_cols_; ++j)
                if (rows_[i][j] != 0)
                    cost_[j] -= factor * rows_[i][j];
        }
    }

    // One simplex phase; returns Optimal or Unbounded.
    LpStatus run_phase(bool phase1) {
        set_phase_cost(phase1);
        int degenerate_streak = 0;
        const int bland_threshold = 50;
        for (;;) {
            bool bland = degenerate_streak >= bland_threshold;
            int enter = -1;
            if (bland) {
                for (int j = 0; j < total_cols_; ++j) {
                    if (!phase1 && j >= first_artificial_)
                        break;
                    if (cost_[j] < 0) {
                        enter = j;
                        break;
                    }
                }
            } else {
                const Rational* best = nullptr;
                int limit = phase1 ? total_cols_ : first_artificial_;
                for (int j = 0; j < limit; ++j)
                    if (cost_[j] < 0 && (!best || cost_[j] < *best)) {
                        best = &cost_[j];
                        enter = j;
                    }
            }
            if (enter < 0)
                return LpStatus::Optimal;

            int leave = -1;
            Rational best_ratio;
            for (int i = 0; i < m_; ++i) {
                const Rational& a = rows_[i][enter];
                if (a <= 0)
                    continue;
                Rational ratio = rows_[i][total_cols_] / a;
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0)
                return LpStatus::Unbounded;
            if (best_ratio == 0)
                ++degenerate_streak;
            else
                degenerate_streak = 0;
            pivot(leave, enter);
        }
    }

    void pivot(int row, int col) {
        std::vector<Rational>& prow = rows_[row];
        Rational p = prow[col];
        if (p != 1)
            for (int j = 0; j <= total_cols_; ++j)
                if (prow[j] != 0)
                    prow[j] /= p;
        basis_[row] = col;

        auto eliminate = [&](std::vector<Rational>& r) {
            const Rational& f = r[col];
            if (f == 0)
                return;
            Rational factor = f;
            for (int j = 0; j <= total_cols_; ++j)
                if (prow[j] != 0)
                    r[j] -= factor * prow[j];
        };

#ifdef _OPENMP
        if (threads_ > 1 && m_ >= 64) {
#pragma omp parallel for schedule(static) num_threads(threads_)
            for (int i = 0; i < m_; ++i)
                if (i != row)
                    eliminate(rows_[i]);
        } else
#endif
        {
            for (int i = 0; i < m_; ++i)
                if (i != row)
                    eliminate(rows_[i]);
        }
        eliminate(cost_);
    }

    void drive_out_artificials() {
        for (int i = m_ - 1; i >= 0; --i) {
            if (basis_[i] < first_artificial_)
                continue;
            int col = -1;
            for (int j = 0; j < first_artificial_; ++j)
                if (rows_[i][j] != 0) {
                    col = j;
                    break;
                }
            if (col >= 0) {
                pivot(i, col);
            } else {
                // Redundant row.
                rows_.erase(rows_.begin() + i);
                basis_.erase(basis_.begin() + i);
                --m_;
            }
        }
    }

    void verify(const LpOutcome& out) const {
        for (const LpConstraint& c : lp_.constraints) {
            Rational lhs(0);
            for (const auto& [idx, coef] : c.row)
                lhs += coef * out.assignment[idx];
            bool ok = (c.rel == Rel::LessEq && lhs <= c.rhs) ||
                      (c.rel == Rel::Eq && lhs == c.rhs) ||
                      (c.rel == Rel::GreaterEq && lhs >= c.rhs);
            if (!ok)
                throw Error("simplex internal error: optimal point violates a constraint");
        }
        for (const Rational& v : out.assignment)
            if (v < 0)
                throw Error("simplex internal error: negative variable value");
    }
};

} // namespace

LpOutcome solve_lp(const LinearProgram& lp, int threads) {
    Tableau tab(lp, threads);
    return tab.solve();
}

} // namespace rrflow
