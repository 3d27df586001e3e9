#pragma once

// Dense two-phase primal simplex over an ordered field, used with exact
// rationals (certificates) and with doubles (tolerance mode). Bland's rule
// keeps pivoting deterministic and, in exact arithmetic, terminating.
//
// Problems are stated as: minimize c.x subject to row constraints
// a_i.x {<=,=,>=} b_i and x >= 0.
//
// When the constraint system is infeasible the solver returns per-row Farkas
// multipliers y with the properties (in the caller's row orientation):
//   (F1) sum_i y_i * A[i][j] <= 0 for every column j,
//   (F2) y_i <= 0 on '<=' rows and y_i >= 0 on '>=' rows,
//   (F3) sum_i y_i * b_i > 0.
// These are exactly what the membership certificate construction needs.

#include <cstddef>
#include <optional>
#include <vector>

#include "ldl/rational.hpp"

namespace ldl {

enum class Rel { LE, EQ, GE };

template <class T>
struct LpRow {
    std::vector<T> a;
    Rel rel = Rel::EQ;
    T rhs = T(0);
};

template <class T>
struct LpProblem {
    std::size_t n_vars = 0;
    std::vector<T> objective;    // empty means pure feasibility
    std::vector<LpRow<T>> rows;

    LpRow<T>& add_row(Rel rel, const T& rhs) {
        rows.push_back(LpRow<T>{std::vector<T>(n_vars, T(0)), rel, rhs});
        return rows.back();
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class T>
struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<T> x;        // primal solution (Optimal)
    T objective = T(0);
    std::vector<T> dual;     // row duals at optimality
    std::vector<T> farkas;   // infeasibility multipliers (Infeasible)
    std::size_t pivots = 0;
};

template <class T>
struct SimplexOptions {
    T pivot_eps = T(0);  // entries smaller in magnitude are treated as zero
    T rc_eps = T(0);     // reduced-cost threshold for entering columns
    T feas_eps = T(0);   // phase-1 objective above this means infeasible
    std::size_t max_pivots = 2'000'000;
};

template <class T>
SimplexOptions<T> default_simplex_options() {
    return SimplexOptions<T>{};  // exact comparisons
}

template <>
inline SimplexOptions<double> default_simplex_options<double>() {
    SimplexOptions<double> o;
    o.pivot_eps = 1e-11;
    o.rc_eps = 1e-11;
    o.feas_eps = 1e-9;
    return o;
}

template <class T>
class SimplexSolver {
public:
    explicit SimplexSolver(SimplexOptions<T> opts = default_simplex_options<T>())
        : opts_(std::move(opts)) {}

    LpResult<T> solve(const LpProblem<T>& lp) {
        build(lp);
        LpResult<T> res;

        // Phase 1: minimize the sum of artificials.
        run_phase(costs_phase1_, res.pivots);
        T phase1 = objective_value(costs_phase1_);
        if (phase1 > opts_.feas_eps) {
            res.status = LpStatus::Infeasible;
            res.farkas = recover_duals(costs_phase1_);
            return res;
        }
        drop_artificials();

        // Phase 2 (skipped for pure feasibility problems).
        if (!lp.objective.empty()) {
            if (!run_phase(costs_phase2_, res.pivots)) {
                res.status = LpStatus::Unbounded;
                return res;
            }
        }

        res.status = LpStatus::Optimal;
        res.x.assign(lp.n_vars, T(0));
        for (std::size_t r = 0; r < m_; ++r)
            if (!dead_[r] && basis_[r] < lp.n_vars) res.x[basis_[r]] = tab_[r][rhs_col_];
        res.objective = T(0);
        for (std::size_t j = 0; j < lp.n_vars; ++j)
            if (j < lp.objective.size()) res.objective += lp.objective[j] * res.x[j];
        res.dual = recover_duals(costs_phase2_);
        return res;
    }

private:
    void build(const LpProblem<T>& lp) {
        m_ = lp.rows.size();
        n_orig_ = lp.n_vars;
        flipped_.assign(m_, false);
        slack_col_.assign(m_, npos);
        art_col_.assign(m_, npos);
        dead_.assign(m_, false);

        // Column layout: originals, then slacks/surpluses, then artificials.
        std::size_t n_cols = n_orig_;
        std::vector<Rel> rel(m_);
        for (std::size_t r = 0; r < m_; ++r) {
            rel[r] = lp.rows[r].rel;
            if (lp.rows[r].rhs < T(0)) {
                flipped_[r] = true;
                if (rel[r] == Rel::LE)
                    rel[r] = Rel::GE;
                else if (rel[r] == Rel::GE)
                    rel[r] = Rel::LE;
            }
            if (rel[r] != Rel::EQ) slack_col_[r] = n_cols++;
        }
        first_art_ = n_cols;
        for (std::size_t r = 0; r < m_; ++r)
            if (rel[r] != Rel::LE) art_col_[r] = n_cols++;
        n_cols_ = n_cols;
        rhs_col_ = n_cols;

        tab_.assign(m_, std::vector<T>(n_cols + 1, T(0)));
        basis_.assign(m_, npos);
        for (std::size_t r = 0; r < m_; ++r) {
            const LpRow<T>& row = lp.rows[r];
            T sign = flipped_[r] ? T(-1) : T(1);
            for (std::size_t j = 0; j < n_orig_; ++j) tab_[r][j] = sign * row.a[j];
            tab_[r][rhs_col_] = sign * row.rhs;
            if (slack_col_[r] != npos) tab_[r][slack_col_[r]] = rel[r] == Rel::LE ? T(1) : T(-1);
            if (art_col_[r] != npos) {
                tab_[r][art_col_[r]] = T(1);
                basis_[r] = art_col_[r];
            } else {
                basis_[r] = slack_col_[r];  // LE row with nonnegative rhs
            }
        }

        costs_phase1_.assign(n_cols_, T(0));
        for (std::size_t r = 0; r < m_; ++r)
            if (art_col_[r] != npos) costs_phase1_[art_col_[r]] = T(1);
        costs_phase2_.assign(n_cols_, T(0));
        for (std::size_t j = 0; j < lp.objective.size() && j < n_orig_; ++j)
            costs_phase2_[j] = lp.objective[j];
    }

    T reduced_cost(const std::vector<T>& costs, std::size_t j) const {
        T rc = costs[j];
        for (std::size_t r = 0; r < m_; ++r) {
            if (dead_[r]) continue;
            const T& c = costs[basis_[r]];
            if (!(c == T(0))) rc -= c * tab_[r][j];
        }
        return rc;
    }

    // Returns false on unboundedness.
    bool run_phase(const std::vector<T>& costs, std::size_t& pivots) {
        for (;;) {
            if (pivots > opts_.max_pivots) throw SizeOverflow("simplex pivot budget exhausted");
            // Bland: first column with negative reduced cost.
            std::size_t enter = npos;
            for (std::size_t j = 0; j < active_cols(); ++j) {
                if (reduced_cost(costs, j) < T(0) - opts_.rc_eps) {
                    enter = j;
                    break;
                }
            }
            if (enter == npos) return true;

            std::size_t leave = npos;
            for (std::size_t r = 0; r < m_; ++r) {
                if (dead_[r]) continue;
                if (tab_[r][enter] > opts_.pivot_eps) {
                    if (leave == npos) {
                        leave = r;
                        continue;
                    }
                    // ratio comparison: rhs[r]/a[r] vs rhs[leave]/a[leave]
                    T lhs = tab_[r][rhs_col_] * tab_[leave][enter];
                    T rhs = tab_[leave][rhs_col_] * tab_[r][enter];
                    if (lhs < rhs || (lhs == rhs && basis_[r] < basis_[leave])) leave = r;
                }
            }
            if (leave == npos) return false;
            pivot(leave, enter);
            ++pivots;
        }
    }

    void pivot(std::size_t r, std::size_t j) {
        T inv = T(1) / tab_[r][j];
        for (std::size_t c = 0; c <= rhs_col_; ++c)
            if (!(tab_[r][c] == T(0))) tab_[r][c] = T(tab_[r][c] * inv);
        tab_[r][j] = T(1);
        for (std::size_t rr = 0; rr < m_; ++rr) {
            if (rr == r) continue;
            T f = tab_[rr][j];
            if (f == T(0)) continue;
            for (std::size_t c = 0; c <= rhs_col_; ++c)
                if (!(tab_[r][c] == T(0))) tab_[rr][c] -= f * tab_[r][c];
            tab_[rr][j] = T(0);
        }
        basis_[r] = j;
    }

    T objective_value(const std::vector<T>& costs) const {
        T v(0);
        for (std::size_t r = 0; r < m_; ++r)
            if (!dead_[r]) v += costs[basis_[r]] * tab_[r][rhs_col_];
        return v;
    }

    // Row duals y_i = c_B B^{-1} e_i, recovered from the reduced cost of the
    // unit column each row contributed (artificial if present, else slack),
    // then mapped back to the caller's row orientation.
    std::vector<T> recover_duals(const std::vector<T>& costs) const {
        std::vector<T> y(m_, T(0));
        for (std::size_t r = 0; r < m_; ++r) {
            T yr(0);
            if (art_col_[r] != npos)
                yr = costs[art_col_[r]] - reduced_cost(costs, art_col_[r]);
            else
                yr = T(0) - reduced_cost(costs, slack_col_[r]);
            y[r] = flipped_[r] ? T(-yr) : yr;
        }
        return y;
    }

    // After phase 1: pivot artificials out of the basis, or mark their rows
    // dead (dependent constraints reduced to 0 = 0).
    void drop_artificials() {
        artificials_disabled_ = true;
        for (std::size_t r = 0; r < m_; ++r) {
            if (dead_[r] || basis_[r] < first_art_) continue;
            std::size_t enter = npos;
            for (std::size_t j = 0; j < first_art_; ++j) {
                T v = num::abs_val(tab_[r][j]);
                if (v > opts_.pivot_eps) {
                    enter = j;
                    break;
                }
            }
            if (enter == npos)
                dead_[r] = true;
            else
                pivot(r, enter);
        }
    }

    std::size_t active_cols() const { return artificials_disabled_ ? first_art_ : n_cols_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    SimplexOptions<T> opts_;
    std::size_t m_ = 0, n_orig_ = 0, n_cols_ = 0, rhs_col_ = 0, first_art_ = 0;
    bool artificials_disabled_ = false;
    std::vector<std::vector<T>> tab_;
    std::vector<std::size_t> basis_, slack_col_, art_col_;
    std::vector<bool> flipped_;
    std::vector<bool> dead_;
    std::vector<T> costs_phase1_, costs_phase2_;
};

// Convenience wrapper for feasibility-only systems.
template <class T>
LpResult<T> solve_lp(const LpProblem<T>& lp,
                     SimplexOptions<T> opts = default_simplex_options<T>()) {
    SimplexSolver<T> solver(std::move(opts));
    return solver.solve(lp);
}

}  // namespace ldl
