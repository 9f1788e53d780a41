#include "vmorl/ccs/simplex_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vmorl::ccs {
namespace {

constexpr std::size_t kMaxPivots = 50000;

struct Tableau {
    std::size_t rows = 0;
    std::size_t cols = 0;  // excludes the rhs column
    std::vector<double> a;  // rows x (cols + 1)
    std::vector<std::size_t> basis;

    double& at(std::size_t r, std::size_t c) { return a[r * (cols + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return a[r * (cols + 1) + c]; }
    double& rhs(std::size_t r) { return at(r, cols); }
    double rhs(std::size_t r) const { return at(r, cols); }

    void pivot(std::size_t pr, std::size_t pc) {
        const double p = at(pr, pc);
        for (std::size_t c = 0; c <= cols; ++c) at(pr, c) /= p;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr) continue;
            const double f = at(r, pc);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c <= cols; ++c) at(r, c) -= f * at(pr, c);
        }
        basis[pr] = pc;
    }

    void erase_row(std::size_t r) {
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(r * (cols + 1)),
                a.begin() + static_cast<std::ptrdiff_t>((r + 1) * (cols + 1)));
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
        --rows;
    }
};

enum class RunResult { optimal, unbounded };

// Maximizes cost . x over the current basic feasible solution. Columns at or
// beyond `allowed_cols` never enter the basis.
RunResult run_simplex(Tableau& t, const std::vector<double>& cost, std::size_t allowed_cols, double tol) {
    for (std::size_t iter = 0; iter < kMaxPivots; ++iter) {
        std::size_t entering = t.cols;
        for (std::size_t j = 0; j < allowed_cols; ++j) {
            double reduced = cost[j];
            for (std::size_t r = 0; r < t.rows; ++r) reduced -= cost[t.basis[r]] * t.at(r, j);
            if (reduced > tol) {
                entering = j;
                break;
            }
        }
        if (entering == t.cols) return RunResult::optimal;

        std::size_t leaving = t.rows;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < t.rows; ++r) {
            const double coef = t.at(r, entering);
            if (coef <= tol) continue;
            const double ratio = t.rhs(r) / coef;
            if (ratio < best_ratio - tol ||
                (std::abs(ratio - best_ratio) <= tol && leaving < t.rows && t.basis[r] < t.basis[leaving])) {
                best_ratio = std::min(ratio, best_ratio);
                leaving = r;
            }
        }
        if (leaving == t.rows) return RunResult::unbounded;
        t.pivot(leaving, entering);
    }
    throw std::runtime_error("solve_lp: pivot limit exceeded");
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, double tol) {
    const std::size_t n = lp.objective.size();
    if (!lp.free_variables.empty() && lp.free_variables.size() != n)
        throw std::invalid_argument("solve_lp: free_variables size mismatch");
    for (const auto& c : lp.constraints)
        if (c.coeffs.size() != n) throw std::invalid_argument("solve_lp: constraint width mismatch");

    // Structural columns: one per variable plus a negative part for free ones.
    std::vector<std::size_t> neg_col(n, static_cast<std::size_t>(-1));
    std::size_t structural = n;
    for (std::size_t j = 0; j < n; ++j)
        if (!lp.free_variables.empty() && lp.free_variables[j]) neg_col[j] = structural++;

    const std::size_t m = lp.constraints.size();
    std::vector<Relation> rel(m);
    std::vector<double> sign(m, 1.0);
    std::size_t slack_count = 0, artificial_count = 0;
    for (std::size_t r = 0; r < m; ++r) {
        rel[r] = lp.constraints[r].relation;
        if (lp.constraints[r].rhs < 0.0) {
            sign[r] = -1.0;
            if (rel[r] == Relation::less_equal) rel[r] = Relation::greater_equal;
            else if (rel[r] == Relation::greater_equal) rel[r] = Relation::less_equal;
        }
        if (rel[r] != Relation::equal) ++slack_count;
        if (rel[r] != Relation::less_equal) ++artificial_count;
    }

    Tableau t;
    t.rows = m;
    t.cols = structural + slack_count + artificial_count;
    t.a.assign(m * (t.cols + 1), 0.0);
    t.basis.assign(m, 0);
    const std::size_t first_artificial = structural + slack_count;

    std::size_t next_slack = structural, next_art = first_artificial;
    for (std::size_t r = 0; r < m; ++r) {
        const auto& c = lp.constraints[r];
        for (std::size_t j = 0; j < n; ++j) {
            t.at(r, j) = sign[r] * c.coeffs[j];
            if (neg_col[j] != static_cast<std::size_t>(-1)) t.at(r, neg_col[j]) = -sign[r] * c.coeffs[j];
        }
        t.rhs(r) = sign[r] * c.rhs;
        if (rel[r] == Relation::less_equal) {
            t.at(r, next_slack) = 1.0;
            t.basis[r] = next_slack++;
        } else {
            if (rel[r] == Relation::greater_equal) t.at(r, next_slack++) = -1.0;
            t.at(r, next_art) = 1.0;
            t.basis[r] = next_art++;
        }
    }

    LpSolution sol;
    if (artificial_count > 0) {
        std::vector<double> phase1(t.cols, 0.0);
        for (std::size_t j = first_artificial; j < t.cols; ++j) phase1[j] = -1.0;
        run_simplex(t, phase1, t.cols, tol);
        double infeasibility = 0.0, scale = 1.0;
        for (std::size_t r = 0; r < t.rows; ++r) {
            if (t.basis[r] >= first_artificial) infeasibility += t.rhs(r);
            scale = std::max(scale, std::abs(t.rhs(r)));
        }
        if (infeasibility > tol * 100.0 * scale) {
            sol.status = LpStatus::infeasible;
            return sol;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        for (std::size_t r = 0; r < t.rows;) {
            if (t.basis[r] < first_artificial) {
                ++r;
                continue;
            }
            std::size_t pc = first_artificial;
            for (std::size_t j = 0; j < first_artificial; ++j)
                if (std::abs(t.at(r, j)) > tol) {
                    pc = j;
                    break;
                }
            if (pc == first_artificial) {
                t.erase_row(r);
            } else {
                t.pivot(r, pc);
                ++r;
            }
        }
    }

    std::vector<double> cost(t.cols, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        cost[j] = lp.objective[j];
        if (neg_col[j] != static_cast<std::size_t>(-1)) cost[neg_col[j]] = -lp.objective[j];
    }
    if (run_simplex(t, cost, first_artificial, tol) == RunResult::unbounded) {
        sol.status = LpStatus::unbounded;
        return sol;
    }

    std::vector<double> column_value(t.cols, 0.0);
    for (std::size_t r = 0; r < t.rows; ++r) column_value[t.basis[r]] = t.rhs(r);
    sol.x.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        sol.x[j] = column_value[j];
        if (neg_col[j] != static_cast<std::size_t>(-1)) sol.x[j] -= column_value[neg_col[j]];
    }
    sol.value = 0.0;
    for (std::size_t j = 0; j < n; ++j) sol.value += lp.objective[j] * sol.x[j];
    sol.status = LpStatus::optimal;
    return sol;
}

}  // namespace vmorl::ccs
