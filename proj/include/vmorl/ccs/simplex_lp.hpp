#pragma once

#include <cstddef>
#include <vector>

namespace vmorl::ccs {

enum class Relation { less_equal, equal, greater_equal };

struct LinearConstraint {
    std::vector<double> coeffs;
    Relation relation = Relation::less_equal;
    double rhs = 0.0;
};

/// maximize objective . x subject to the constraints. Variables are
/// non-negative unless flagged in `free_variables`.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<LinearConstraint> constraints;
    std::vector<bool> free_variables;  // empty means all non-negative
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    double value = 0.0;
    std::vector<double> x;
};

/// Dense two-phase tableau simplex with Bland's anti-cycling rule. Meant for
/// the small programs of the CCS machinery (dozens of rows, a handful of
/// variables).
LpSolution solve_lp(const LinearProgram& lp, double tol = 1e-9);

}  // namespace vmorl::ccs
