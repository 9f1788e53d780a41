#include "vmorl/envs/planning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "vmorl/ccs/ccs.hpp"

namespace vmorl::envs {

namespace {

constexpr std::size_t kDirectSolveLimit = 300;
constexpr std::size_t kMaxSweeps = 1000000;

void check_weight(const TabularMomdp& m, const WeightVector& w) {
    if (w.size() != m.objectives)
        throw DimensionError("value_iteration: weight has " + std::to_string(w.size()) + " entries, problem has " +
                             std::to_string(m.objectives) + " objectives");
}

std::vector<double> scalarized_rewards(const TabularMomdp& m, const WeightVector& w) {
    std::vector<double> r(m.states * m.actions);
    for (std::size_t s = 0; s < m.states; ++s)
        for (std::size_t a = 0; a < m.actions; ++a) r[s * m.actions + a] = scalarize(w, m.reward(s, a));
    return r;
}

// Returns (best value, first maximizing action) at state s.
std::pair<double, std::size_t> best_action(const TabularMomdp& m, const std::vector<double>& r,
                                           const std::vector<double>& v, std::size_t s) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t a = 0; a < m.actions; ++a) {
        const auto row = m.transition_row(s, a);
        double q = 0.0;
        for (std::size_t n = 0; n < m.states; ++n) q += row[n] * v[n];
        q = r[s * m.actions + a] + m.gamma * q;
        if (q > best) {
            best = q;
            arg = a;
        }
    }
    return {best, arg};
}

double stop_threshold(double gamma, double tol) {
    if (gamma == 0.0) return std::numeric_limits<double>::infinity();
    return tol * (1.0 - gamma) / (2.0 * gamma);
}

template <bool Parallel>
PlanningResult solve(const TabularMomdp& m, const WeightVector& w, double tol) {
    m.validate();
    check_weight(m, w);
    if (!(tol > 0.0)) throw std::invalid_argument("value_iteration: tol must be positive");
    const auto r = scalarized_rewards(m, w);
    const auto S = static_cast<std::ptrdiff_t>(m.states);
    const double threshold = stop_threshold(m.gamma, tol);

    PlanningResult out;
    std::vector<double> v(m.states, 0.0), next(m.states, 0.0);
    out.policy.assign(m.states, 0);
    for (;;) {
        double delta = 0.0;
        if constexpr (Parallel) {
#pragma omp parallel for schedule(static) reduction(max : delta)
            for (std::ptrdiff_t s = 0; s < S; ++s) {
                next[s] = m.terminal[s] ? 0.0 : best_action(m, r, v, static_cast<std::size_t>(s)).first;
                delta = std::max(delta, std::abs(next[s] - v[s]));
            }
        } else {
            for (std::ptrdiff_t s = 0; s < S; ++s) {
                next[s] = m.terminal[s] ? 0.0 : best_action(m, r, v, static_cast<std::size_t>(s)).first;
                delta = std::max(delta, std::abs(next[s] - v[s]));
            }
        }
        v.swap(next);
        ++out.sweeps;
        if (delta < threshold) break;
        if (out.sweeps >= kMaxSweeps) throw std::runtime_error("value_iteration: sweep cap reached");
    }
    for (std::size_t s = 0; s < m.states; ++s) out.policy[s] = best_action(m, r, v, s).second;
    out.scalar_values = std::move(v);
    out.value = policy_value(m, out.policy);
    return out;
}

// Solves A x = B column-by-column in place (A is n x n, B is n x k), partial pivoting.
void gaussian_solve(std::vector<double>& A, std::vector<double>& B, std::size_t n, std::size_t k) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::abs(A[row * n + col]) > std::abs(A[piv * n + col])) piv = row;
        if (std::abs(A[piv * n + col]) < 1e-14) throw std::runtime_error("evaluate_policy: singular system");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A[col * n + j], A[piv * n + j]);
            for (std::size_t j = 0; j < k; ++j) std::swap(B[col * k + j], B[piv * k + j]);
        }
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = A[row * n + col] / A[col * n + col];
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) A[row * n + j] -= f * A[col * n + j];
            for (std::size_t j = 0; j < k; ++j) B[row * k + j] -= f * B[col * k + j];
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        for (std::size_t j = 0; j < k; ++j) {
            double acc = B[col * k + j];
            for (std::size_t c = col + 1; c < n; ++c) acc -= A[col * n + c] * B[c * k + j];
            B[col * k + j] = acc / A[col * n + col];
        }
    }
}

template <bool Parallel>
std::vector<ValueVector> enumerate(const TabularMomdp& m, std::size_t grid_steps, double tol) {
    m.validate();
    if (m.states * m.actions > 10000)
        throw std::invalid_argument("enumerate_ccs: |S||A| = " + std::to_string(m.states * m.actions) +
                                    " exceeds 10000");
    if (m.objectives > 3) throw std::invalid_argument("enumerate_ccs: at most 3 objectives supported");
    if (grid_steps == 0) grid_steps = default_grid_steps(m.objectives);
    const auto grid = simplex_grid(m.objectives, grid_steps);
    std::vector<ValueVector> found(grid.size());
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
    if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t g = 0; g < n; ++g) found[g] = solve<false>(m, grid[g], tol).value;
    } else {
        for (std::ptrdiff_t g = 0; g < n; ++g) found[g] = solve<false>(m, grid[g], tol).value;
    }
    return ccs::prune_to_ccs(found);
}

}  // namespace

std::vector<double> bellman_backup(const TabularMomdp& m, const WeightVector& w, const std::vector<double>& v) {
    check_weight(m, w);
    if (v.size() != m.states) throw DimensionError("bellman_backup: value table size");
    const auto r = scalarized_rewards(m, w);
    std::vector<double> out(m.states, 0.0);
    for (std::size_t s = 0; s < m.states; ++s)
        if (!m.terminal[s]) out[s] = best_action(m, r, v, s).first;
    return out;
}

std::vector<double> evaluate_policy(const TabularMomdp& m, const std::vector<std::size_t>& policy) {
    if (policy.size() != m.states) throw DimensionError("evaluate_policy: policy size");
    for (std::size_t a : policy)
        if (a >= m.actions) throw std::out_of_range("evaluate_policy: action out of range");
    const std::size_t S = m.states, I = m.objectives;
    std::vector<double> values(S * I, 0.0);
    if (S <= kDirectSolveLimit) {
        // (I - gamma P_pi) V = R_pi, terminal rows pinned to zero.
        std::vector<double> A(S * S, 0.0);
        for (std::size_t s = 0; s < S; ++s) {
            A[s * S + s] = 1.0;
            if (m.terminal[s]) continue;
            const auto row = m.transition_row(s, policy[s]);
            for (std::size_t n = 0; n < S; ++n) A[s * S + n] -= m.gamma * row[n];
            const auto r = m.reward(s, policy[s]);
            for (std::size_t i = 0; i < I; ++i) values[s * I + i] = r[i];
        }
        gaussian_solve(A, values, S, I);
        return values;
    }
    std::vector<double> next(S * I, 0.0);
    for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double delta = 0.0;
        for (std::size_t s = 0; s < S; ++s) {
            if (m.terminal[s]) continue;
            const auto row = m.transition_row(s, policy[s]);
            const auto r = m.reward(s, policy[s]);
            for (std::size_t i = 0; i < I; ++i) {
                double acc = 0.0;
                for (std::size_t n = 0; n < S; ++n) acc += row[n] * values[n * I + i];
                next[s * I + i] = r[i] + m.gamma * acc;
                delta = std::max(delta, std::abs(next[s * I + i] - values[s * I + i]));
            }
        }
        values.swap(next);
        if (delta < 1e-13) return values;
    }
    throw std::runtime_error("evaluate_policy: did not converge");
}

ValueVector policy_value(const TabularMomdp& m, const std::vector<std::size_t>& policy) {
    const auto values = evaluate_policy(m, policy);
    std::vector<double> out(m.objectives, 0.0);
    for (std::size_t s = 0; s < m.states; ++s) {
        if (m.initial[s] == 0.0) continue;
        for (std::size_t i = 0; i < m.objectives; ++i) out[i] += m.initial[s] * values[s * m.objectives + i];
    }
    return ValueVector(std::move(out));
}

PlanningResult value_iteration(const TabularMomdp& m, const WeightVector& w, double tol) {
    return solve<true>(m, w, tol);
}

std::vector<WeightVector> simplex_grid(std::size_t objectives, std::size_t steps) {
    if (steps == 0) throw std::invalid_argument("simplex_grid: steps must be positive");
    const double h = static_cast<double>(steps);
    std::vector<WeightVector> grid;
    switch (objectives) {
        case 1: grid.push_back(WeightVector{1.0}); break;
        case 2:
            for (std::size_t k = 0; k <= steps; ++k) {
                const double a = static_cast<double>(k) / h;
                grid.emplace_back(std::vector<double>{a, static_cast<double>(steps - k) / h});
            }
            break;
        case 3:
            for (std::size_t i = 0; i <= steps; ++i)
                for (std::size_t j = 0; i + j <= steps; ++j)
                    grid.emplace_back(std::vector<double>{static_cast<double>(i) / h, static_cast<double>(j) / h,
                                                          static_cast<double>(steps - i - j) / h});
            break;
        default: throw std::invalid_argument("simplex_grid: at most 3 objectives supported");
    }
    return grid;
}

std::size_t default_grid_steps(std::size_t objectives) { return objectives <= 2 ? 1000 : 50; }

std::vector<ValueVector> enumerate_ccs(const TabularMomdp& m, std::size_t grid_steps, double tol) {
    return enumerate<true>(m, grid_steps, tol);
}

std::vector<ValueVector> enumerate_ccs(const TreasureGrid& grid, double gamma, std::size_t grid_steps, double tol) {
    return enumerate<true>(grid.to_tabular(gamma), grid_steps, tol);
}

namespace reference {

PlanningResult value_iteration(const TabularMomdp& m, const WeightVector& w, double tol) {
    return solve<false>(m, w, tol);
}

std::vector<ValueVector> enumerate_ccs(const TabularMomdp& m, std::size_t grid_steps, double tol) {
    return enumerate<false>(m, grid_steps, tol);
}

}  // namespace reference

}  // namespace vmorl::envs
