#pragma once

#include <cstddef>
#include <vector>

#include "vmorl/core/types.hpp"
#include "vmorl/envs/tabular.hpp"
#include "vmorl/envs/treasure_grid.hpp"

namespace vmorl::envs {

struct PlanningResult {
    std::vector<std::size_t> policy;     // greedy action per state
    ValueVector value;                   // per-objective value under the initial distribution
    std::vector<double> scalar_values;   // converged w-scalarized state values
    std::size_t sweeps = 0;
};

/// Solves the w-scalarized MDP by Jacobi value iteration, stopping once
/// |V_k+1 - V_k|_inf < tol (1 - gamma) / (2 gamma) so the greedy policy is
/// tol-optimal, then evaluates that policy exactly on every reward channel.
PlanningResult value_iteration(const TabularMomdp& m, const WeightVector& w, double tol = 1e-10);

/// One application of the scalarized Bellman optimality operator.
std::vector<double> bellman_backup(const TabularMomdp& m, const WeightVector& w, const std::vector<double>& v);

/// Per-state, per-objective values of a deterministic policy, laid out [s][i].
/// Direct linear solve up to 300 states, fixed-point iteration above that.
std::vector<double> evaluate_policy(const TabularMomdp& m, const std::vector<std::size_t>& policy);

/// Initial-distribution average of evaluate_policy.
ValueVector policy_value(const TabularMomdp& m, const std::vector<std::size_t>& policy);

/// Weights on the simplex with the given number of steps per unit:
/// steps + 1 points for two objectives, the barycentric lattice for three.
std::vector<WeightVector> simplex_grid(std::size_t objectives, std::size_t steps);

/// Default grid steps: 1000 (1001 points) for two objectives, 50 for three.
std::size_t default_grid_steps(std::size_t objectives);

/// Brute-force CCS: value_iteration at every grid weight, then pruning.
/// Throws std::invalid_argument when |S||A| > 1e4 or I > 3.
std::vector<ValueVector> enumerate_ccs(const TabularMomdp& m, std::size_t grid_steps = 0, double tol = 1e-10);
std::vector<ValueVector> enumerate_ccs(const TreasureGrid& grid, double gamma, std::size_t grid_steps = 0,
                                       double tol = 1e-10);

namespace reference {

PlanningResult value_iteration(const TabularMomdp& m, const WeightVector& w, double tol = 1e-10);
std::vector<ValueVector> enumerate_ccs(const TabularMomdp& m, std::size_t grid_steps = 0, double tol = 1e-10);

}  // namespace reference

}  // namespace vmorl::envs
