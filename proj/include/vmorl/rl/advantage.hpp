#pragma once

#include <span>
#include <vector>

namespace vmorl::rl {

/// delta_t = r_t + gamma (1 - done_t) V_{t+1} - V_t. `values` carries one
/// extra entry: the bootstrap value after the last step.
std::vector<double> td_residuals(std::span<const double> rewards, std::span<const double> values,
                                 const std::vector<bool>& dones, double gamma);

/// A_t = delta_t + gamma lambda (1 - done_t) A_{t+1}.
std::vector<double> gae(std::span<const double> deltas, const std::vector<bool>& dones, double gamma,
                        double lambda);

/// R_t = r_t + gamma (1 - done_t) R_{t+1}, with R_T = `tail_bootstrap` past the
/// last step when that step is not terminal.
std::vector<double> rewards_to_go(std::span<const double> rewards, const std::vector<bool>& dones, double gamma,
                                  double tail_bootstrap = 0.0);

/// Shifts to mean 0 and scales to unit population std (std floored at 1e-8).
void normalize_advantages(std::vector<double>& advantages);

}  // namespace vmorl::rl
