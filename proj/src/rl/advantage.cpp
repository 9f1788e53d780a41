#include "vmorl/rl/advantage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vmorl/core/types.hpp"

namespace vmorl::rl {

namespace {
void check_gamma(double gamma, const char* what) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument(std::string(what) + ": gamma must lie in [0,1]");
}
}  // namespace

std::vector<double> td_residuals(std::span<const double> rewards, std::span<const double> values,
                                 const std::vector<bool>& dones, double gamma) {
    check_gamma(gamma, "td_residuals");
    if (values.size() != rewards.size() + 1)
        throw DimensionError("td_residuals: expected " + std::to_string(rewards.size() + 1) + " values, got " +
                             std::to_string(values.size()));
    if (dones.size() != rewards.size()) throw DimensionError("td_residuals: done flag count");
    std::vector<double> out(rewards.size());
    for (std::size_t t = 0; t < rewards.size(); ++t)
        out[t] = rewards[t] + (dones[t] ? 0.0 : gamma * values[t + 1]) - values[t];
    return out;
}

std::vector<double> gae(std::span<const double> deltas, const std::vector<bool>& dones, double gamma,
                        double lambda) {
    check_gamma(gamma, "gae");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("gae: lambda must lie in [0,1]");
    if (dones.size() != deltas.size()) throw DimensionError("gae: done flag count");
    std::vector<double> out(deltas.size());
    double next = 0.0;
    for (std::size_t t = deltas.size(); t-- > 0;) {
        next = deltas[t] + (dones[t] ? 0.0 : gamma * lambda * next);
        out[t] = next;
    }
    return out;
}

std::vector<double> rewards_to_go(std::span<const double> rewards, const std::vector<bool>& dones, double gamma,
                                  double tail_bootstrap) {
    check_gamma(gamma, "rewards_to_go");
    if (dones.size() != rewards.size()) throw DimensionError("rewards_to_go: done flag count");
    std::vector<double> out(rewards.size());
    double next = tail_bootstrap;
    for (std::size_t t = rewards.size(); t-- > 0;) {
        next = rewards[t] + (dones[t] ? 0.0 : gamma * next);
        out[t] = next;
    }
    return out;
}

void normalize_advantages(std::vector<double>& advantages) {
    if (advantages.empty()) return;
    const double n = static_cast<double>(advantages.size());
    double mean = 0.0;
    for (double a : advantages) mean += a;
    mean /= n;
    double var = 0.0;
    for (double a : advantages) var += (a - mean) * (a - mean);
    const double sd = std::max(std::sqrt(var / n), 1e-8);
    for (double& a : advantages) a = (a - mean) / sd;
}

}  // namespace vmorl::rl
