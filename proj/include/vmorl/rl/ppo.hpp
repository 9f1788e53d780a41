#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vmorl/core/rng.hpp"
#include "vmorl/nn/adam.hpp"
#include "vmorl/nn/gaussian_policy.hpp"

namespace vmorl::rl {

struct PpoConfig {
    double clip = 0.2;
    std::size_t epochs = 10;
    std::size_t minibatch = 64;

    void validate() const;
};

struct PpoSample {
    std::vector<double> state;
    std::vector<double> action;
    double old_log_prob = 0.0;
    double advantage = 0.0;
};

/// min(r A, clip(r, 1 - eps, 1 + eps) A).
double clipped_objective(double ratio, double advantage, double clip);

/// d clipped_objective / d log pi: r A while the unclipped branch is the
/// minimum, 0 once the clipped branch takes over.
double clipped_objective_slope(double ratio, double advantage, double clip);

/// Mean clipped objective over `samples` under `policy`.
double surrogate(const nn::GaussianPolicy& policy, std::span<const PpoSample> samples, double clip);

/// Gradient of `surrogate` with respect to the flat policy parameters.
std::vector<double> surrogate_gradient(const nn::GaussianPolicy& policy, std::span<const PpoSample> samples,
                                       double clip);

struct PpoDiagnostics {
    double surrogate_before = 0.0;
    double surrogate_after = 0.0;
    double clip_fraction = 0.0;  // share of samples with |r - 1| > clip after the update
    double approx_kl = 0.0;      // mean of (r - 1) - log r after the update
    std::size_t steps = 0;
    bool aborted = false;        // a non-finite loss or gradient rolled the update back
};

/// Epochs of shuffled minibatch ascent on the clipped surrogate. On a
/// non-finite value the policy and optimizer are restored to their entry state.
PpoDiagnostics ppo_actor_update(nn::GaussianPolicy& policy, nn::AdamState& optimizer,
                                std::span<const PpoSample> samples, const PpoConfig& cfg, Rng& rng);

}  // namespace vmorl::rl
