#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "vmorl/core/rng.hpp"
#include "vmorl/core/trajectory.hpp"
#include "vmorl/envs/environment.hpp"
#include "vmorl/nn/gaussian_policy.hpp"

namespace vmorl::rl {

/// Transitions gathered by one environment copy during one update.
struct CopyRollout {
    TrajectoryBatch batch;
    std::vector<double> next_state;  // observation after the final step (post-reset when it ended an episode)
};

/// One environment instance plus its private random stream.
struct EnvWorker {
    std::unique_ptr<envs::Environment> env;
    Rng rng;
};

std::vector<EnvWorker> make_workers(const envs::EnvFactory& factory, std::size_t copies, std::uint64_t seed);

/// Resets every worker, then runs `steps` sampled-action steps per worker,
/// resetting after each episode end. Workers run in parallel; results do not
/// depend on the thread count.
std::vector<CopyRollout> collect_rollouts(std::vector<EnvWorker>& workers, const nn::GaussianPolicy& policy,
                                          std::size_t steps);

namespace reference {
std::vector<CopyRollout> collect_rollouts(std::vector<EnvWorker>& workers, const nn::GaussianPolicy& policy,
                                          std::size_t steps);
}

struct EvaluationEpisode {
    ValueVector undiscounted;
    ValueVector discounted;
    std::size_t length = 0;
};

/// Runs `episodes` deterministic (mean-action) episodes; episode e uses a
/// fresh environment seeded with derive_seed(seed, e).
std::vector<EvaluationEpisode> evaluate_policy(const envs::EnvFactory& factory, const nn::GaussianPolicy& policy,
                                               std::size_t episodes, std::uint64_t seed, double gamma);

}  // namespace vmorl::rl
