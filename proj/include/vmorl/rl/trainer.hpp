#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vmorl/ccs/aols.hpp"
#include "vmorl/core/types.hpp"
#include "vmorl/envs/environment.hpp"
#include "vmorl/nn/gaussian_policy.hpp"
#include "vmorl/rl/critic.hpp"

namespace vmorl::rl {

struct TrainerConfig {
    double clip = 0.2;
    double gamma = 0.99;
    double lambda = 0.95;
    std::size_t steps_per_update = 2048;  // per environment copy
    std::size_t env_copies = 8;
    std::size_t epochs = 10;
    std::size_t minibatch = 64;
    double learning_rate = 3e-4;
    double aols_epsilon = 1e-4;
    std::size_t aols_max_iterations = 64;
    double termination_epsilon = 1e-3;       // 0 disables early stopping
    std::size_t objectives = 0;              // 0: use the environment's count
    std::size_t updates_per_objective = 10;  // K
    std::vector<std::size_t> hidden{64, 64};
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on a violated invariant.
    void validate() const;
};

struct UpdateMetrics {
    std::size_t update = 0;     // global index, from 0
    std::size_t objective = 0;  // objective sequence index i
    std::size_t iteration = 0;  // k within the sequence
    std::vector<double> mean_return;  // undiscounted, complete episodes only
    std::size_t episodes = 0;
    double delta_r = 0.0;
    double delta_max = 0.0;
    double clip_fraction = 0.0;
    double approx_kl = 0.0;
    WeightVector row;
};

struct TrainResult {
    nn::GaussianPolicy actor;
    CriticBank critics;
    Iorm iorm = Iorm::identity(1);
    std::vector<UpdateMetrics> metrics;
    ccs::AolsResult last_aols;                       // from the final update
    std::vector<nn::GaussianPolicy> sequence_actors; // actor at the end of each objective sequence
    std::vector<std::size_t> sequence_updates;       // updates spent per sequence
    bool aborted = false;
    std::string error;
};

/// Invoked after every update with the metrics just recorded.
using UpdateCallback = std::function<void(const UpdateMetrics&)>;

/// Multi-objective actor-critic training with one actor, one critic per
/// objective and an IORM row chosen per objective sequence. A thrown
/// environment error ends the run with `aborted` set and the last good actor.
TrainResult train(const envs::EnvFactory& factory, const TrainerConfig& cfg, const UpdateCallback& on_update = {});

/// Plain single-objective PPO over a one-channel environment, written without
/// any of the multi-objective machinery. With I = 1 `train` must match it bit for bit.
TrainResult train_single_objective(const envs::EnvFactory& factory, const TrainerConfig& cfg);

/// oracle(w) for AOLS during training: the return vector in `pool` maximizing
/// w . G (lowest index on ties), or `fallback` when the pool is empty.
ccs::ValueOracle episode_pool_oracle(std::vector<ValueVector> pool, ValueVector fallback);

}  // namespace vmorl::rl
