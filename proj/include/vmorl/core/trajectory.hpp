#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vmorl/core/types.hpp"

namespace vmorl {

/// One environment interaction. Rewards are kept per objective; any
/// scalarization happens downstream.
struct Transition {
    std::vector<double> state;
    std::vector<double> action;
    std::vector<double> reward;
    bool done = false;
    double log_prob = 0.0;
};

struct EpisodeRange {
    std::size_t begin = 0;
    std::size_t end = 0;  // one past the last step
    bool complete = false;  // last step carries a done flag
};

/// Rollout storage for a single environment stream. Episode boundaries are
/// derived from done flags, so they always partition the step range; a
/// trailing run without a done flag is an incomplete episode.
class TrajectoryBatch {
public:
    explicit TrajectoryBatch(std::size_t objectives);

    void push(Transition t);

    std::size_t objectives() const { return objectives_; }
    std::size_t size() const { return steps_.size(); }
    bool empty() const { return steps_.empty(); }
    const Transition& operator[](std::size_t t) const { return steps_[t]; }
    std::span<const Transition> steps() const { return steps_; }

    const std::vector<EpisodeRange>& episodes() const { return episodes_; }
    std::size_t complete_episodes() const;

    /// Reward channel `objective` as a dense sequence.
    std::vector<double> channel(std::size_t objective) const;
    std::vector<bool> dones() const;

private:
    std::size_t objectives_;
    std::vector<Transition> steps_;
    std::vector<EpisodeRange> episodes_;
};

/// Per-objective sum_t gamma^t r_t over one episode.
ValueVector discounted_return(const TrajectoryBatch& batch, std::size_t episode, double gamma);

struct ValueEstimate {
    ValueVector mean;
    ValueVector stddev;  // population standard deviation
    std::size_t episodes = 0;
};

/// Monte-Carlo estimate of the policy value over the complete episodes in
/// every batch.
ValueEstimate empirical_value_estimate(std::span<const TrajectoryBatch> batches, double gamma);
ValueEstimate empirical_value_estimate(const TrajectoryBatch& batch, double gamma);

/// Mean and population std of a set of return vectors.
ValueEstimate summarize_returns(std::span<const ValueVector> returns);

}  // namespace vmorl
