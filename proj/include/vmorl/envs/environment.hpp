#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "vmorl/core/rng.hpp"

namespace vmorl::envs {

struct StepResult {
    std::vector<double> state;
    std::vector<double> reward;  // one entry per objective
    bool done = false;
};

/// Continuous-action interface the trainer talks to. Episodes end on a
/// terminal transition or when the horizon is reached.
class Environment {
public:
    virtual ~Environment() = default;

    virtual std::size_t state_dim() const = 0;
    virtual std::size_t action_dim() const = 0;
    virtual std::size_t objectives() const = 0;
    virtual std::size_t horizon() const = 0;
    virtual std::vector<std::string> objective_names() const;

    virtual std::vector<double> reset(Rng& rng) = 0;
    virtual StepResult step(std::span<const double> action, Rng& rng) = 0;
};

using EnvFactory = std::function<std::unique_ptr<Environment>()>;

struct DiscreteStep {
    std::size_t state = 0;
    std::vector<double> reward;
    bool done = false;
};

/// Finite state/action problems (tabular MOMDPs, grid worlds).
class DiscreteEnvironment {
public:
    virtual ~DiscreteEnvironment() = default;

    virtual std::size_t num_states() const = 0;
    virtual std::size_t num_actions() const = 0;
    virtual std::size_t objectives() const = 0;
    virtual std::size_t horizon() const = 0;
    virtual std::vector<std::string> objective_names() const;

    virtual std::size_t reset(Rng& rng) = 0;
    /// Throws std::out_of_range for an action outside [0, num_actions).
    virtual DiscreteStep step(std::size_t action, Rng& rng) = 0;
};

/// Presents a discrete problem to the continuous-action trainer: states are
/// one-hot encoded, and the action is the index of the largest component of
/// the |A|-dimensional action vector.
class ArgmaxAdapter final : public Environment {
public:
    explicit ArgmaxAdapter(std::unique_ptr<DiscreteEnvironment> inner);

    std::size_t state_dim() const override { return inner_->num_states(); }
    std::size_t action_dim() const override { return inner_->num_actions(); }
    std::size_t objectives() const override { return inner_->objectives(); }
    std::size_t horizon() const override { return inner_->horizon(); }
    std::vector<std::string> objective_names() const override { return inner_->objective_names(); }

    std::vector<double> reset(Rng& rng) override;
    StepResult step(std::span<const double> action, Rng& rng) override;

    static std::size_t argmax(std::span<const double> action);

private:
    std::vector<double> one_hot(std::size_t s) const;
    std::unique_ptr<DiscreteEnvironment> inner_;
};

/// Exposes a subset of the wrapped environment's reward channels, in the
/// given order. Used for single-objective baselines and I=1 runs.
class ChannelSelect final : public Environment {
public:
    ChannelSelect(std::unique_ptr<Environment> inner, std::vector<std::size_t> channels);

    std::size_t state_dim() const override { return inner_->state_dim(); }
    std::size_t action_dim() const override { return inner_->action_dim(); }
    std::size_t objectives() const override { return channels_.size(); }
    std::size_t horizon() const override { return inner_->horizon(); }
    std::vector<std::string> objective_names() const override;

    std::vector<double> reset(Rng& rng) override { return inner_->reset(rng); }
    StepResult step(std::span<const double> action, Rng& rng) override;

private:
    std::unique_ptr<Environment> inner_;
    std::vector<std::size_t> channels_;
};

}  // namespace vmorl::envs
