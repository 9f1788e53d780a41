#pragma once

#include <array>
#include <cstddef>

#include "vmorl/envs/environment.hpp"

namespace vmorl::envs {

struct ToyLocomotionConfig {
    double half_width = 5.0;
    double survive_bonus = 1.0;
    std::size_t horizon = 200;
    double init_noise = 0.1;       // uniform position jitter on reset
    std::size_t corner_limit = 10; // consecutive two-wall contacts before termination

    void validate() const;
};

/// Planar point mass with four reward channels in the order
/// (Rctrl, Rcont, Rsurv, Rfor):
///   Rctrl = -|a|^2 for the clamped action, Rcont = -1 per wall in contact,
///   Rsurv = survive bonus on every non-terminating step, Rfor = x-velocity.
/// Dynamics: v <- 0.9 v + 0.1 a, p <- p + 0.1 v; a wall clamps the position
/// and zeroes the velocity component pushing into it.
class ToyLocomotion final : public Environment {
public:
    explicit ToyLocomotion(ToyLocomotionConfig config = {});

    std::size_t state_dim() const override { return 4; }
    std::size_t action_dim() const override { return 2; }
    std::size_t objectives() const override { return 4; }
    std::size_t horizon() const override { return cfg_.horizon; }
    std::vector<std::string> objective_names() const override { return {"Rctrl", "Rcont", "Rsurv", "Rfor"}; }

    std::vector<double> reset(Rng& rng) override;
    StepResult step(std::span<const double> action, Rng& rng) override;

    /// Puts the body at an explicit state (for tests).
    void set_state(std::array<double, 4> state);
    std::array<double, 4> state() const { return state_; }

private:
    ToyLocomotionConfig cfg_;
    std::array<double, 4> state_{};  // px, py, vx, vy
    std::size_t t_ = 0;
    std::size_t corner_steps_ = 0;
};

}  // namespace vmorl::envs
