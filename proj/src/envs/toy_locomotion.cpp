#include "vmorl/envs/toy_locomotion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vmorl/core/types.hpp"

namespace vmorl::envs {

void ToyLocomotionConfig::validate() const {
    if (!(half_width > 0.0)) throw std::invalid_argument("ToyLocomotion: half width must be positive");
    if (!(survive_bonus > 0.0)) throw std::invalid_argument("ToyLocomotion: survive bonus must be positive");
    if (horizon == 0) throw std::invalid_argument("ToyLocomotion: horizon must be >= 1");
    if (corner_limit == 0) throw std::invalid_argument("ToyLocomotion: corner limit must be >= 1");
    if (init_noise < 0.0 || init_noise >= half_width) throw std::invalid_argument("ToyLocomotion: bad init noise");
}

ToyLocomotion::ToyLocomotion(ToyLocomotionConfig config) : cfg_(config) { cfg_.validate(); }

std::vector<double> ToyLocomotion::reset(Rng& rng) {
    state_ = {0.0, 0.0, 0.0, 0.0};
    if (cfg_.init_noise > 0.0) {
        state_[0] = uniform(rng, -cfg_.init_noise, cfg_.init_noise);
        state_[1] = uniform(rng, -cfg_.init_noise, cfg_.init_noise);
    }
    t_ = 0;
    corner_steps_ = 0;
    return {state_.begin(), state_.end()};
}

void ToyLocomotion::set_state(std::array<double, 4> state) {
    state_ = state;
    t_ = 0;
    corner_steps_ = 0;
}

StepResult ToyLocomotion::step(std::span<const double> action, Rng&) {
    if (action.size() != 2) throw DimensionError("ToyLocomotion::step: action must have 2 components");
    const double ax = std::clamp(action[0], -1.0, 1.0);
    const double ay = std::clamp(action[1], -1.0, 1.0);
    const double ctrl = -(ax * ax + ay * ay);

    double& px = state_[0];
    double& py = state_[1];
    double& vx = state_[2];
    double& vy = state_[3];
    vx = 0.9 * vx + 0.1 * ax;
    vy = 0.9 * vy + 0.1 * ay;
    px += 0.1 * vx;
    py += 0.1 * vy;

    int contacts = 0;
    auto wall = [&](double& p, double& v) {
        if (std::abs(p) > cfg_.half_width) {
            p = std::copysign(cfg_.half_width, p);
            v = 0.0;
            ++contacts;
        }
    };
    wall(px, vx);
    wall(py, vy);

    corner_steps_ = contacts == 2 ? corner_steps_ + 1 : 0;
    ++t_;
    const bool terminated = corner_steps_ >= cfg_.corner_limit;

    StepResult out;
    out.state = {state_.begin(), state_.end()};
    out.reward = {ctrl, -static_cast<double>(contacts), terminated ? 0.0 : cfg_.survive_bonus, vx};
    out.done = terminated || t_ >= cfg_.horizon;
    return out;
}

}  // namespace vmorl::envs
