#include "vmorl/nn/adam.hpp"

#include <cmath>
#include <stdexcept>

#include "vmorl/core/types.hpp"

namespace vmorl::nn {

AdamState::AdamState(std::size_t parameters, AdamConfig config)
    : config_(config), m_(parameters, 0.0), v_(parameters, 0.0) {}

void AdamState::step(std::span<double> params, std::span<const double> grads) {
    if (params.size() != m_.size() || grads.size() != m_.size())
        throw DimensionError("AdamState::step: shape mismatch");
    for (double g : grads)
        if (!std::isfinite(g)) throw std::domain_error("AdamState::step: non-finite gradient");

    ++steps_;
    const double b1 = config_.beta1, b2 = config_.beta2;
    const double correction1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
    const double correction2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = b1 * m_[i] + (1.0 - b1) * grads[i];
        v_[i] = b2 * v_[i] + (1.0 - b2) * grads[i] * grads[i];
        const double m_hat = m_[i] / correction1;
        const double v_hat = v_[i] / correction2;
        params[i] -= config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.epsilon);
    }
}

}  // namespace vmorl::nn
