#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vmorl::nn {

struct AdamConfig {
    double learning_rate = 3e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    friend bool operator==(const AdamConfig&, const AdamConfig&) = default;
};

/// Adam with bias correction. Steps descend: params -= lr * m_hat / (sqrt(v_hat) + eps).
class AdamState {
public:
    AdamState() = default;
    AdamState(std::size_t parameters, AdamConfig config = {});

    /// Throws std::domain_error (leaving params and moments untouched) when a
    /// gradient entry is not finite.
    void step(std::span<double> params, std::span<const double> grads);

    std::uint64_t steps() const { return steps_; }
    const AdamConfig& config() const { return config_; }
    const std::vector<double>& first_moment() const { return m_; }
    const std::vector<double>& second_moment() const { return v_; }

    friend bool operator==(const AdamState&, const AdamState&) = default;

private:
    AdamConfig config_;
    std::vector<double> m_;
    std::vector<double> v_;
    std::uint64_t steps_ = 0;
};

}  // namespace vmorl::nn
