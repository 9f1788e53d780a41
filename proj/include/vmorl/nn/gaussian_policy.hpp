#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vmorl/core/rng.hpp"
#include "vmorl/nn/mlp.hpp"

namespace vmorl::nn {

/// Diagonal Gaussian policy: mean from an MLP, state-independent log-std.
/// The flat parameter layout is [mean network parameters..., log_std...].
class GaussianPolicy {
public:
    GaussianPolicy() = default;
    GaussianPolicy(Mlp mean, std::vector<double> log_std);

    /// 64x64 tanh mean network by default, actor output scaled by 0.01, log-std 0.
    static GaussianPolicy make(std::size_t state_dim, std::size_t action_dim,
                               const std::vector<std::size_t>& hidden, Rng& rng);

    std::size_t state_dim() const { return mean_.input_size(); }
    std::size_t action_dim() const { return log_std_.size(); }
    const Mlp& mean_network() const { return mean_; }
    const std::vector<double>& log_std() const { return log_std_; }

    std::vector<double> mean(std::span<const double> state) const { return mean_.forward(state); }
    double log_prob(std::span<const double> state, std::span<const double> action) const;

    /// mean + std * N(0, I), one standard-normal draw per action dimension.
    std::vector<double> sample(std::span<const double> state, Rng& rng) const;

    /// Returns log pi(a|s) and adds scale * d log pi / d theta into `grad`.
    double log_prob_gradient(std::span<const double> state, std::span<const double> action, double scale,
                             std::span<double> grad) const;

    std::size_t parameter_count() const { return mean_.parameter_count() + log_std_.size(); }
    std::vector<double> parameters() const;
    void set_parameters(std::span<const double> flat);

    friend bool operator==(const GaussianPolicy&, const GaussianPolicy&) = default;

private:
    Mlp mean_;
    std::vector<double> log_std_;
};

/// Diagonal-Gaussian log-density of `x` under (mean, exp(log_std)).
double gaussian_log_density(std::span<const double> x, std::span<const double> mean,
                            std::span<const double> log_std);

}  // namespace vmorl::nn
