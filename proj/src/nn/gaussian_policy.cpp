#include "vmorl/nn/gaussian_policy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vmorl/core/types.hpp"

namespace vmorl::nn {

namespace {
const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);
}

GaussianPolicy::GaussianPolicy(Mlp mean, std::vector<double> log_std)
    : mean_(std::move(mean)), log_std_(std::move(log_std)) {
    if (mean_.output_size() != log_std_.size())
        throw DimensionError("GaussianPolicy: mean output and log-std sizes differ");
    for (double s : log_std_)
        if (!std::isfinite(s)) throw std::invalid_argument("GaussianPolicy: non-finite log-std");
}

GaussianPolicy GaussianPolicy::make(std::size_t state_dim, std::size_t action_dim,
                                    const std::vector<std::size_t>& hidden, Rng& rng) {
    std::vector<std::size_t> sizes{state_dim};
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(action_dim);
    return GaussianPolicy(Mlp::orthogonal(std::move(sizes), 0.01, rng), std::vector<double>(action_dim, 0.0));
}

double gaussian_log_density(std::span<const double> x, std::span<const double> mean,
                            std::span<const double> log_std) {
    if (x.size() != mean.size() || x.size() != log_std.size())
        throw DimensionError("gaussian_log_density: dimension mismatch");
    double lp = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double z = (x[k] - mean[k]) * std::exp(-log_std[k]);
        lp += -0.5 * z * z - log_std[k] - kHalfLog2Pi;
    }
    return lp;
}

double GaussianPolicy::log_prob(std::span<const double> state, std::span<const double> action) const {
    if (action.size() != action_dim()) throw DimensionError("GaussianPolicy::log_prob: action size");
    return gaussian_log_density(action, mean(state), log_std_);
}

std::vector<double> GaussianPolicy::sample(std::span<const double> state, Rng& rng) const {
    auto a = mean(state);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += std::exp(log_std_[k]) * standard_normal(rng);
    return a;
}

double GaussianPolicy::log_prob_gradient(std::span<const double> state, std::span<const double> action,
                                         double scale, std::span<double> grad) const {
    if (grad.size() != parameter_count()) throw DimensionError("GaussianPolicy: gradient buffer size");
    if (action.size() != action_dim()) throw DimensionError("GaussianPolicy: action size");
    MlpCache cache;
    const auto mu = mean_.forward(state, &cache);
    std::vector<double> dmu(mu.size());
    const std::size_t base = mean_.parameter_count();
    double lp = 0.0;
    for (std::size_t k = 0; k < mu.size(); ++k) {
        const double inv_std = std::exp(-log_std_[k]);
        const double z = (action[k] - mu[k]) * inv_std;
        const double z2 = z * z;
        lp += -0.5 * z2 - log_std_[k] - kHalfLog2Pi;
        dmu[k] = scale * z * inv_std;
        grad[base + k] += scale * (z2 - 1.0);
    }
    mean_.backward(cache, dmu, grad.subspan(0, base));
    return lp;
}

std::vector<double> GaussianPolicy::parameters() const {
    std::vector<double> flat(mean_.parameters().begin(), mean_.parameters().end());
    flat.insert(flat.end(), log_std_.begin(), log_std_.end());
    return flat;
}

void GaussianPolicy::set_parameters(std::span<const double> flat) {
    if (flat.size() != parameter_count()) throw DimensionError("GaussianPolicy::set_parameters: size");
    auto p = mean_.parameters();
    std::copy(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(p.size()), p.begin());
    std::copy(flat.begin() + static_cast<std::ptrdiff_t>(p.size()), flat.end(), log_std_.begin());
}

}  // namespace vmorl::nn
