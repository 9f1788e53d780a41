#include "vmorl/rl/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vmorl/core/types.hpp"

namespace vmorl::rl {

void PpoConfig::validate() const {
    if (!(clip > 0.0)) throw std::invalid_argument("PpoConfig: clip must be positive");
    if (epochs == 0) throw std::invalid_argument("PpoConfig: epochs must be >= 1");
    if (minibatch == 0) throw std::invalid_argument("PpoConfig: minibatch must be >= 1");
}

double clipped_objective(double ratio, double advantage, double clip) {
    const double clipped = std::clamp(ratio, 1.0 - clip, 1.0 + clip);
    return std::min(ratio * advantage, clipped * advantage);
}

double clipped_objective_slope(double ratio, double advantage, double clip) {
    const double clipped = std::clamp(ratio, 1.0 - clip, 1.0 + clip);
    return ratio * advantage <= clipped * advantage ? ratio * advantage : 0.0;
}

double surrogate(const nn::GaussianPolicy& policy, std::span<const PpoSample> samples, double clip) {
    if (samples.empty()) throw std::invalid_argument("surrogate: no samples");
    double total = 0.0;
    for (const auto& s : samples) {
        const double ratio = std::exp(policy.log_prob(s.state, s.action) - s.old_log_prob);
        total += clipped_objective(ratio, s.advantage, clip);
    }
    return total / static_cast<double>(samples.size());
}

namespace {

// Accumulates the mean-surrogate gradient over `idx` into grad; returns the mean objective.
double accumulate_gradient(const nn::GaussianPolicy& policy, std::span<const PpoSample> samples,
                           std::span<const std::size_t> idx, double clip, std::vector<double>& grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    const double inv = 1.0 / static_cast<double>(idx.size());
    std::vector<double> sample_grad(grad.size());
    double total = 0.0;
    for (std::size_t k : idx) {
        const auto& s = samples[k];
        std::fill(sample_grad.begin(), sample_grad.end(), 0.0);
        const double lp = policy.log_prob_gradient(s.state, s.action, 1.0, sample_grad);
        const double ratio = std::exp(lp - s.old_log_prob);
        total += clipped_objective(ratio, s.advantage, clip);
        const double slope = clipped_objective_slope(ratio, s.advantage, clip) * inv;
        if (slope == 0.0) continue;
        for (std::size_t p = 0; p < grad.size(); ++p) grad[p] += slope * sample_grad[p];
    }
    return total * inv;
}

bool all_finite(std::span<const double> xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::vector<double> surrogate_gradient(const nn::GaussianPolicy& policy, std::span<const PpoSample> samples,
                                       double clip) {
    if (samples.empty()) throw std::invalid_argument("surrogate_gradient: no samples");
    std::vector<std::size_t> idx(samples.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<double> grad(policy.parameter_count());
    accumulate_gradient(policy, samples, idx, clip, grad);
    return grad;
}

PpoDiagnostics ppo_actor_update(nn::GaussianPolicy& policy, nn::AdamState& optimizer,
                                std::span<const PpoSample> samples, const PpoConfig& cfg, Rng& rng) {
    cfg.validate();
    if (samples.empty()) throw std::invalid_argument("ppo_actor_update: no samples");
    const nn::GaussianPolicy policy_snapshot = policy;
    const nn::AdamState optimizer_snapshot = optimizer;

    PpoDiagnostics diag;
    diag.surrogate_before = surrogate(policy, samples, cfg.clip);
    auto rollback = [&] {
        policy = policy_snapshot;
        optimizer = optimizer_snapshot;
        diag.aborted = true;
        diag.surrogate_after = diag.surrogate_before;
        return diag;
    };
    if (!std::isfinite(diag.surrogate_before)) return rollback();

    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> grad(policy.parameter_count());
    std::vector<double> params = policy.parameters();
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size(); start += cfg.minibatch) {
            const std::size_t stop = std::min(order.size(), start + cfg.minibatch);
            const std::span<const std::size_t> idx(order.data() + start, stop - start);
            const double value = accumulate_gradient(policy, samples, idx, cfg.clip, grad);
            if (!std::isfinite(value) || !all_finite(grad)) return rollback();
            for (double& g : grad) g = -g;  // Adam descends; the surrogate is maximized
            optimizer.step(params, grad);
            policy.set_parameters(params);
            ++diag.steps;
        }
    }

    double clipped = 0.0, kl = 0.0, obj = 0.0;
    for (const auto& s : samples) {
        const double log_ratio = policy.log_prob(s.state, s.action) - s.old_log_prob;
        const double ratio = std::exp(log_ratio);
        if (std::abs(ratio - 1.0) > cfg.clip) clipped += 1.0;
        kl += (ratio - 1.0) - log_ratio;
        obj += clipped_objective(ratio, s.advantage, cfg.clip);
    }
    const double n = static_cast<double>(samples.size());
    if (!std::isfinite(obj) || !std::isfinite(kl)) return rollback();
    diag.clip_fraction = clipped / n;
    diag.approx_kl = kl / n;
    diag.surrogate_after = obj / n;
    return diag;
}

}  // namespace vmorl::rl
