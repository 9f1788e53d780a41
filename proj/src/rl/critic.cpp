#include "vmorl/rl/critic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vmorl::rl {

CriticBank::CriticBank(std::vector<nn::Mlp> nets) : current_(std::move(nets)), old_(current_) {
    for (const auto& n : current_)
        if (n.output_size() != 1) throw DimensionError("CriticBank: critics must have a scalar output");
}

CriticBank CriticBank::make(std::size_t objectives, std::size_t state_dim, const std::vector<std::size_t>& hidden,
                            Rng& rng) {
    if (objectives == 0) throw std::invalid_argument("CriticBank: need at least one objective");
    std::vector<std::size_t> sizes{state_dim};
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(1);
    std::vector<nn::Mlp> nets;
    for (std::size_t i = 0; i < objectives; ++i) nets.push_back(nn::Mlp::orthogonal(sizes, 1.0, rng));
    return CriticBank(std::move(nets));
}

std::vector<double> CriticBank::values(std::span<const double> state) const {
    std::vector<double> out(current_.size());
    for (std::size_t i = 0; i < current_.size(); ++i) out[i] = current_[i].forward(state)[0];
    return out;
}

std::vector<double> CriticBank::old_values(std::span<const double> state) const {
    std::vector<double> out(old_.size());
    for (std::size_t i = 0; i < old_.size(); ++i) out[i] = old_[i].forward(state)[0];
    return out;
}

double critic_loss(const nn::Mlp& net, std::span<const std::vector<double>> states, std::span<const double> targets) {
    if (states.size() != targets.size()) throw DimensionError("critic_loss: state/target count mismatch");
    if (states.empty()) throw std::invalid_argument("critic_loss: empty batch");
    double total = 0.0;
    for (std::size_t t = 0; t < states.size(); ++t) {
        const double e = net.forward(states[t])[0] - targets[t];
        total += e * e;
    }
    return total / static_cast<double>(states.size());
}

std::vector<double> critic_loss_gradient(const nn::Mlp& net, std::span<const std::vector<double>> states,
                                         std::span<const double> targets, std::span<const std::size_t> idx) {
    std::vector<double> grad(net.parameter_count(), 0.0);
    const double scale = 2.0 / static_cast<double>(idx.size());
    nn::MlpCache cache;
    for (std::size_t k : idx) {
        const double e = net.forward(states[k], &cache)[0] - targets[k];
        const double g = scale * e;
        net.backward(cache, std::span<const double>(&g, 1), grad);
    }
    return grad;
}

CriticDiagnostics critic_update(CriticBank& bank, std::size_t i, nn::AdamState& optimizer,
                                std::span<const std::vector<double>> states, std::span<const double> targets,
                                const CriticConfig& cfg, Rng& rng) {
    if (states.size() != targets.size()) throw DimensionError("critic_update: state/target count mismatch");
    if (states.empty()) throw std::invalid_argument("critic_update: empty batch");
    if (cfg.minibatch == 0) throw std::invalid_argument("critic_update: minibatch must be >= 1");
    for (double t : targets)
        if (!std::isfinite(t)) throw std::invalid_argument("critic_update: non-finite target");

    nn::Mlp& net = bank.current(i);
    const nn::Mlp net_snapshot = net;
    const nn::AdamState optimizer_snapshot = optimizer;
    CriticDiagnostics diag;
    diag.loss_before = critic_loss(net, states, targets);
    auto rollback = [&] {
        net = net_snapshot;
        optimizer = optimizer_snapshot;
        diag.aborted = true;
        diag.loss_after = diag.loss_before;
        return diag;
    };
    if (!std::isfinite(diag.loss_before)) return rollback();

    std::vector<std::size_t> order(states.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size(); start += cfg.minibatch) {
            const std::size_t stop = std::min(order.size(), start + cfg.minibatch);
            auto grad = critic_loss_gradient(net, states, targets, {order.data() + start, stop - start});
            if (!std::all_of(grad.begin(), grad.end(), [](double g) { return std::isfinite(g); }))
                return rollback();
            optimizer.step(net.parameters(), grad);
            ++diag.steps;
        }
    }
    diag.loss_after = critic_loss(net, states, targets);
    if (!std::isfinite(diag.loss_after)) return rollback();
    return diag;
}

}  // namespace vmorl::rl
