#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vmorl/core/rng.hpp"
#include "vmorl/core/types.hpp"
#include "vmorl/nn/adam.hpp"
#include "vmorl/nn/mlp.hpp"

namespace vmorl::rl {

/// One scalar value network per objective, plus the frozen copies used for
/// TD residuals. `old` only changes on sync().
class CriticBank {
public:
    CriticBank() = default;
    explicit CriticBank(std::vector<nn::Mlp> nets);

    static CriticBank make(std::size_t objectives, std::size_t state_dim, const std::vector<std::size_t>& hidden,
                           Rng& rng);

    std::size_t size() const { return current_.size(); }
    nn::Mlp& current(std::size_t i) { return current_.at(i); }
    const nn::Mlp& current(std::size_t i) const { return current_.at(i); }
    const nn::Mlp& old(std::size_t i) const { return old_.at(i); }

    /// (V_1(s), ..., V_I(s)) from the current or frozen networks.
    std::vector<double> values(std::span<const double> state) const;
    std::vector<double> old_values(std::span<const double> state) const;

    void sync() { old_ = current_; }

    friend bool operator==(const CriticBank&, const CriticBank&) = default;

private:
    std::vector<nn::Mlp> current_;
    std::vector<nn::Mlp> old_;
};

struct CriticConfig {
    std::size_t epochs = 10;
    std::size_t minibatch = 64;
};

struct CriticDiagnostics {
    double loss_before = 0.0;
    double loss_after = 0.0;
    std::size_t steps = 0;
    bool aborted = false;
};

/// Mean of (V(s_t) - target_t)^2.
double critic_loss(const nn::Mlp& net, std::span<const std::vector<double>> states, std::span<const double> targets);

/// Gradient of critic_loss over the given sample indices.
std::vector<double> critic_loss_gradient(const nn::Mlp& net, std::span<const std::vector<double>> states,
                                         std::span<const double> targets, std::span<const std::size_t> idx);

/// Shuffled minibatch regression of critic `i` onto `targets`. A non-finite
/// loss or gradient restores the network and optimizer.
CriticDiagnostics critic_update(CriticBank& bank, std::size_t i, nn::AdamState& optimizer,
                                std::span<const std::vector<double>> states, std::span<const double> targets,
                                const CriticConfig& cfg, Rng& rng);

}  // namespace vmorl::rl
