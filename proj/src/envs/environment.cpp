#include "vmorl/envs/environment.hpp"

#include <stdexcept>
#include <string>

#include "vmorl/core/types.hpp"

namespace vmorl::envs {

std::vector<std::string> Environment::objective_names() const {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < objectives(); ++i) names.push_back("objective_" + std::to_string(i + 1));
    return names;
}

std::vector<std::string> DiscreteEnvironment::objective_names() const {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < objectives(); ++i) names.push_back("objective_" + std::to_string(i + 1));
    return names;
}

ArgmaxAdapter::ArgmaxAdapter(std::unique_ptr<DiscreteEnvironment> inner) : inner_(std::move(inner)) {
    if (!inner_) throw std::invalid_argument("ArgmaxAdapter: null environment");
}

std::size_t ArgmaxAdapter::argmax(std::span<const double> action) {
    if (action.empty()) throw std::invalid_argument("ArgmaxAdapter: empty action");
    std::size_t best = 0;
    for (std::size_t k = 1; k < action.size(); ++k)
        if (action[k] > action[best]) best = k;
    return best;
}

std::vector<double> ArgmaxAdapter::one_hot(std::size_t s) const {
    std::vector<double> x(inner_->num_states(), 0.0);
    x.at(s) = 1.0;
    return x;
}

std::vector<double> ArgmaxAdapter::reset(Rng& rng) { return one_hot(inner_->reset(rng)); }

StepResult ArgmaxAdapter::step(std::span<const double> action, Rng& rng) {
    if (action.size() != action_dim()) throw DimensionError("ArgmaxAdapter::step: action dimension");
    auto r = inner_->step(argmax(action), rng);
    return {one_hot(r.state), std::move(r.reward), r.done};
}

ChannelSelect::ChannelSelect(std::unique_ptr<Environment> inner, std::vector<std::size_t> channels)
    : inner_(std::move(inner)), channels_(std::move(channels)) {
    if (!inner_) throw std::invalid_argument("ChannelSelect: null environment");
    if (channels_.empty()) throw std::invalid_argument("ChannelSelect: no channels");
    for (auto c : channels_)
        if (c >= inner_->objectives())
            throw std::out_of_range("ChannelSelect: channel " + std::to_string(c) + " does not exist");
}

std::vector<std::string> ChannelSelect::objective_names() const {
    const auto all = inner_->objective_names();
    std::vector<std::string> names;
    for (auto c : channels_) names.push_back(all[c]);
    return names;
}

StepResult ChannelSelect::step(std::span<const double> action, Rng& rng) {
    auto r = inner_->step(action, rng);
    std::vector<double> selected;
    selected.reserve(channels_.size());
    for (auto c : channels_) selected.push_back(r.reward[c]);
    r.reward = std::move(selected);
    return r;
}

}  // namespace vmorl::envs
