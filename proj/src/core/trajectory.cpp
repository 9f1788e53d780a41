#include "vmorl/core/trajectory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vmorl {

TrajectoryBatch::TrajectoryBatch(std::size_t objectives) : objectives_(objectives) {
    if (objectives == 0) throw std::invalid_argument("TrajectoryBatch: need at least one objective");
}

void TrajectoryBatch::push(Transition t) {
    if (t.reward.size() != objectives_)
        throw DimensionError("TrajectoryBatch: reward has length " + std::to_string(t.reward.size()) +
                             ", expected " + std::to_string(objectives_));
    const std::size_t index = steps_.size();
    if (episodes_.empty() || episodes_.back().complete) episodes_.push_back({index, index, false});
    episodes_.back().end = index + 1;
    episodes_.back().complete = t.done;
    steps_.push_back(std::move(t));
}

std::size_t TrajectoryBatch::complete_episodes() const {
    std::size_t n = 0;
    for (const auto& e : episodes_) n += e.complete ? 1 : 0;
    return n;
}

std::vector<double> TrajectoryBatch::channel(std::size_t objective) const {
    if (objective >= objectives_) throw std::out_of_range("TrajectoryBatch::channel: bad objective");
    std::vector<double> out;
    out.reserve(steps_.size());
    for (const auto& s : steps_) out.push_back(s.reward[objective]);
    return out;
}

std::vector<bool> TrajectoryBatch::dones() const {
    std::vector<bool> out;
    out.reserve(steps_.size());
    for (const auto& s : steps_) out.push_back(s.done);
    return out;
}

ValueVector discounted_return(const TrajectoryBatch& batch, std::size_t episode, double gamma) {
    if (episode >= batch.episodes().size())
        throw std::out_of_range("discounted_return: episode " + std::to_string(episode) +
                                " does not exist (batch has " +
                                std::to_string(batch.episodes().size()) + ")");
    const auto& range = batch.episodes()[episode];
    if (range.end == range.begin) throw std::invalid_argument("discounted_return: empty episode");
    std::vector<double> ret(batch.objectives(), 0.0);
    double discount = 1.0;
    for (std::size_t t = range.begin; t < range.end; ++t) {
        for (std::size_t i = 0; i < ret.size(); ++i) ret[i] += discount * batch[t].reward[i];
        discount *= gamma;
    }
    return ValueVector(std::move(ret));
}

ValueEstimate summarize_returns(std::span<const ValueVector> returns) {
    if (returns.empty()) throw std::invalid_argument("summarize_returns: no complete episodes");
    const std::size_t dims = returns.front().size();
    std::vector<double> mean(dims, 0.0), var(dims, 0.0);
    for (const auto& r : returns) {
        if (r.size() != dims) throw DimensionError("summarize_returns: mixed dimensions");
        for (std::size_t i = 0; i < dims; ++i) mean[i] += r[i];
    }
    const double n = static_cast<double>(returns.size());
    for (double& m : mean) m /= n;
    for (const auto& r : returns)
        for (std::size_t i = 0; i < dims; ++i) var[i] += (r[i] - mean[i]) * (r[i] - mean[i]);
    for (double& v : var) v = std::sqrt(v / n);
    return {ValueVector(std::move(mean)), ValueVector(std::move(var)), returns.size()};
}

ValueEstimate empirical_value_estimate(std::span<const TrajectoryBatch> batches, double gamma) {
    std::vector<ValueVector> returns;
    for (const auto& b : batches)
        for (std::size_t e = 0; e < b.episodes().size(); ++e)
            if (b.episodes()[e].complete) returns.push_back(discounted_return(b, e, gamma));
    if (returns.empty()) throw std::invalid_argument("empirical_value_estimate: no complete episodes");
    return summarize_returns(returns);
}

ValueEstimate empirical_value_estimate(const TrajectoryBatch& batch, double gamma) {
    return empirical_value_estimate(std::span<const TrajectoryBatch>(&batch, 1), gamma);
}

}  // namespace vmorl
