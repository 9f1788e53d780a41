#include "vmorl/explain/alternatives.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

namespace vmorl::explain {

void ExplainConfig::validate() const {
    if (increment.empty()) throw std::invalid_argument("ExplainConfig: no objectives");
    if (max_value.size() != increment.size() || max_count.size() != increment.size())
        throw std::invalid_argument("ExplainConfig: increment, max_value and max_count must have equal length");
    for (std::size_t i = 0; i < increment.size(); ++i) {
        if (!(increment[i] > 0.0) || !std::isfinite(increment[i]))
            throw std::invalid_argument("ExplainConfig: increment " + std::to_string(i) + " must be positive");
        if (std::isnan(max_value[i])) throw std::invalid_argument("ExplainConfig: max_value is NaN");
        if (max_count[i] < 1) throw std::invalid_argument("ExplainConfig: max_count " + std::to_string(i) + " must be >= 1");
    }
}

void ExplainConfig::validate(std::size_t objectives) const {
    validate();
    if (size() != objectives)
        throw DimensionError("ExplainConfig covers " + std::to_string(size()) + " objectives, expected " +
                             std::to_string(objectives));
}

ExplainConfig ExplainConfig::uniform(std::size_t objectives, double increment, double max_value,
                                     std::size_t max_count) {
    ExplainConfig c;
    c.increment.assign(objectives, increment);
    c.max_value.assign(objectives, max_value);
    c.max_count.assign(objectives, max_count);
    c.validate();
    return c;
}

namespace {

double oriented(double v, Direction d) { return d == Direction::maximize ? v : -v; }

void check_dims(const ValueVector& v, std::span<const Direction> directions, const char* what) {
    if (v.size() != directions.size())
        throw DimensionError(std::string(what) + ": value vector and direction table sizes differ");
}

}  // namespace

std::optional<ValueVector> constrained_best(std::span<const ValueVector> pool, std::size_t i, double target,
                                            std::span<const Direction> directions) {
    if (i >= directions.size()) throw std::out_of_range("constrained_best: objective index out of range");
    std::optional<ValueVector> best;
    double best_score = 0.0;
    for (const auto& v : pool) {
        check_dims(v, directions, "constrained_best");
        if (oriented(v[i], directions[i]) < target) continue;
        double score = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (j != i) score += oriented(v[j], directions[j]);
        if (!best || score > best_score) {
            best = v;
            best_score = score;
        }
    }
    return best;
}

Alternative make_alternative(std::size_t anchor, double target, const ValueVector& achieved,
                             const ValueVector& current, std::span<const Direction> directions) {
    check_dims(achieved, directions, "make_alternative");
    check_dims(current, directions, "make_alternative");
    Alternative alt;
    alt.anchor = anchor;
    alt.target = target;
    alt.achieved = achieved;
    auto delta_of = [&](std::size_t j) {
        return oriented(achieved[j], directions[j]) - oriented(current[j], directions[j]);
    };
    // The anchor leads the gain list.
    if (delta_of(anchor) > 0.0) alt.gains.push_back({anchor, delta_of(anchor)});
    for (std::size_t j = 0; j < achieved.size(); ++j) {
        const double d = delta_of(j);
        if (j != anchor && d > 0.0) alt.gains.push_back({j, d});
        if (d < 0.0) alt.losses.push_back({j, d});
    }
    return alt;
}

std::vector<Alternative> generate_alternatives(std::span<const ValueVector> pool, const ValueVector& current,
                                               const ExplainConfig& cfg, std::span<const Direction> directions) {
    check_dims(current, directions, "generate_alternatives");
    cfg.validate(directions.size());
    const std::size_t I = directions.size();
    std::vector<Alternative> out;

    std::deque<std::size_t> work;
    for (std::size_t i = 0; i < I; ++i) work.push_back(i);
    while (!work.empty()) {
        const std::size_t i = work.front();
        work.pop_front();
        std::size_t count = 0;
        double target = oriented(current[i], directions[i]);
        while (target <= cfg.max_value[i] - cfg.increment[i] && count < cfg.max_count[i]) {
            target += cfg.increment[i];
            const auto found = constrained_best(pool, i, target, directions);
            // Larger targets admit a subset of the same pool, so nothing further can qualify.
            if (!found) break;
            const bool duplicate = std::any_of(out.begin(), out.end(), [&](const Alternative& a) {
                return a.achieved.max_norm_distance(*found) <= 1e-9;
            });
            if (!duplicate) out.push_back(make_alternative(i, target, *found, current, directions));
            ++count;
            for (std::size_t j = 0; j < I; ++j) {
                if (j == i) continue;
                if (oriented((*found)[j], directions[j]) >= oriented(current[j], directions[j]) + cfg.increment[j])
                    work.erase(std::remove(work.begin(), work.end(), j), work.end());
            }
        }
    }
    return out;
}

}  // namespace vmorl::explain
