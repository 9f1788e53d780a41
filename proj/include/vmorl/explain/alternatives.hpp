#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vmorl/core/types.hpp"
#include "vmorl/explain/qa.hpp"

namespace vmorl::explain {

/// Per-objective search settings, all in utility orientation (larger is better).
struct ExplainConfig {
    std::vector<double> increment;       // Delta V_i > 0
    std::vector<double> max_value;       // M_{V_i}
    std::vector<std::size_t> max_count;  // M_i >= 1

    std::size_t size() const { return increment.size(); }
    void validate() const;
    void validate(std::size_t objectives) const;

    /// The same settings for every objective.
    static ExplainConfig uniform(std::size_t objectives, double increment, double max_value, std::size_t max_count);
};

struct Change {
    std::size_t objective = 0;
    double delta = 0.0;  // achieved - current, utility orientation
};

struct Alternative {
    std::size_t anchor = 0;
    double target = 0.0;  // utility-oriented threshold the anchor had to meet
    ValueVector achieved;
    std::vector<Change> gains;   // delta > 0
    std::vector<Change> losses;  // delta < 0
};

/// Among pool members whose utility at `i` is at least `target`, the one with
/// the largest sum of the other utilities; earliest on ties. Empty when none
/// qualifies.
std::optional<ValueVector> constrained_best(std::span<const ValueVector> pool, std::size_t i, double target,
                                            std::span<const Direction> directions);

/// Gains and losses of `achieved` relative to `current`.
Alternative make_alternative(std::size_t anchor, double target, const ValueVector& achieved,
                             const ValueVector& current, std::span<const Direction> directions);

/// Alternative generation around `current`. Attributes are taken from the
/// front of the work list; each one raises its target by increment_i while
/// target <= M_{V_i} - increment_i and fewer than M_i alternatives were found
/// for it. Every hit removes from the work list the other attributes it
/// improves by at least their own increment. Results are deduplicated by
/// achieved vector.
std::vector<Alternative> generate_alternatives(std::span<const ValueVector> pool, const ValueVector& current,
                                               const ExplainConfig& cfg, std::span<const Direction> directions);

}  // namespace vmorl::explain
