#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

#include "vmorl/ccs/ccs.hpp"
#include "vmorl/core/types.hpp"

namespace vmorl::ccs {

using ValueOracle = std::function<ValueVector(const WeightVector&)>;

inline constexpr double kInfinitePriority = std::numeric_limits<double>::infinity();

/// Max-priority queue of marginal weights. Equal priorities pop in insertion
/// order, so the extrema e_1..e_I seeded at infinite priority come out first
/// to last.
class MarginalWeightQueue {
public:
    struct Entry {
        WeightVector weight;
        double priority = 0.0;
        double scalar_star = 0.0;  // V_S*(weight) when the entry was pushed
        std::size_t sequence = 0;
    };

    void push(WeightVector weight, double priority, double scalar_star = 0.0);
    Entry pop();
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    /// 0 when empty.
    double max_priority() const;
    const std::vector<Entry>& entries() const { return entries_; }
    void clear() { entries_.clear(); }

private:
    std::vector<Entry> entries_;
    std::size_t next_sequence_ = 0;
};

/// The working set S plus the observation list WV.
struct PartialCcs {
    std::vector<ValueVector> set;
    std::vector<WeightObservation> observations;

    /// Membership by max-norm distance <= 1e-6.
    bool contains(const ValueVector& v) const;
};

struct AolsIteration {
    std::size_t iteration = 0;
    WeightVector weight;
    ValueVector value;
    bool extended = false;
    double delta_max = 0.0;  // largest queued priority after this iteration
    double delta_r = 0.0;    // largest queued relative improvement after this iteration
};

struct AolsResult {
    std::vector<ValueVector> ccs;  // S restricted to its convex-undominated members
    PartialCcs partial;
    std::vector<WeightVector> explored;
    double delta_max = 0.0;
    bool hit_iteration_cap = false;
    std::vector<AolsIteration> history;
};

/// Approximate optimistic linear support. Extrema are explored first at
/// infinite priority; afterwards every unexplored corner weight of V_S* whose
/// optimistic improvement exceeds epsilon is queued. Oracle results are
/// memoized per weight for the duration of the call.
AolsResult aols(const ValueOracle& oracle, std::size_t objectives, double epsilon, std::size_t max_iterations);

/// iteration,w_1..w_I,extended,delta_max,delta_r
void write_history_csv(std::ostream& os, const AolsResult& result);

}  // namespace vmorl::ccs
