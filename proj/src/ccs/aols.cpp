#include "vmorl/ccs/aols.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace vmorl::ccs {
namespace {

constexpr double kDuplicateTolerance = 1e-6;
constexpr double kPushTolerance = 1e-9;

bool near_any(const std::vector<WeightVector>& list, const WeightVector& w) {
    return std::any_of(list.begin(), list.end(),
                       [&](const WeightVector& o) { return o.max_norm_distance(w) <= kSimplexTolerance; });
}

class MemoizedOracle {
public:
    explicit MemoizedOracle(const ValueOracle& oracle) : oracle_(oracle) {}

    ValueVector operator()(const WeightVector& w) {
        for (const auto& [key, value] : cache_)
            if (key.max_norm_distance(w) <= 1e-12) return value;
        ValueVector v = oracle_(w);
        cache_.emplace_back(w, v);
        return v;
    }

private:
    const ValueOracle& oracle_;
    std::vector<std::pair<WeightVector, ValueVector>> cache_;
};

double relative_or_absolute(double bound, double star) {
    if (bound == 0.0) return bound - star;
    return relative_improvement(bound, star);
}

}  // namespace

void MarginalWeightQueue::push(WeightVector weight, double priority, double scalar_star) {
    entries_.push_back({std::move(weight), priority, scalar_star, next_sequence_++});
}

MarginalWeightQueue::Entry MarginalWeightQueue::pop() {
    if (entries_.empty()) throw std::out_of_range("MarginalWeightQueue::pop: empty queue");
    auto best = entries_.begin();
    for (auto it = entries_.begin() + 1; it != entries_.end(); ++it)
        if (it->priority > best->priority ||
            (it->priority == best->priority && it->sequence < best->sequence))
            best = it;
    Entry e = std::move(*best);
    entries_.erase(best);
    return e;
}

double MarginalWeightQueue::max_priority() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, e.priority);
    return m;
}

bool PartialCcs::contains(const ValueVector& v) const {
    return std::any_of(set.begin(), set.end(),
                       [&](const ValueVector& s) { return s.max_norm_distance(v) <= kDuplicateTolerance; });
}

AolsResult aols(const ValueOracle& oracle, std::size_t objectives, double epsilon, std::size_t max_iterations) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("aols: epsilon must be positive");
    if (objectives == 0) throw std::invalid_argument("aols: need at least one objective");

    MemoizedOracle memo(oracle);
    MarginalWeightQueue queue;
    for (std::size_t k = 0; k < objectives; ++k) queue.push(WeightVector::unit(objectives, k), kInfinitePriority);

    AolsResult result;
    auto& partial = result.partial;
    std::vector<WeightVector> corners;
    bool corners_stale = true;

    std::size_t iteration = 0;
    while (!queue.empty()) {
        if (iteration >= max_iterations) {
            result.hit_iteration_cap = true;
            break;
        }
        const auto entry = queue.pop();
        ++iteration;

        ValueVector v = memo(entry.weight);
        if (v.size() != objectives) throw DimensionError("aols: oracle returned wrong dimension");
        partial.observations.push_back({entry.weight, entry.weight.dot(v)});
        result.explored.push_back(entry.weight);

        const bool extended = !partial.contains(v);
        if (extended) {
            partial.set.push_back(v);
            corners_stale = true;
        }

        const bool extrema_pending = std::any_of(queue.entries().begin(), queue.entries().end(),
                                                 [](const auto& e) { return std::isinf(e.priority); });
        if (!extrema_pending) {
            // Every weight's bound tightens with each observation, so the whole
            // finite part of the queue is rebuilt after every pop.
            if (corners_stale) {
                corners = corner_weights(partial.set);
                corners_stale = false;
            }
            queue.clear();
            for (const auto& wc : corners) {
                if (near_any(result.explored, wc)) continue;
                const double star = scalarized_max(partial.set, wc).value;
                const double bound = optimistic_bound(partial.observations, wc, epsilon);
                const double priority = bound - star;
                if (priority > epsilon + kPushTolerance) queue.push(wc, priority, star);
            }
        }

        AolsIteration record;
        record.iteration = iteration;
        record.weight = entry.weight;
        record.value = v;
        record.extended = extended;
        if (extrema_pending) {
            record.delta_max = kInfinitePriority;
            record.delta_r = kInfinitePriority;
        } else {
            record.delta_max = queue.max_priority();
            double dr = 0.0;
            for (const auto& e : queue.entries())
                dr = std::max(dr, relative_or_absolute(e.scalar_star + e.priority, e.scalar_star));
            record.delta_r = dr;
        }
        result.history.push_back(std::move(record));
    }

    result.delta_max = queue.max_priority();
    result.ccs = prune_to_ccs(partial.set);
    return result;
}

void write_history_csv(std::ostream& os, const AolsResult& result) {
    const std::size_t dims = result.explored.empty() ? 0 : result.explored.front().size();
    os << "iteration";
    for (std::size_t k = 0; k < dims; ++k) os << ",w_" << k + 1;
    os << ",extended,delta_max,delta_r\n";
    os.precision(17);
    for (const auto& h : result.history) {
        os << h.iteration;
        for (double w : h.weight) os << ',' << w;
        os << ',' << (h.extended ? 1 : 0) << ',' << h.delta_max << ',' << h.delta_r << '\n';
    }
}

}  // namespace vmorl::ccs
