#include "vmorl/rl/iorm_select.hpp"

#include <algorithm>
#include <stdexcept>

namespace vmorl::rl {

WeightVector iorm_row_select(const ccs::AolsResult& result, std::size_t i, const ValueVector& values) {
    const std::size_t I = values.size();
    if (i >= I) throw std::out_of_range("iorm_row_select: objective index out of range");
    constexpr double kTie = 1e-9;
    const WeightVector* best = nullptr;
    double best_score = 0.0, best_entropy = 0.0;
    for (const auto& w : result.explored) {
        if (w.size() != I) throw DimensionError("iorm_row_select: weight/value dimension mismatch");
        const double top = *std::max_element(w.begin(), w.end());
        if (w[i] < top) continue;
        const double score = w.dot(values);
        const double entropy = w.entropy();
        if (!best || score > best_score + kTie || (score >= best_score - kTie && entropy > best_entropy + kTie)) {
            best = &w;
            best_score = score;
            best_entropy = entropy;
        }
    }
    return best ? *best : WeightVector::unit(I, i);
}

}  // namespace vmorl::rl
