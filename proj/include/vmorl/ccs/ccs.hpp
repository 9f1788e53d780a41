#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "vmorl/core/types.hpp"

namespace vmorl::ccs {

/// An observed scalarized value: the oracle returned some V at `weight`, and
/// `value` = weight . V was recorded at that time.
struct WeightObservation {
    WeightVector weight;
    double value = 0.0;
};

struct ScalarizedMax {
    double value = 0.0;
    ValueVector maximizer;
    std::size_t index = 0;
};

/// V_S*(w) = max_{V in S} w . V. Ties go to the lowest index in S.
ScalarizedMax scalarized_max(std::span<const ValueVector> set, const WeightVector& w);

/// True iff some simplex weight makes `v` beat every member of `set` by more
/// than `margin` (plus a 1e-9 numerical tolerance). Vectors that are only
/// weakly maximal, e.g. a point on the segment between two others, are
/// reported as dominated.
bool is_convex_undominated(const ValueVector& v, std::span<const ValueVector> set, double margin = 0.0);

/// Vertices of the piecewise-linear upper surface V_S*(w) over the simplex,
/// extrema e_1..e_I first, then interior/edge corners in lexicographic order.
std::vector<WeightVector> corner_weights(std::span<const ValueVector> set);

/// optimum of max_u w . u  s.t.  w' . u <= v' + eps for every observation.
/// Throws std::domain_error when the program is unbounded.
double optimistic_bound(std::span<const WeightObservation> observations, const WeightVector& w, double eps);

/// (v_bound - v_star) / |v_bound|. Throws std::domain_error when v_bound == 0.
double relative_improvement(double v_bound, double v_star);

/// Keeps the members of `set` that are convex-undominated by the others.
/// Near-duplicates (max-norm <= 1e-6) collapse to their first occurrence.
std::vector<ValueVector> prune_to_ccs(std::span<const ValueVector> set);

namespace reference {

/// Single-threaded corner enumeration; the parallel version must match it.
std::vector<WeightVector> corner_weights(std::span<const ValueVector> set);

}  // namespace reference

}  // namespace vmorl::ccs
