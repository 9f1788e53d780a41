#include "vmorl/ccs/ccs.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "vmorl/ccs/simplex_lp.hpp"

namespace vmorl::ccs {
namespace {

constexpr double kDuplicateTolerance = 1e-6;
constexpr double kPivotTolerance = 1e-12;
constexpr std::size_t kMaxCornerSystems = 4'000'000;

std::size_t check_dims(std::span<const ValueVector> set) {
    const std::size_t dims = set.front().size();
    for (const auto& v : set)
        if (v.size() != dims) throw DimensionError("value vectors of mixed dimension");
    return dims;
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    while (true) {
        out.push_back(c);
        if (out.size() > kMaxCornerSystems)
            throw std::length_error("corner_weights: too many candidate vertices");
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

// Solves for (w, t) with sum(w) = 1 and the chosen constraints active.
// Constraint c < |S| means t = w . V_c; otherwise w_{c-|S|} = 0.
std::optional<std::vector<double>> candidate_vertex(std::span<const ValueVector> set, std::size_t dims,
                                                    const std::vector<std::size_t>& active) {
    const std::size_t n = dims + 1;
    std::vector<double> m(n * (n + 1), 0.0);
    auto at = [&](std::size_t r, std::size_t c) -> double& { return m[r * (n + 1) + c]; };
    for (std::size_t k = 0; k < dims; ++k) at(0, k) = 1.0;
    at(0, n) = 1.0;
    bool has_plane = false;
    for (std::size_t r = 0; r < active.size(); ++r) {
        const std::size_t c = active[r];
        if (c < set.size()) {
            for (std::size_t k = 0; k < dims; ++k) at(r + 1, k) = set[c][k];
            at(r + 1, dims) = -1.0;
            has_plane = true;
        } else {
            at(r + 1, c - set.size()) = 1.0;
        }
    }
    if (!has_plane) return std::nullopt;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(at(r, col)) > std::abs(at(piv, col))) piv = r;
        if (std::abs(at(piv, col)) < kPivotTolerance) return std::nullopt;
        if (piv != col)
            for (std::size_t c = 0; c <= n; ++c) std::swap(at(piv, c), at(col, c));
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = at(r, col) / at(col, col);
            if (f == 0.0) continue;
            for (std::size_t c = col; c <= n; ++c) at(r, c) -= f * at(col, c);
        }
    }
    std::vector<double> x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = at(r, n) / at(r, r);

    for (std::size_t k = 0; k < dims; ++k)
        if (x[k] < -kSimplexTolerance) return std::nullopt;
    const double t = x[dims];
    std::vector<double> w(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(dims));
    for (const auto& v : set) {
        double dot = 0.0;
        for (std::size_t k = 0; k < dims; ++k) dot += w[k] * v[k];
        if (dot > t + 1e-9 * (1.0 + std::abs(t))) return std::nullopt;
    }
    return w;
}

std::vector<WeightVector> finalize_corners(std::size_t dims,
                                           const std::vector<std::optional<std::vector<double>>>& raw) {
    std::vector<WeightVector> extrema, interior;
    for (std::size_t k = 0; k < dims; ++k) extrema.push_back(WeightVector::unit(dims, k));
    for (const auto& cand : raw) {
        if (!cand) continue;
        WeightVector w = WeightVector::normalized(*cand);
        auto close = [&](const WeightVector& o) { return o.max_norm_distance(w) <= kSimplexTolerance; };
        if (std::any_of(extrema.begin(), extrema.end(), close)) continue;
        if (std::any_of(interior.begin(), interior.end(), close)) continue;
        interior.push_back(std::move(w));
    }
    std::sort(interior.begin(), interior.end(), [](const WeightVector& a, const WeightVector& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    extrema.insert(extrema.end(), interior.begin(), interior.end());
    return extrema;
}

}  // namespace

ScalarizedMax scalarized_max(std::span<const ValueVector> set, const WeightVector& w) {
    if (set.empty()) throw std::invalid_argument("scalarized_max: empty set");
    ScalarizedMax best{w.dot(set[0]), set[0], 0};
    for (std::size_t i = 1; i < set.size(); ++i) {
        const double v = w.dot(set[i]);
        if (v > best.value) best = {v, set[i], i};
    }
    return best;
}

bool is_convex_undominated(const ValueVector& v, std::span<const ValueVector> set, double margin) {
    if (set.empty()) return true;
    const std::size_t dims = v.size();
    for (const auto& o : set)
        if (o.size() != dims) throw DimensionError("is_convex_undominated: dimension mismatch");

    // variables: w_1..w_I >= 0, t free; maximize t
    LinearProgram lp;
    lp.objective.assign(dims + 1, 0.0);
    lp.objective[dims] = 1.0;
    lp.free_variables.assign(dims + 1, false);
    lp.free_variables[dims] = true;
    for (const auto& o : set) {
        LinearConstraint c;
        c.coeffs.resize(dims + 1);
        for (std::size_t k = 0; k < dims; ++k) c.coeffs[k] = o[k] - v[k];
        c.coeffs[dims] = 1.0;
        c.relation = Relation::less_equal;
        c.rhs = 0.0;
        lp.constraints.push_back(std::move(c));
    }
    LinearConstraint simplex;
    simplex.coeffs.assign(dims + 1, 1.0);
    simplex.coeffs[dims] = 0.0;
    simplex.relation = Relation::equal;
    simplex.rhs = 1.0;
    lp.constraints.push_back(std::move(simplex));

    const auto sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) throw std::runtime_error("is_convex_undominated: LP not optimal");
    return sol.value > margin + 1e-9;
}

std::vector<WeightVector> corner_weights(std::span<const ValueVector> set) {
    if (set.empty()) throw std::invalid_argument("corner_weights: empty set");
    const std::size_t dims = check_dims(set);
    const auto combos = combinations(set.size() + dims, dims);
    std::vector<std::optional<std::vector<double>>> raw(combos.size());
    const auto count = static_cast<std::ptrdiff_t>(combos.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < count; ++c) raw[static_cast<std::size_t>(c)] =
        candidate_vertex(set, dims, combos[static_cast<std::size_t>(c)]);
    return finalize_corners(dims, raw);
}

namespace reference {

std::vector<WeightVector> corner_weights(std::span<const ValueVector> set) {
    if (set.empty()) throw std::invalid_argument("corner_weights: empty set");
    const std::size_t dims = check_dims(set);
    const auto combos = combinations(set.size() + dims, dims);
    std::vector<std::optional<std::vector<double>>> raw;
    raw.reserve(combos.size());
    for (const auto& c : combos) raw.push_back(candidate_vertex(set, dims, c));
    return finalize_corners(dims, raw);
}

}  // namespace reference

double optimistic_bound(std::span<const WeightObservation> observations, const WeightVector& w, double eps) {
    const std::size_t dims = w.size();
    LinearProgram lp;
    lp.objective.assign(w.begin(), w.end());
    lp.free_variables.assign(dims, true);
    for (const auto& obs : observations) {
        if (obs.weight.size() != dims) throw DimensionError("optimistic_bound: dimension mismatch");
        LinearConstraint c;
        c.coeffs.assign(obs.weight.begin(), obs.weight.end());
        c.relation = Relation::less_equal;
        c.rhs = obs.value + eps;
        lp.constraints.push_back(std::move(c));
    }
    const auto sol = solve_lp(lp);
    if (sol.status == LpStatus::unbounded)
        throw std::domain_error("optimistic_bound: unbounded program (observations must cover every extremum)");
    if (sol.status == LpStatus::infeasible) throw std::runtime_error("optimistic_bound: infeasible program");
    return sol.value;
}

double relative_improvement(double v_bound, double v_star) {
    if (v_bound == 0.0) throw std::domain_error("relative_improvement: zero bound");
    return (v_bound - v_star) / std::abs(v_bound);
}

std::vector<ValueVector> prune_to_ccs(std::span<const ValueVector> set) {
    std::vector<ValueVector> unique;
    for (const auto& v : set) {
        const bool dup = std::any_of(unique.begin(), unique.end(), [&](const ValueVector& u) {
            return u.max_norm_distance(v) <= kDuplicateTolerance;
        });
        if (!dup) unique.push_back(v);
    }
    std::vector<ValueVector> kept;
    std::vector<ValueVector> others;
    for (std::size_t i = 0; i < unique.size(); ++i) {
        others.clear();
        for (std::size_t j = 0; j < unique.size(); ++j)
            if (j != i) others.push_back(unique[j]);
        if (is_convex_undominated(unique[i], others)) kept.push_back(unique[i]);
    }
    return kept;
}

}  // namespace vmorl::ccs
