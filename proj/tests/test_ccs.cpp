#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "vmorl/ccs/aols.hpp"
#include "vmorl/ccs/ccs.hpp"
#include "vmorl/ccs/simplex_lp.hpp"
#include "vmorl/core/rng.hpp"
#include "vmorl/envs/planning.hpp"
#include "vmorl/envs/tabular.hpp"
#include "vmorl/envs/treasure_grid.hpp"

using namespace vmorl;
using namespace vmorl::ccs;

namespace {

double envelope(const std::vector<ValueVector>& set, const WeightVector& w) {
    double best = -1e300;
    for (const auto& v : set) best = std::max(best, w.dot(v));
    return best;
}

std::vector<ValueVector> random_set(Rng& rng, std::size_t n, std::size_t dims) {
    std::vector<ValueVector> out;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> raw(dims);
        for (double& x : raw) x = uniform(rng, 0.0, 10.0);
        out.emplace_back(raw);
    }
    return out;
}

WeightVector random_weight(Rng& rng, std::size_t dims) {
    std::vector<double> raw(dims);
    for (double& x : raw) x = -std::log(uniform(rng, 1e-12, 1.0));
    return WeightVector::normalized(raw);
}

bool on_simplex(const WeightVector& w) {
    double sum = 0.0;
    for (double x : w) {
        if (x < -1e-9) return false;
        sum += x;
    }
    return std::abs(sum - 1.0) <= 1e-9;
}

bool same_set(const std::vector<ValueVector>& a, const std::vector<ValueVector>& b, double tol) {
    auto covered = [tol](const std::vector<ValueVector>& x, const std::vector<ValueVector>& y) {
        return std::all_of(x.begin(), x.end(), [&](const ValueVector& v) {
            return std::any_of(y.begin(), y.end(), [&](const ValueVector& u) { return v.max_norm_distance(u) <= tol; });
        });
    };
    return covered(a, b) && covered(b, a);
}

ValueOracle planning_oracle(const envs::TabularMomdp& m) {
    return [&m](const WeightVector& w) { return envs::value_iteration(m, w, 1e-12).value; };
}

}  // namespace

TEST_SUITE("ccs") {

TEST_CASE("simplex LP solves a textbook maximization") {
    // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  (2, 6), 36
    LinearProgram lp{{3, 5}, {{{1, 0}, Relation::less_equal, 4}, {{0, 2}, Relation::less_equal, 12},
                              {{3, 2}, Relation::less_equal, 18}}, {}};
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.value == doctest::Approx(36.0));
    CHECK(sol.x[0] == doctest::Approx(2.0));
    CHECK(sol.x[1] == doctest::Approx(6.0));
}

TEST_CASE("simplex LP reports infeasible and unbounded programs") {
    LinearProgram infeasible{{1, 1}, {{{1, 1}, Relation::less_equal, 1}, {{1, 1}, Relation::greater_equal, 2}}, {}};
    CHECK(solve_lp(infeasible).status == LpStatus::infeasible);
    LinearProgram unbounded{{1, 0}, {{{0, 1}, Relation::less_equal, 1}}, {}};
    CHECK(solve_lp(unbounded).status == LpStatus::unbounded);
    LinearProgram free_var{{-1}, {{{1}, Relation::greater_equal, -3}}, {true}};
    const auto sol = solve_lp(free_var);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.value == doctest::Approx(3.0));
}

TEST_CASE("simplex LP matches vertex enumeration on random two-variable programs") {
    Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        LinearProgram lp;
        lp.objective = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
        const std::size_t rows = 2 + rng() % 5;
        for (std::size_t r = 0; r < rows; ++r)
            lp.constraints.push_back({{uniform(rng, 0.1, 1), uniform(rng, 0.1, 1)}, Relation::less_equal, uniform(rng, 1, 5)});
        // Oracle: every feasible intersection of two tight constraints, including x = 0 and y = 0.
        std::vector<std::array<double, 3>> lines;
        for (const auto& c : lp.constraints) lines.push_back({c.coeffs[0], c.coeffs[1], c.rhs});
        lines.push_back({1, 0, 0});
        lines.push_back({0, 1, 0});
        double best = -1e300;
        for (std::size_t a = 0; a < lines.size(); ++a)
            for (std::size_t b = a + 1; b < lines.size(); ++b) {
                const double det = lines[a][0] * lines[b][1] - lines[a][1] * lines[b][0];
                if (std::abs(det) < 1e-12) continue;
                const double x = (lines[a][2] * lines[b][1] - lines[a][1] * lines[b][2]) / det;
                const double y = (lines[a][0] * lines[b][2] - lines[a][2] * lines[b][0]) / det;
                if (x < -1e-9 || y < -1e-9) continue;
                bool ok = true;
                for (const auto& c : lp.constraints) ok = ok && c.coeffs[0] * x + c.coeffs[1] * y <= c.rhs + 1e-9;
                if (ok) best = std::max(best, lp.objective[0] * x + lp.objective[1] * y);
            }
        const auto sol = solve_lp(lp);
        REQUIRE(sol.status == LpStatus::optimal);
        CHECK(sol.value == doctest::Approx(best).epsilon(1e-9));
    }
}

TEST_CASE("scalarized max returns the best dot product with lowest-index ties") {
    const std::vector<ValueVector> single{{1, 0}};
    const auto r1 = scalarized_max(single, WeightVector({0.3, 0.7}));
    CHECK(r1.value == doctest::Approx(0.3));
    CHECK(r1.maximizer == ValueVector({1, 0}));

    const std::vector<ValueVector> pair{{1, 0}, {0, 1}};
    const auto r2 = scalarized_max(pair, WeightVector({0.5, 0.5}));
    CHECK(r2.value == 0.5);
    CHECK(r2.index == 0);

    const std::vector<ValueVector> s{{3, 1}, {1, 4}};
    const auto r3 = scalarized_max(s, WeightVector({0.25, 0.75}));
    CHECK(r3.value == doctest::Approx(3.25));
    CHECK(r3.maximizer == ValueVector({1, 4}));

    CHECK_THROWS(scalarized_max(std::vector<ValueVector>{}, WeightVector({1.0})));
    CHECK_THROWS_AS(scalarized_max(s, WeightVector({1.0})), DimensionError);
}

TEST_CASE("convex dominance examples") {
    CHECK(is_convex_undominated(ValueVector({0, 0}), std::vector<ValueVector>{}));
    CHECK_FALSE(is_convex_undominated(ValueVector({0, 0}), std::vector<ValueVector>{{1, 1}}));
    CHECK_FALSE(is_convex_undominated(ValueVector({1.5, 1.5}), std::vector<ValueVector>{{3, 0}, {0, 3}}));
    CHECK(is_convex_undominated(ValueVector({1.6, 1.6}), std::vector<ValueVector>{{3, 0}, {0, 3}}));
    CHECK_FALSE(is_convex_undominated(ValueVector({1.6, 1.6}), std::vector<ValueVector>{{3, 0}, {0, 3}}, 0.2));
    CHECK_THROWS_AS(is_convex_undominated(ValueVector({1, 1}), std::vector<ValueVector>{{1, 1, 1}}), DimensionError);
}

TEST_CASE("convex dominance agrees with a dense weight grid when the margin is clear") {
    Rng rng(7);
    const auto grid = envs::simplex_grid(2, 10000);
    int decided = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto set = random_set(rng, 1 + rng() % 5, 2);
        const auto cand = random_set(rng, 1, 2).front();
        double gap = -1e300;
        for (const auto& w : grid) gap = std::max(gap, w.dot(cand) - envelope(set, w));
        if (std::abs(gap) < 1e-3) continue;
        ++decided;
        CHECK(is_convex_undominated(cand, set) == (gap > 0));
    }
    CHECK(decided > 150);
}

TEST_CASE("corner weights of a singleton are the extrema") {
    for (std::size_t dims = 1; dims <= 4; ++dims) {
        const auto corners = corner_weights(std::vector<ValueVector>{ValueVector(std::vector<double>(dims, 1.0))});
        REQUIRE(corners.size() == dims);
        for (std::size_t k = 0; k < dims; ++k) CHECK(corners[k] == WeightVector::unit(dims, k));
    }
}

TEST_CASE("corner weights include the analytic crossing of two lines") {
    const auto corners = corner_weights(std::vector<ValueVector>{{3, 1}, {1, 4}});
    REQUIRE(corners.size() == 3);
    const auto it = std::find_if(corners.begin(), corners.end(), [](const WeightVector& w) { return !w.is_extremum(); });
    REQUIRE(it != corners.end());
    CHECK((*it)[0] == doctest::Approx(0.6));
    CHECK((*it)[1] == doctest::Approx(0.4));
}

TEST_CASE("a componentwise dominated vector does not change the corners") {
    Rng rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dims = 2 + trial % 2;
        auto set = random_set(rng, 1 + rng() % 4, dims);
        const auto base = corner_weights(set);
        std::vector<double> lower(set.front().begin(), set.front().end());
        for (double& x : lower) x -= uniform(rng, 0.01, 1.0);
        set.emplace_back(lower);
        const auto with = corner_weights(set);
        REQUIRE(with.size() == base.size());
        for (std::size_t k = 0; k < base.size(); ++k) CHECK(with[k].max_norm_distance(base[k]) <= 1e-9);
    }
}

TEST_CASE("corner weights lie on the simplex, include extrema and match the envelope breakpoints") {
    Rng rng(29);
    const auto grid = envs::simplex_grid(2, 20000);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dims = 2 + trial % 3;
        const auto set = random_set(rng, 1 + rng() % 6, dims);
        const auto corners = corner_weights(set);
        for (std::size_t k = 0; k < dims; ++k)
            CHECK(std::any_of(corners.begin(), corners.end(), [&](const WeightVector& w) { return w == WeightVector::unit(dims, k); }));
        for (const auto& w : corners) CHECK(on_simplex(w));
        if (dims != 2) continue;
        // Grid oracle: the maximizer changes between neighbouring grid points only
        // across an interior corner.
        std::size_t changes = 0;
        std::size_t prev = scalarized_max(set, grid.front()).index;
        for (const auto& w : grid) {
            const auto idx = scalarized_max(set, w).index;
            if (idx != prev && std::abs(w.dot(set[idx]) - w.dot(set[prev])) > 1e-7) ++changes;
            prev = idx;
        }
        const auto interior = std::count_if(corners.begin(), corners.end(), [](const WeightVector& w) { return !w.is_extremum(); });
        CHECK(static_cast<std::size_t>(interior) >= changes);
        for (const auto& w : corners) {
            const double top = envelope(set, w);
            const auto tied = std::count_if(set.begin(), set.end(), [&](const ValueVector& v) { return top - w.dot(v) <= 1e-9; });
            if (!w.is_extremum()) CHECK(tied >= 2);
        }
    }
}

TEST_CASE("parallel corner enumeration matches the serial reference") {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t dims = 2 + trial % 3;
        const auto set = random_set(rng, 1 + rng() % 7, dims);
        CHECK(corner_weights(set) == reference::corner_weights(set));
    }
}

TEST_CASE("optimistic bound examples") {
    const WeightVector w({0.3, 0.7});
    std::vector<WeightObservation> obs{{WeightVector::unit(2, 0), 1.0}, {WeightVector::unit(2, 1), 2.0}, {w, 1.5}};
    CHECK(optimistic_bound(obs, w, 0.01) == doctest::Approx(1.51));

    const ValueVector v{2, 5};
    std::vector<WeightObservation> exact{{WeightVector::unit(2, 0), 2.0}, {WeightVector::unit(2, 1), 5.0}};
    CHECK(optimistic_bound(exact, WeightVector({0.4, 0.6}), 0.0) == doctest::Approx(WeightVector({0.4, 0.6}).dot(v)));

    std::vector<WeightObservation> corner{{WeightVector::unit(2, 0), 3.0}, {WeightVector::unit(2, 1), 4.0}};
    CHECK(optimistic_bound(corner, WeightVector({0.5, 0.5}), 0.0) == doctest::Approx(3.5));

    std::vector<WeightObservation> partial{{WeightVector::unit(2, 0), 3.0}};
    CHECK_THROWS_AS(optimistic_bound(partial, WeightVector({0.5, 0.5}), 0.0), std::domain_error);
}

TEST_CASE("optimistic bound dominates the envelope of observed vectors") {
    Rng rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dims = 2 + trial % 3;
        const auto set = random_set(rng, 1 + rng() % 4, dims);
        std::vector<WeightObservation> obs;
        for (std::size_t k = 0; k < dims; ++k) {
            const auto e = WeightVector::unit(dims, k);
            obs.push_back({e, envelope(set, e)});
        }
        for (int extra = 0; extra < 3; ++extra) {
            const auto w = random_weight(rng, dims);
            obs.push_back({w, envelope(set, w)});
        }
        for (int q = 0; q < 10; ++q) {
            const auto w = random_weight(rng, dims);
            CHECK(optimistic_bound(obs, w, 0.0) >= envelope(set, w) - 1e-9);
        }
    }
}

TEST_CASE("relative improvement arithmetic") {
    CHECK(relative_improvement(10, 10) == 0.0);
    CHECK(relative_improvement(10, 5) == 0.5);
    CHECK(relative_improvement(8, 7.6) == doctest::Approx(0.05));
    CHECK(relative_improvement(-10, -12) == doctest::Approx(0.2));
    CHECK_THROWS_AS(relative_improvement(0, 1), std::domain_error);
}

TEST_CASE("marginal weight queue pops the highest priority, infinite first, FIFO on ties") {
    MarginalWeightQueue q;
    q.push(WeightVector({0.5, 0.5}), 3.0);
    q.push(WeightVector::unit(2, 0), kInfinitePriority);
    q.push(WeightVector({0.2, 0.8}), 7.0);
    q.push(WeightVector::unit(2, 1), kInfinitePriority);
    CHECK(q.max_priority() == kInfinitePriority);
    CHECK(q.pop().weight == WeightVector::unit(2, 0));
    CHECK(q.pop().weight == WeightVector::unit(2, 1));
    CHECK(q.pop().priority == 7.0);
    CHECK(q.pop().priority == 3.0);
    CHECK(q.empty());
    CHECK(q.max_priority() == 0.0);
}

TEST_CASE("AOLS with a constant oracle stops after the extrema") {
    for (std::size_t dims = 1; dims <= 4; ++dims) {
        std::size_t calls = 0;
        const ValueVector v(std::vector<double>(dims, 2.5));
        const auto res = aols([&](const WeightVector&) { ++calls; return v; }, dims, 1e-6, 100);
        CHECK(res.ccs == std::vector<ValueVector>{v});
        CHECK(calls == dims);
        CHECK(res.delta_max == 0.0);
        CHECK_FALSE(res.hit_iteration_cap);
    }
}

TEST_CASE("AOLS flags the iteration cap") {
    const std::vector<ValueVector> arc{{10, 0}, {9, 5}, {7, 8}, {4, 9.5}, {0, 10}};
    const auto oracle = [&](const WeightVector& w) { return scalarized_max(arc, w).maximizer; };
    const auto capped = aols(oracle, 2, 1e-6, 3);
    CHECK(capped.hit_iteration_cap);
    CHECK(capped.delta_max > 1e-6);
    const auto full = aols(oracle, 2, 1e-6, 100);
    CHECK_FALSE(full.hit_iteration_cap);
    CHECK(same_set(full.ccs, arc, 1e-9));
}

TEST_CASE("AOLS with value iteration matches a 1001-point weight sweep") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto m = envs::TabularMomdp::random(500 + seed, 3 + seed % 6, 2 + seed % 2, 2, 0.9);
        const auto res = aols(planning_oracle(m), 2, 1e-6, 200);
        std::vector<ValueVector> sweep;
        for (const auto& w : envs::simplex_grid(2, 1000)) sweep.push_back(envs::reference::value_iteration(m, w, 1e-12).value);
        CHECK(same_set(res.ccs, prune_to_ccs(sweep), 1e-6));
        CHECK(res.delta_max <= 1e-6);
    }
}

TEST_CASE("AOLS is monotone, sound and epsilon-complete with an exact oracle") {
    Rng rng(41);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const std::size_t dims = 2 + seed % 2;
        const auto m = envs::TabularMomdp::random(900 + seed, 6, 3, dims, 0.8);
        const auto res = aols(planning_oracle(m), dims, 1e-6, 300);
        REQUIRE_FALSE(res.hit_iteration_cap);

        std::vector<WeightVector> probes;
        for (int k = 0; k < 100; ++k) probes.push_back(random_weight(rng, dims));
        std::vector<ValueVector> running;
        std::vector<double> last(probes.size(), -1e300);
        for (const auto& it : res.history) {
            running.push_back(it.value);
            for (std::size_t k = 0; k < probes.size(); ++k) {
                const double now = envelope(running, probes[k]);
                CHECK(now >= last[k] - 1e-12);
                last[k] = now;
            }
        }

        for (std::size_t k = 0; k < res.ccs.size(); ++k) {
            std::vector<ValueVector> others = res.ccs;
            others.erase(others.begin() + static_cast<long>(k));
            CHECK(is_convex_undominated(res.ccs[k], others));
        }

        const auto grid = envs::simplex_grid(dims, dims == 2 ? 1000 : 30);
        for (const auto& w : grid) {
            const double truth = w.dot(envs::reference::value_iteration(m, w, 1e-12).value);
            CHECK(truth - envelope(res.ccs, w) <= 1e-6 + 1e-9);
        }
    }
}

TEST_CASE("AOLS relative improvement decreases after extending pops and ends at zero") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto m = envs::TabularMomdp::random(1300 + seed, 8, 3, 2, 0.9);
        const auto res = aols(planning_oracle(m), 2, 1e-6, 200);
        REQUIRE_FALSE(res.history.empty());
        for (std::size_t k = 1; k < res.history.size(); ++k) {
            const double prev = res.history[k - 1].delta_r;
            if (std::isfinite(prev)) CHECK(res.history[k].delta_r <= prev + 1e-12);
        }
        CHECK(res.history.back().delta_r == 0.0);
    }
}

TEST_CASE("AOLS on the treasure grid matches exhaustive deterministic policy enumeration") {
    const envs::TreasureGrid grid(envs::TreasureGridConfig{});
    const double gamma = 0.9;
    const auto m = grid.to_tabular(gamma);
    const auto res = aols(planning_oracle(m), 2, 1e-6, 200);

    // Every stationary deterministic policy, rolled out from the start cell.
    const std::size_t S = grid.num_states();
    std::vector<ValueVector> returns;
    std::vector<std::size_t> policy(S, 0);
    for (;;) {
        std::size_t s = grid.start_state();
        double ret0 = 0.0, ret1 = 0.0, disc = 1.0;
        for (std::size_t t = 0; t < grid.horizon(); ++t) {
            s = grid.successor(s, policy[s]);
            const auto* tr = grid.treasure_at(s);
            ret0 += disc * (tr ? tr->value : 0.0);
            ret1 -= disc * grid.config().time_penalty;
            disc *= gamma;
            if (tr) break;
        }
        returns.push_back(ValueVector({ret0, ret1}));
        std::size_t k = 0;
        while (k < S && ++policy[k] == grid.num_actions()) policy[k++] = 0;
        if (k == S) break;
    }
    REQUIRE(returns.size() == 262144);

    for (const auto& w : envs::simplex_grid(2, 1000)) CHECK(envelope(returns, w) - envelope(res.ccs, w) <= 1e-6);
    for (const auto& v : res.ccs)
        CHECK(std::any_of(returns.begin(), returns.end(), [&](const ValueVector& u) { return u.max_norm_distance(v) <= 1e-9; }));
    CHECK(same_set(res.ccs, envs::enumerate_ccs(grid, gamma), 1e-6));
}

TEST_CASE("AOLS history CSV has one row per iteration") {
    const std::vector<ValueVector> arc{{10, 0}, {7, 8}, {0, 10}};
    const auto res = aols([&](const WeightVector& w) { return scalarized_max(arc, w).maximizer; }, 2, 1e-6, 100);
    std::ostringstream os;
    write_history_csv(os, res);
    const std::string text = os.str();
    CHECK(text.rfind("iteration,w_1,w_2,extended,delta_max,delta_r\n", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == res.history.size() + 1);
}

TEST_CASE("pruning keeps the convex-undominated members") {
    const std::vector<ValueVector> set{{3, 0}, {0, 3}, {1.5, 1.5}, {1, 1}, {2.5, 2.5}, {3, 0}};
    const auto pruned = prune_to_ccs(set);
    CHECK(same_set(pruned, {{3, 0}, {0, 3}, {2.5, 2.5}}, 0.0));
    CHECK(pruned.size() == 3);
}

}  // TEST_SUITE
