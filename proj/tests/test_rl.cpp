#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "oracles.hpp"
#include "vmorl/ccs/aols.hpp"
#include "vmorl/core/rng.hpp"
#include "vmorl/envs/environment.hpp"
#include "vmorl/envs/toy_locomotion.hpp"
#include "vmorl/envs/treasure_grid.hpp"
#include "vmorl/nn/adam.hpp"
#include "vmorl/rl/advantage.hpp"
#include "vmorl/rl/critic.hpp"
#include "vmorl/rl/iorm_select.hpp"
#include "vmorl/rl/ppo.hpp"
#include "vmorl/rl/rollout.hpp"
#include "vmorl/rl/trainer.hpp"

using namespace vmorl;
using namespace vmorl::rl;

namespace {

envs::EnvFactory grid_factory() {
    return [] { return std::make_unique<envs::ArgmaxAdapter>(std::make_unique<envs::TreasureGrid>(envs::TreasureGridConfig{})); };
}

envs::EnvFactory single_channel_factory() {
    return [] {
        return std::make_unique<envs::ChannelSelect>(
            std::make_unique<envs::ArgmaxAdapter>(std::make_unique<envs::TreasureGrid>(envs::TreasureGridConfig{})),
            std::vector<std::size_t>{0});
    };
}

TrainerConfig small_config() {
    TrainerConfig cfg;
    cfg.steps_per_update = 40;
    cfg.env_copies = 2;
    cfg.epochs = 3;
    cfg.minibatch = 16;
    cfg.updates_per_objective = 2;
    cfg.hidden = {8};
    cfg.learning_rate = 1e-3;
    cfg.termination_epsilon = 0.0;
    cfg.seed = 7;
    return cfg;
}

/// Throws from step() after a fixed number of calls.
class FaultyEnv final : public envs::Environment {
public:
    explicit FaultyEnv(std::size_t fail_after) : fail_after_(fail_after) {}
    std::size_t state_dim() const override { return 1; }
    std::size_t action_dim() const override { return 1; }
    std::size_t objectives() const override { return 2; }
    std::size_t horizon() const override { return 5; }
    std::vector<double> reset(Rng&) override { t_ = 0; return {0.0}; }
    envs::StepResult step(std::span<const double>, Rng&) override {
        if (++calls_ > fail_after_) throw std::runtime_error("sensor failure");
        ++t_;
        return {{static_cast<double>(t_)}, {1.0, -1.0}, t_ >= 5};
    }

private:
    std::size_t fail_after_;
    std::size_t calls_ = 0;
    std::size_t t_ = 0;
};

std::vector<PpoSample> random_samples(const nn::GaussianPolicy& pol, Rng& rng, std::size_t n) {
    std::vector<PpoSample> out;
    for (std::size_t k = 0; k < n; ++k) {
        PpoSample s;
        s.state.resize(pol.state_dim());
        for (double& x : s.state) x = uniform(rng, -1, 1);
        s.action = pol.sample(s.state, rng);
        s.old_log_prob = pol.log_prob(s.state, s.action);
        s.advantage = uniform(rng, -2, 2);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

TEST_SUITE("rl") {

TEST_CASE("TD residual examples") {
    CHECK(td_residuals(std::vector<double>{0.0}, std::vector<double>{0.0, 0.0}, {false}, 0.9) == std::vector<double>{0.0});
    CHECK(td_residuals(std::vector<double>{1.0}, std::vector<double>{0.0, 0.0}, {false}, 0.3) == std::vector<double>{1.0});
    const auto d = td_residuals(std::vector<double>{1.0, 1.0}, std::vector<double>{0.5, 0.4, 0.3}, {false, false}, 0.99);
    CHECK(d[0] == doctest::Approx(0.896).epsilon(1e-12));
    CHECK(d[1] == doctest::Approx(0.897).epsilon(1e-12));
    const auto t = td_residuals(std::vector<double>{1.0}, std::vector<double>{0.5, 100.0}, {true}, 0.99);
    CHECK(t[0] == 0.5);
    CHECK_THROWS_AS(td_residuals(std::vector<double>{1.0}, std::vector<double>{0.0}, {false}, 0.9), DimensionError);
    CHECK_THROWS_AS(td_residuals(std::vector<double>{1.0}, std::vector<double>{0.0, 0.0}, {false, true}, 0.9), DimensionError);
}

TEST_CASE("GAE limits") {
    const std::vector<double> d{0.3, -1.0, 2.5};
    CHECK(gae(d, {false, false, false}, 0.99, 0.0) == d);
    CHECK(gae(std::vector<double>{4.2}, {false}, 0.9, 0.95) == std::vector<double>{4.2});
}

TEST_CASE("GAE recursion equals the explicit double sum") {
    Rng rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t T = 1 + rng() % 100;
        std::vector<double> r(T), v(T + 1);
        std::vector<bool> done(T);
        for (std::size_t t = 0; t < T; ++t) {
            r[t] = uniform(rng, -1, 1);
            done[t] = rng() % 10 == 0;
        }
        for (double& x : v) x = uniform(rng, -1, 1);
        const double gamma = uniform(rng, 0.5, 1.0), lambda = uniform(rng, 0.0, 1.0);
        const auto adv = gae(td_residuals(r, v, done, gamma), done, gamma, lambda);
        const auto ref = oracle::gae_double_sum(r, v, done, gamma, lambda);
        for (std::size_t t = 0; t < T; ++t) CHECK(std::abs(adv[t] - ref[t]) < 1e-12);
    }
}

TEST_CASE("GAE with unit discounts and zero values is the undiscounted reward sum") {
    Rng rng(5);
    const std::size_t T = 30;
    std::vector<double> r(T), v(T + 1, 0.0);
    std::vector<bool> done(T);
    for (std::size_t t = 0; t < T; ++t) {
        r[t] = uniform(rng, -1, 1);
        done[t] = t % 7 == 6;
    }
    const auto adv = gae(td_residuals(r, v, done, 1.0), done, 1.0, 1.0);
    const auto rtg = rewards_to_go(r, done, 1.0);
    for (std::size_t t = 0; t < T; ++t) CHECK(adv[t] == doctest::Approx(rtg[t]).epsilon(1e-12));
}

TEST_CASE("rewards-to-go examples") {
    const std::vector<double> r{1.0, 1.0, 1.0};
    const auto g = rewards_to_go(r, {false, false, false}, 0.5);
    CHECK(g == std::vector<double>{1.75, 1.5, 1.0});
    CHECK(rewards_to_go(std::vector<double>{2.0, -3.0, 4.0}, {false, false, false}, 0.0) ==
          std::vector<double>{2.0, -3.0, 4.0});
    CHECK(rewards_to_go(std::vector<double>{2.0, 5.0, 5.0}, {true, false, false}, 0.9)[0] == 2.0);
    const auto boot = rewards_to_go(std::vector<double>{1.0}, {false}, 0.5, 10.0);
    CHECK(boot[0] == 6.0);
    const auto no_boot = rewards_to_go(std::vector<double>{1.0}, {true}, 0.5, 10.0);
    CHECK(no_boot[0] == 1.0);
}

TEST_CASE("advantage normalization") {
    std::vector<double> a{1.0, 2.0, 3.0, 4.0};
    normalize_advantages(a);
    const double mean = std::accumulate(a.begin(), a.end(), 0.0) / 4.0;
    double var = 0.0;
    for (double x : a) var += (x - mean) * (x - mean);
    CHECK(std::abs(mean) < 1e-15);
    CHECK(var / 4.0 == doctest::Approx(1.0));
    std::vector<double> flat{3.0, 3.0};
    normalize_advantages(flat);
    CHECK(flat == std::vector<double>{0.0, 0.0});
}

TEST_CASE("clipped objective matches a hand table") {
    struct Row { double r, a, expected; };
    const Row table[] = {
        {1.0, 2.0, 2.0},   {1.5, 1.0, 1.2},  {0.5, 1.0, 0.5},   {1.1, 1.0, 1.1},
        {0.5, -1.0, -0.8}, {1.5, -1.0, -1.5}, {0.9, -2.0, -1.8}, {1.3, 0.0, 0.0},
    };
    for (const auto& row : table) CHECK(clipped_objective(row.r, row.a, 0.2) == doctest::Approx(row.expected));
    CHECK(clipped_objective_slope(1.5, 1.0, 0.2) == 0.0);
    CHECK(clipped_objective_slope(0.5, -1.0, 0.2) == 0.0);
    CHECK(clipped_objective_slope(1.1, 1.0, 0.2) == doctest::Approx(1.1));
    CHECK(clipped_objective_slope(1.5, -1.0, 0.2) == doctest::Approx(-1.5));
}

TEST_CASE("surrogate at the collection policy equals the mean advantage") {
    Rng rng(21);
    const auto pol = nn::GaussianPolicy::make(3, 2, {8, 8}, rng);
    const auto samples = random_samples(pol, rng, 37);
    double mean = 0.0;
    for (const auto& s : samples) mean += s.advantage;
    mean /= static_cast<double>(samples.size());
    CHECK(surrogate(pol, samples, 0.2) == doctest::Approx(mean).epsilon(1e-15));
}

TEST_CASE("surrogate gradient at the collection policy is the vanilla policy gradient") {
    Rng rng(22);
    auto pol = nn::GaussianPolicy::make(2, 1, {4}, rng);
    const auto samples = random_samples(pol, rng, 12);
    const auto grad = surrogate_gradient(pol, samples, 0.2);
    std::vector<double> pg(pol.parameter_count(), 0.0);
    for (const auto& s : samples)
        pol.log_prob_gradient(s.state, s.action, s.advantage / static_cast<double>(samples.size()), pg);
    for (std::size_t k = 0; k < pg.size(); ++k) CHECK(grad[k] == doctest::Approx(pg[k]).epsilon(1e-12));
    const double fd = oracle::max_fd_error(pol.parameters(), [&](const std::vector<double>& p) {
        auto q = pol;
        q.set_parameters(p);
        return surrogate(q, samples, 0.2);
    }, grad);
    CHECK(fd < 1e-3);
}

TEST_CASE("samples in the clipped region contribute no gradient") {
    Rng rng(23);
    const auto pol = nn::GaussianPolicy::make(2, 1, {4}, rng);
    std::vector<PpoSample> samples = random_samples(pol, rng, 2);
    // ratio = exp(log pi - old) = e^0.5 > 1.2 with A > 0, and e^-0.5 < 0.8 with A < 0.
    samples[0].old_log_prob = pol.log_prob(samples[0].state, samples[0].action) - 0.5;
    samples[0].advantage = 1.0;
    samples[1].old_log_prob = pol.log_prob(samples[1].state, samples[1].action) + 0.5;
    samples[1].advantage = -1.0;
    for (double g : surrogate_gradient(pol, samples, 0.2)) CHECK(g == 0.0);
}

TEST_CASE("PPO update improves the surrogate and reports diagnostics") {
    Rng rng(24);
    auto pol = nn::GaussianPolicy::make(2, 1, {8}, rng);
    const auto samples = random_samples(pol, rng, 128);
    nn::AdamState adam(pol.parameter_count(), nn::AdamConfig{1e-2});
    Rng shuffle(1);
    const auto diag = ppo_actor_update(pol, adam, samples, PpoConfig{0.2, 4, 32}, shuffle);
    CHECK_FALSE(diag.aborted);
    CHECK(diag.steps == 16);
    CHECK(diag.surrogate_after > diag.surrogate_before);
    CHECK(diag.approx_kl >= 0.0);
    CHECK(diag.clip_fraction >= 0.0);
    CHECK(diag.clip_fraction <= 1.0);
}

TEST_CASE("PPO update rolls back on a non-finite advantage") {
    Rng rng(25);
    auto pol = nn::GaussianPolicy::make(2, 1, {8}, rng);
    auto samples = random_samples(pol, rng, 16);
    samples[3].advantage = std::numeric_limits<double>::quiet_NaN();
    nn::AdamState adam(pol.parameter_count());
    const auto pol0 = pol;
    const auto adam0 = adam;
    Rng shuffle(1);
    const auto diag = ppo_actor_update(pol, adam, samples, PpoConfig{}, shuffle);
    CHECK(diag.aborted);
    CHECK(pol == pol0);
    CHECK(adam == adam0);
}

TEST_CASE("critic regresses onto a constant target") {
    Rng rng(30);
    auto bank = CriticBank::make(1, 1, {8}, rng);
    nn::AdamState adam(bank.current(0).parameter_count(), nn::AdamConfig{1e-2});
    const std::vector<std::vector<double>> states(32, std::vector<double>{1.0});
    const std::vector<double> targets(32, 3.0);
    Rng shuffle(2);
    for (int k = 0; k < 100; ++k) critic_update(bank, 0, adam, states, targets, CriticConfig{10, 32}, shuffle);
    CHECK(std::abs(bank.values(states[0])[0] - 3.0) < 0.01);
}

TEST_CASE("full-batch critic loss never increases") {
    Rng rng(31);
    auto bank = CriticBank::make(1, 3, {16}, rng);
    nn::AdamState adam(bank.current(0).parameter_count());
    std::vector<std::vector<double>> states;
    std::vector<double> targets;
    for (int k = 0; k < 64; ++k) {
        states.push_back({uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)});
        targets.push_back(states.back()[0] - 2.0 * states.back()[1]);
    }
    Rng shuffle(3);
    double prev = critic_loss(bank.current(0), states, targets);
    for (int epoch = 0; epoch < 50; ++epoch) {
        critic_update(bank, 0, adam, states, targets, CriticConfig{1, 64}, shuffle);
        const double now = critic_loss(bank.current(0), states, targets);
        CHECK(now <= prev + 1e-12);
        prev = now;
    }
}

TEST_CASE("zero-epoch critic update and perfect fit leave the critic alone") {
    Rng rng(32);
    auto bank = CriticBank::make(2, 2, {4}, rng);
    const auto before = bank;
    nn::AdamState adam(bank.current(1).parameter_count());
    const std::vector<std::vector<double>> states{{0.1, 0.2}, {0.3, -0.4}};
    const std::vector<double> targets{bank.values(states[0])[1], bank.values(states[1])[1]};
    Rng shuffle(4);
    critic_update(bank, 1, adam, states, targets, CriticConfig{0, 2}, shuffle);
    CHECK(bank == before);
    const std::vector<std::size_t> idx{0, 1};
    const auto g = critic_loss_gradient(bank.current(1), states, targets, idx);
    double norm = 0.0;
    for (double x : g) norm += x * x;
    CHECK(std::sqrt(norm) < 1e-8);
    const std::vector<double> bad{1.0, std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(critic_update(bank, 1, adam, states, bad, CriticConfig{}, shuffle), std::invalid_argument);
}

TEST_CASE("critic gradient matches finite differences") {
    Rng rng(33);
    auto bank = CriticBank::make(1, 2, {5}, rng);
    std::vector<std::vector<double>> states{{0.5, -0.1}, {1.0, 0.3}, {-0.7, 0.9}};
    std::vector<double> targets{1.0, -2.0, 0.5};
    const std::vector<std::size_t> idx{0, 1, 2};
    const auto grad = critic_loss_gradient(bank.current(0), states, targets, idx);
    const auto& net = bank.current(0);
    const std::vector<double> base(net.parameters().begin(), net.parameters().end());
    CHECK(oracle::max_fd_error(base, [&](const std::vector<double>& p) {
        auto m = net;
        std::copy(p.begin(), p.end(), m.parameters().begin());
        return critic_loss(m, states, targets);
    }, grad) < 1e-4);
}

TEST_CASE("IORM row selection examples") {
    ccs::AolsResult extrema;
    extrema.explored = {WeightVector::unit(3, 0), WeightVector::unit(3, 1), WeightVector::unit(3, 2)};
    CHECK(iorm_row_select(extrema, 1, ValueVector({5, 1, 2})) == WeightVector::unit(3, 1));

    ccs::AolsResult mixed;
    mixed.explored = {WeightVector::unit(2, 0), WeightVector::unit(2, 1), WeightVector({0.6, 0.4})};
    CHECK(iorm_row_select(mixed, 0, ValueVector({1, 1})) == WeightVector({0.6, 0.4}));

    ccs::AolsResult pair;
    pair.explored = {WeightVector::unit(2, 0), WeightVector({0.5, 0.5})};
    CHECK(iorm_row_select(pair, 0, ValueVector({10, 0})) == WeightVector::unit(2, 0));

    ccs::AolsResult none;
    none.explored = {WeightVector({0.9, 0.1})};
    CHECK(iorm_row_select(none, 1, ValueVector({1, 1})) == WeightVector::unit(2, 1));
}

TEST_CASE("IORM row selection agrees with an exhaustive scan") {
    Rng rng(34);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t I = 2 + trial % 3;
        ccs::AolsResult res;
        for (std::size_t k = 0; k < 6; ++k) {
            std::vector<double> raw(I);
            for (double& x : raw) x = uniform(rng, 0, 1);
            res.explored.push_back(WeightVector::normalized(raw));
        }
        std::vector<double> raw(I);
        for (double& x : raw) x = uniform(rng, -5, 5);
        const ValueVector v(raw);
        const std::size_t i = rng() % I;
        double best = -1e300;
        WeightVector expected = WeightVector::unit(I, i);
        for (const auto& w : res.explored) {
            if (*std::max_element(w.begin(), w.end()) != w[i]) continue;
            if (w.dot(v) > best) {
                best = w.dot(v);
                expected = w;
            }
        }
        CHECK(iorm_row_select(res, i, v) == expected);
    }
}

TEST_CASE("parallel rollouts match the serial reference") {
    Rng rng(40);
    const auto pol = nn::GaussianPolicy::make(4, 2, {8}, rng);
    const envs::EnvFactory factory = [] { return std::make_unique<envs::ToyLocomotion>(envs::ToyLocomotionConfig{}); };
    auto a = make_workers(factory, 3, 99);
    auto b = make_workers(factory, 3, 99);
    const auto ra = collect_rollouts(a, pol, 250);
    const auto rb = reference::collect_rollouts(b, pol, 250);
    REQUIRE(ra.size() == rb.size());
    for (std::size_t c = 0; c < ra.size(); ++c) {
        REQUIRE(ra[c].batch.size() == 250);
        CHECK(ra[c].next_state == rb[c].next_state);
        for (std::size_t t = 0; t < 250; ++t) {
            CHECK(ra[c].batch[t].action == rb[c].batch[t].action);
            CHECK(ra[c].batch[t].reward == rb[c].batch[t].reward);
            CHECK(ra[c].batch[t].log_prob == rb[c].batch[t].log_prob);
        }
    }
    CHECK(ra[0].batch[0].action != ra[1].batch[0].action);
}

TEST_CASE("evaluation is deterministic and uses mean actions") {
    Rng rng(41);
    const auto pol = nn::GaussianPolicy::make(4, 2, {8}, rng);
    const envs::EnvFactory factory = [] { return std::make_unique<envs::ToyLocomotion>(envs::ToyLocomotionConfig{}); };
    const auto a = evaluate_policy(factory, pol, 4, 5, 0.99);
    const auto b = evaluate_policy(factory, pol, 4, 5, 0.99);
    REQUIRE(a.size() == 4);
    for (std::size_t e = 0; e < 4; ++e) {
        CHECK(a[e].undiscounted == b[e].undiscounted);
        CHECK(a[e].length == 200);
        CHECK(a[e].undiscounted[2] == 200.0);
    }
}

TEST_CASE("single-objective training reduces to plain PPO bit for bit") {
    auto cfg = small_config();
    const auto multi = train(single_channel_factory(), cfg);
    const auto single = train_single_objective(single_channel_factory(), cfg);
    REQUIRE_FALSE(multi.aborted);
    CHECK(multi.iorm == Iorm::identity(1));
    CHECK(multi.actor == single.actor);
    CHECK(multi.critics == single.critics);
    REQUIRE(multi.metrics.size() == single.metrics.size());
    for (std::size_t k = 0; k < multi.metrics.size(); ++k) {
        CHECK(multi.metrics[k].mean_return == single.metrics[k].mean_return);
        CHECK(multi.metrics[k].clip_fraction == single.metrics[k].clip_fraction);
        CHECK(multi.metrics[k].approx_kl == single.metrics[k].approx_kl);
    }
}

TEST_CASE("training keeps IORM rows on the simplex and is deterministic") {
    auto cfg = small_config();
    cfg.env_copies = 1;
    const auto a = train(grid_factory(), cfg);
    const auto b = train(grid_factory(), cfg);
    REQUIRE_FALSE(a.aborted);
    CHECK(a.metrics.size() == 4);
    CHECK(a.sequence_actors.size() == 2);
    for (const auto& row : a.iorm.rows()) {
        double sum = 0.0;
        for (double x : row) {
            CHECK(x >= 0.0);
            sum += x;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
    CHECK(a.actor == b.actor);
    CHECK(a.critics == b.critics);
    CHECK(a.iorm == b.iorm);
    for (std::size_t k = 0; k < a.metrics.size(); ++k) CHECK(a.metrics[k].delta_r == b.metrics[k].delta_r);
}

TEST_CASE("training results do not depend on the callback") {
    auto cfg = small_config();
    std::size_t calls = 0;
    const auto a = train(grid_factory(), cfg, [&](const UpdateMetrics&) { ++calls; });
    const auto b = train(grid_factory(), cfg);
    CHECK(calls == a.metrics.size());
    CHECK(a.actor == b.actor);
}

TEST_CASE("an environment fault aborts the run cleanly") {
    auto cfg = small_config();
    cfg.steps_per_update = 10;
    cfg.hidden = {4};
    const envs::EnvFactory factory = [] { return std::make_unique<FaultyEnv>(25); };
    const auto res = train(factory, cfg);
    CHECK(res.aborted);
    CHECK(res.error.find("sensor failure") != std::string::npos);
    CHECK(res.metrics.size() == 2);
}

TEST_CASE("trainer configuration is validated") {
    auto cfg = small_config();
    cfg.gamma = 1.5;
    CHECK_THROWS_AS(train(grid_factory(), cfg), std::invalid_argument);
    cfg = small_config();
    cfg.steps_per_update = 5;
    CHECK_THROWS_AS(train(grid_factory(), cfg), std::invalid_argument);
    cfg = small_config();
    cfg.objectives = 3;
    CHECK_THROWS_AS(train(grid_factory(), cfg), std::invalid_argument);
}

TEST_CASE("the episode pool oracle maximizes the scalarized return") {
    const auto oracle = episode_pool_oracle({ValueVector({1, 0}), ValueVector({0, 1}), ValueVector({0.6, 0.6})}, ValueVector({0, 0}));
    CHECK(oracle(WeightVector({0.5, 0.5})) == ValueVector({0.6, 0.6}));
    CHECK(oracle(WeightVector::unit(2, 0)) == ValueVector({1, 0}));
    const auto empty = episode_pool_oracle({}, ValueVector({3, 4}));
    CHECK(empty(WeightVector({0.5, 0.5})) == ValueVector({3, 4}));
}

}  // TEST_SUITE
