#include "vmorl/rl/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>

#include "vmorl/ccs/ccs.hpp"
#include "vmorl/rl/advantage.hpp"
#include "vmorl/rl/iorm_select.hpp"
#include "vmorl/rl/ppo.hpp"
#include "vmorl/rl/rollout.hpp"

namespace vmorl::rl {

void TrainerConfig::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("TrainerConfig: " + what); };
    if (!(clip > 0.0)) fail("clip must be positive");
    if (!(gamma >= 0.0 && gamma <= 1.0)) fail("gamma must lie in [0,1]");
    if (!(lambda >= 0.0 && lambda <= 1.0)) fail("lambda must lie in [0,1]");
    if (steps_per_update == 0) fail("steps_per_update must be >= 1");
    if (env_copies == 0) fail("env_copies must be >= 1");
    if (epochs == 0) fail("epochs must be >= 1");
    if (minibatch == 0) fail("minibatch must be >= 1");
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) fail("learning_rate must be positive");
    if (!(aols_epsilon > 0.0)) fail("aols_epsilon must be positive");
    if (!(termination_epsilon >= 0.0)) fail("termination_epsilon must be >= 0");
    if (updates_per_objective == 0) fail("updates_per_objective must be >= 1");
    if (objectives != 0 && aols_max_iterations < objectives) fail("aols_max_iterations must be >= objectives");
    if (aols_max_iterations == 0) fail("aols_max_iterations must be >= 1");
    for (std::size_t h : hidden)
        if (h == 0) fail("hidden layer sizes must be >= 1");
}

ccs::ValueOracle episode_pool_oracle(std::vector<ValueVector> pool, ValueVector fallback) {
    return [pool = std::move(pool), fallback = std::move(fallback)](const WeightVector& w) {
        if (pool.empty()) return fallback;
        return ccs::scalarized_max(pool, w).maximizer;
    };
}

namespace {

constexpr std::uint64_t kActorInitStream = 1;
constexpr std::uint64_t kCriticInitStream = 2;
constexpr std::uint64_t kWorkerStream = 3;
constexpr std::uint64_t kActorUpdateStream = 4;
constexpr std::uint64_t kCriticUpdateStream = 100;

double relative_or_absolute(double bound, double star) {
    return bound == 0.0 ? bound - star : ccs::relative_improvement(bound, star);
}

struct Setup {
    std::size_t objectives = 0;
    std::size_t state_dim = 0;
    std::size_t action_dim = 0;
};

Setup probe(const envs::EnvFactory& factory, const TrainerConfig& cfg) {
    cfg.validate();
    auto env = factory();
    if (!env) throw std::invalid_argument("train: factory returned no environment");
    Setup s{env->objectives(), env->state_dim(), env->action_dim()};
    if (cfg.objectives != 0 && cfg.objectives != s.objectives)
        throw std::invalid_argument("train: configured " + std::to_string(cfg.objectives) +
                                    " objectives, environment has " + std::to_string(s.objectives));
    if (cfg.aols_max_iterations < s.objectives)
        throw std::invalid_argument("TrainerConfig: aols_max_iterations must be >= objectives");
    if (cfg.steps_per_update < env->horizon())
        throw std::invalid_argument("TrainerConfig: steps_per_update (" + std::to_string(cfg.steps_per_update) +
                                    ") must be >= the environment horizon (" + std::to_string(env->horizon()) + ")");
    return s;
}

// Frozen-critic values for every state of each copy plus its bootstrap state, [t][j].
std::vector<std::vector<std::vector<double>>> frozen_values(const CriticBank& critics,
                                                            const std::vector<CopyRollout>& rollouts) {
    std::vector<std::vector<std::vector<double>>> out(rollouts.size());
    const auto n = static_cast<std::ptrdiff_t>(rollouts.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < n; ++c) {
        const auto& r = rollouts[c];
        auto& v = out[c];
        v.reserve(r.batch.size() + 1);
        for (const auto& step : r.batch.steps()) v.push_back(critics.old_values(step.state));
        v.push_back(critics.old_values(r.next_state));
    }
    return out;
}

struct EpisodeStats {
    std::vector<ValueVector> discounted;
    std::vector<double> mean_undiscounted;
};

EpisodeStats episode_stats(const std::vector<CopyRollout>& rollouts, std::size_t objectives, double gamma) {
    EpisodeStats s;
    s.mean_undiscounted.assign(objectives, 0.0);
    for (const auto& r : rollouts)
        for (std::size_t e = 0; e < r.batch.episodes().size(); ++e) {
            const auto& ep = r.batch.episodes()[e];
            if (!ep.complete) continue;
            s.discounted.push_back(discounted_return(r.batch, e, gamma));
            for (std::size_t t = ep.begin; t < ep.end; ++t)
                for (std::size_t j = 0; j < objectives; ++j) s.mean_undiscounted[j] += r.batch[t].reward[j];
        }
    if (!s.discounted.empty())
        for (double& m : s.mean_undiscounted) m /= static_cast<double>(s.discounted.size());
    return s;
}

std::vector<double> mean_of(const std::vector<ValueVector>& xs, std::size_t objectives) {
    std::vector<double> m(objectives, 0.0);
    for (const auto& x : xs)
        for (std::size_t j = 0; j < objectives; ++j) m[j] += x[j];
    if (!xs.empty())
        for (double& v : m) v /= static_cast<double>(xs.size());
    return m;
}

struct Learners {
    nn::GaussianPolicy actor;
    CriticBank critics;
    nn::AdamState actor_opt;
    std::vector<nn::AdamState> critic_opt;
    Rng actor_rng;
    std::vector<Rng> critic_rng;
};

Learners make_learners(const Setup& s, const TrainerConfig& cfg) {
    Rng actor_init(derive_seed(cfg.seed, kActorInitStream));
    Rng critic_init(derive_seed(cfg.seed, kCriticInitStream));
    Learners l;
    l.actor = nn::GaussianPolicy::make(s.state_dim, s.action_dim, cfg.hidden, actor_init);
    l.critics = CriticBank::make(s.objectives, s.state_dim, cfg.hidden, critic_init);
    const nn::AdamConfig adam{cfg.learning_rate};
    l.actor_opt = nn::AdamState(l.actor.parameter_count(), adam);
    for (std::size_t j = 0; j < s.objectives; ++j) {
        l.critic_opt.emplace_back(l.critics.current(j).parameter_count(), adam);
        l.critic_rng.emplace_back(derive_seed(cfg.seed, kCriticUpdateStream + j));
    }
    l.actor_rng.seed(derive_seed(cfg.seed, kActorUpdateStream));
    return l;
}

std::vector<std::vector<double>> all_states(const std::vector<CopyRollout>& rollouts) {
    std::vector<std::vector<double>> states;
    for (const auto& r : rollouts)
        for (const auto& step : r.batch.steps()) states.push_back(step.state);
    return states;
}

// Regresses critic j onto its discounted rewards-to-go, bootstrapping any
// unfinished tail with the frozen critic.
void fit_critics(Learners& l, const std::vector<CopyRollout>& rollouts,
                 const std::vector<std::vector<std::vector<double>>>& frozen,
                 const std::vector<std::vector<double>>& states, const TrainerConfig& cfg) {
    const std::size_t I = l.critics.size();
    std::vector<std::vector<double>> targets(I);
    for (std::size_t c = 0; c < rollouts.size(); ++c) {
        const auto dones = rollouts[c].batch.dones();
        const bool tail_open = !dones.empty() && !dones.back();
        for (std::size_t j = 0; j < I; ++j) {
            const double tail = tail_open ? frozen[c].back()[j] : 0.0;
            const auto rtg = rewards_to_go(rollouts[c].batch.channel(j), dones, cfg.gamma, tail);
            targets[j].insert(targets[j].end(), rtg.begin(), rtg.end());
        }
    }
    const CriticConfig ccfg{cfg.epochs, cfg.minibatch};
    std::vector<CriticDiagnostics> diag(I);
    const auto n = static_cast<std::ptrdiff_t>(I);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j)
        diag[j] = critic_update(l.critics, static_cast<std::size_t>(j), l.critic_opt[j], states, targets[j], ccfg,
                                l.critic_rng[j]);
}

}  // namespace

TrainResult train(const envs::EnvFactory& factory, const TrainerConfig& cfg, const UpdateCallback& on_update) {
    const Setup setup = probe(factory, cfg);
    const std::size_t I = setup.objectives;
    Learners l = make_learners(setup, cfg);
    auto workers = make_workers(factory, cfg.env_copies, derive_seed(cfg.seed, kWorkerStream));
    const PpoConfig ppo{cfg.clip, cfg.epochs, cfg.minibatch};

    TrainResult result;
    result.iorm = Iorm::identity(I);
    std::size_t update = 0;
    try {
        for (std::size_t i = 0; i < I; ++i) {
            std::size_t k = 0;
            while (k < cfg.updates_per_objective) {
                const auto rollouts = collect_rollouts(workers, l.actor, cfg.steps_per_update);
                const auto frozen = frozen_values(l.critics, rollouts);
                const auto states = all_states(rollouts);
                fit_critics(l, rollouts, frozen, states, cfg);

                const auto stats = episode_stats(rollouts, I, cfg.gamma);
                std::vector<double> critic_mean(I, 0.0);
                for (const auto& s : states) {
                    const auto v = l.critics.values(s);
                    for (std::size_t j = 0; j < I; ++j) critic_mean[j] += v[j];
                }
                for (double& v : critic_mean) v /= static_cast<double>(states.size());
                const ValueVector vhat(critic_mean);

                auto aols_result = ccs::aols(episode_pool_oracle(stats.discounted, vhat), I, cfg.aols_epsilon,
                                             cfg.aols_max_iterations);
                const WeightVector row = iorm_row_select(aols_result, i, vhat);
                result.iorm = result.iorm.with_row(i, row);

                std::vector<PpoSample> samples;
                samples.reserve(states.size());
                std::vector<double> advantages;
                advantages.reserve(states.size());
                for (std::size_t c = 0; c < rollouts.size(); ++c) {
                    const auto& batch = rollouts[c].batch;
                    std::vector<double> proxy_r(batch.size()), proxy_v(batch.size() + 1);
                    for (std::size_t t = 0; t < batch.size(); ++t) proxy_r[t] = scalarize(row, batch[t].reward);
                    for (std::size_t t = 0; t <= batch.size(); ++t) proxy_v[t] = scalarize(row, frozen[c][t]);
                    const auto dones = batch.dones();
                    const auto adv = gae(td_residuals(proxy_r, proxy_v, dones, cfg.gamma), dones, cfg.gamma,
                                         cfg.lambda);
                    advantages.insert(advantages.end(), adv.begin(), adv.end());
                    for (const auto& step : batch.steps())
                        samples.push_back({step.state, step.action, step.log_prob, 0.0});
                }
                normalize_advantages(advantages);
                for (std::size_t t = 0; t < samples.size(); ++t) samples[t].advantage = advantages[t];
                const auto diag = ppo_actor_update(l.actor, l.actor_opt, samples, ppo, l.actor_rng);
                l.critics.sync();

                UpdateMetrics m;
                m.update = update;
                m.objective = i;
                m.iteration = k;
                m.mean_return = stats.mean_undiscounted;
                m.episodes = stats.discounted.size();
                m.delta_max = aols_result.delta_max;
                const double bound = ccs::scalarized_max(aols_result.ccs, row).value + aols_result.delta_max;
                const double star = scalarize(row, mean_of(stats.discounted, I));
                m.delta_r = stats.discounted.empty() ? std::numeric_limits<double>::infinity()
                                                     : relative_or_absolute(bound, star);
                m.clip_fraction = diag.clip_fraction;
                m.approx_kl = diag.approx_kl;
                m.row = row;
                result.metrics.push_back(m);
                result.last_aols = std::move(aols_result);
                if (on_update) on_update(m);
                ++update;
                ++k;
                if (cfg.termination_epsilon > 0.0 && m.delta_r < cfg.termination_epsilon) break;
            }
            result.sequence_actors.push_back(l.actor);
            result.sequence_updates.push_back(k);
        }
    } catch (const std::exception& e) {
        result.aborted = true;
        result.error = e.what();
    }
    result.actor = std::move(l.actor);
    result.critics = std::move(l.critics);
    return result;
}

TrainResult train_single_objective(const envs::EnvFactory& factory, const TrainerConfig& cfg) {
    const Setup setup = probe(factory, cfg);
    if (setup.objectives != 1) throw std::invalid_argument("train_single_objective: environment must have one reward channel");
    Learners l = make_learners(setup, cfg);
    auto workers = make_workers(factory, cfg.env_copies, derive_seed(cfg.seed, kWorkerStream));
    const PpoConfig ppo{cfg.clip, cfg.epochs, cfg.minibatch};
    const CriticConfig ccfg{cfg.epochs, cfg.minibatch};

    TrainResult result;
    std::size_t k = 0;
    try {
        while (k < cfg.updates_per_objective) {
            const auto rollouts = collect_rollouts(workers, l.actor, cfg.steps_per_update);

            std::vector<std::vector<double>> values(rollouts.size());
            for (std::size_t c = 0; c < rollouts.size(); ++c) {
                for (const auto& step : rollouts[c].batch.steps())
                    values[c].push_back(l.critics.old(0).forward(step.state)[0]);
                values[c].push_back(l.critics.old(0).forward(rollouts[c].next_state)[0]);
            }

            std::vector<std::vector<double>> states;
            std::vector<double> targets, advantages, returns;
            std::vector<PpoSample> samples;
            double return_sum = 0.0, undiscounted_sum = 0.0;
            for (std::size_t c = 0; c < rollouts.size(); ++c) {
                const auto& batch = rollouts[c].batch;
                const auto rewards = batch.channel(0);
                const auto dones = batch.dones();
                const double tail = dones.back() ? 0.0 : values[c].back();
                const auto rtg = rewards_to_go(rewards, dones, cfg.gamma, tail);
                targets.insert(targets.end(), rtg.begin(), rtg.end());
                const auto adv = gae(td_residuals(rewards, values[c], dones, cfg.gamma), dones, cfg.gamma, cfg.lambda);
                advantages.insert(advantages.end(), adv.begin(), adv.end());
                for (const auto& step : batch.steps()) {
                    states.push_back(step.state);
                    samples.push_back({step.state, step.action, step.log_prob, 0.0});
                }
                for (const auto& ep : batch.episodes()) {
                    if (!ep.complete) continue;
                    double g = 0.0, discount = 1.0;
                    for (std::size_t t = ep.begin; t < ep.end; ++t) {
                        g += discount * rewards[t];
                        discount *= cfg.gamma;
                        undiscounted_sum += rewards[t];
                    }
                    returns.push_back(g);
                    return_sum += g;
                }
            }
            critic_update(l.critics, 0, l.critic_opt[0], states, targets, ccfg, l.critic_rng[0]);

            normalize_advantages(advantages);
            for (std::size_t t = 0; t < samples.size(); ++t) samples[t].advantage = advantages[t];
            const auto diag = ppo_actor_update(l.actor, l.actor_opt, samples, ppo, l.actor_rng);
            l.critics.sync();

            UpdateMetrics m;
            m.update = k;
            m.iteration = k;
            m.episodes = returns.size();
            m.mean_return = {returns.empty() ? 0.0 : undiscounted_sum / static_cast<double>(returns.size())};
            double best = -std::numeric_limits<double>::infinity();
            for (double g : returns) best = std::max(best, g);
            const double mean = return_sum / static_cast<double>(returns.size());
            m.delta_r = returns.empty()   ? std::numeric_limits<double>::infinity()
                        : best == 0.0     ? best - mean
                                          : (best - mean) / std::abs(best);
            m.clip_fraction = diag.clip_fraction;
            m.approx_kl = diag.approx_kl;
            m.row = WeightVector{1.0};
            result.metrics.push_back(m);
            ++k;
            if (cfg.termination_epsilon > 0.0 && m.delta_r < cfg.termination_epsilon) break;
        }
    } catch (const std::exception& e) {
        result.aborted = true;
        result.error = e.what();
    }
    result.sequence_actors.push_back(l.actor);
    result.sequence_updates.push_back(k);
    result.actor = std::move(l.actor);
    result.critics = std::move(l.critics);
    return result;
}

}  // namespace vmorl::rl
