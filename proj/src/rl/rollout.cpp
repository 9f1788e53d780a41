#include "vmorl/rl/rollout.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#include "vmorl/core/types.hpp"

namespace vmorl::rl {

std::vector<EnvWorker> make_workers(const envs::EnvFactory& factory, std::size_t copies, std::uint64_t seed) {
    if (copies == 0) throw std::invalid_argument("make_workers: need at least one copy");
    std::vector<EnvWorker> workers;
    workers.reserve(copies);
    for (std::size_t c = 0; c < copies; ++c) {
        auto env = factory();
        if (!env) throw std::runtime_error("make_workers: factory returned no environment");
        workers.push_back({std::move(env), Rng(derive_seed(seed, c))});
    }
    return workers;
}

namespace {

CopyRollout run_copy(EnvWorker& w, const nn::GaussianPolicy& policy, std::size_t steps) {
    auto& env = *w.env;
    if (env.state_dim() != policy.state_dim() || env.action_dim() != policy.action_dim())
        throw DimensionError("collect_rollouts: policy does not match environment dimensions");
    CopyRollout out{TrajectoryBatch(env.objectives()), {}};
    auto state = env.reset(w.rng);
    for (std::size_t t = 0; t < steps; ++t) {
        auto action = policy.mean(state);
        const auto mean = action;
        const auto& log_std = policy.log_std();
        for (std::size_t k = 0; k < action.size(); ++k) action[k] += std::exp(log_std[k]) * standard_normal(w.rng);
        const double lp = nn::gaussian_log_density(action, mean, log_std);
        auto step = env.step(action, w.rng);
        const bool done = step.done;
        out.batch.push({std::move(state), std::move(action), std::move(step.reward), done, lp});
        state = done ? env.reset(w.rng) : std::move(step.state);
    }
    out.next_state = std::move(state);
    return out;
}

}  // namespace

std::vector<CopyRollout> collect_rollouts(std::vector<EnvWorker>& workers, const nn::GaussianPolicy& policy,
                                          std::size_t steps) {
    std::vector<CopyRollout> out(workers.size(), CopyRollout{TrajectoryBatch(1), {}});
    const auto n = static_cast<std::ptrdiff_t>(workers.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < n; ++c) {
        try {
            out[c] = run_copy(workers[c], policy, steps);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

namespace reference {
std::vector<CopyRollout> collect_rollouts(std::vector<EnvWorker>& workers, const nn::GaussianPolicy& policy,
                                          std::size_t steps) {
    std::vector<CopyRollout> out;
    for (auto& w : workers) out.push_back(run_copy(w, policy, steps));
    return out;
}
}  // namespace reference

std::vector<EvaluationEpisode> evaluate_policy(const envs::EnvFactory& factory, const nn::GaussianPolicy& policy,
                                               std::size_t episodes, std::uint64_t seed, double gamma) {
    if (episodes == 0) throw std::invalid_argument("evaluate_policy: need at least one episode");
    std::vector<EvaluationEpisode> out(episodes);
    const auto n = static_cast<std::ptrdiff_t>(episodes);
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t e = 0; e < n; ++e) {
        try {
            auto env = factory();
            if (env->state_dim() != policy.state_dim() || env->action_dim() != policy.action_dim())
                throw DimensionError("evaluate_policy: policy does not match environment dimensions");
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(e)));
            const std::size_t I = env->objectives();
            std::vector<double> total(I, 0.0), disc(I, 0.0);
            double discount = 1.0;
            auto state = env->reset(rng);
            std::size_t len = 0;
            for (;;) {
                auto step = env->step(policy.mean(state), rng);
                for (std::size_t i = 0; i < I; ++i) {
                    total[i] += step.reward[i];
                    disc[i] += discount * step.reward[i];
                }
                discount *= gamma;
                ++len;
                if (step.done || len >= env->horizon()) break;
                state = std::move(step.state);
            }
            out[e] = {ValueVector(std::move(total)), ValueVector(std::move(disc)), len};
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace vmorl::rl
