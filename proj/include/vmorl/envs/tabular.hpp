#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "vmorl/core/types.hpp"
#include "vmorl/envs/environment.hpp"

namespace vmorl::envs {

/// Finite multi-objective MDP with dense tables.
struct TabularMomdp {
    std::size_t states = 0;
    std::size_t actions = 0;
    std::size_t objectives = 0;
    double gamma = 0.9;
    std::vector<double> transitions;  // [s][a][s'], rows sum to one
    std::vector<double> rewards;      // [s][a][i]
    std::vector<double> initial;      // [s]
    std::vector<bool> terminal;       // absorbing, zero-reward states

    double transition(std::size_t s, std::size_t a, std::size_t next) const {
        return transitions[(s * actions + a) * states + next];
    }
    std::span<const double> transition_row(std::size_t s, std::size_t a) const {
        return {transitions.data() + (s * actions + a) * states, states};
    }
    std::span<const double> reward(std::size_t s, std::size_t a) const {
        return {rewards.data() + (s * actions + a) * objectives, objectives};
    }

    /// Throws std::invalid_argument on shape errors, rows not summing to one
    /// (1e-9), non-finite rewards or gamma outside [0, 1).
    void validate() const;

    /// Seeded random instance: each (s, a) moves to two random successors,
    /// rewards uniform in [0, 1), start state 0.
    static TabularMomdp random(std::uint64_t seed, std::size_t states, std::size_t actions,
                               std::size_t objectives, double gamma);
};

// Text format:
//   line 1: <|S|> <|A|> <I> <gamma>
//   line 2: "initial" followed by |S| probabilities
//   line 3: "terminal" followed by the count and the terminal state indices
//   next |S|*|A| lines: transition row P(.|s,a), s-major then a
//   next |S|*|A| lines: reward vector R(s,a), same order
// Blank lines and lines starting with '#' are ignored.
TabularMomdp read_tabular(std::istream& is);
void write_tabular(std::ostream& os, const TabularMomdp& m);
TabularMomdp load_tabular(const std::filesystem::path& path);
void save_tabular(const std::filesystem::path& path, const TabularMomdp& m);

/// Samples episodes of a TabularMomdp; terminal states end the episode.
class TabularEnv final : public DiscreteEnvironment {
public:
    TabularEnv(TabularMomdp m, std::size_t horizon);

    std::size_t num_states() const override { return m_.states; }
    std::size_t num_actions() const override { return m_.actions; }
    std::size_t objectives() const override { return m_.objectives; }
    std::size_t horizon() const override { return horizon_; }

    std::size_t reset(Rng& rng) override;
    DiscreteStep step(std::size_t action, Rng& rng) override;

    const TabularMomdp& model() const { return m_; }

private:
    TabularMomdp m_;
    std::size_t horizon_;
    std::size_t state_ = 0;
    std::size_t t_ = 0;
};

}  // namespace vmorl::envs
