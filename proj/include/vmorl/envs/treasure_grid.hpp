#pragma once

#include <cstddef>
#include <vector>

#include "vmorl/envs/environment.hpp"
#include "vmorl/envs/tabular.hpp"

namespace vmorl::envs {

struct Treasure {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;
};

struct TreasureGridConfig {
    std::size_t rows = 3;
    std::size_t cols = 3;
    std::vector<Treasure> treasures{{0, 2, 2.0}, {2, 2, 10.0}};
    double time_penalty = 1.0;
    std::size_t horizon = 20;
    std::size_t start_row = 0;
    std::size_t start_col = 0;

    void validate() const;
};

/// Deterministic grid with two objectives: (treasure value, -time). Moves are
/// up/down/left/right; walking into the border leaves the agent in place.
/// Stepping onto a treasure pays (value, -penalty) and ends the episode.
class TreasureGrid final : public DiscreteEnvironment {
public:
    enum Move : std::size_t { up = 0, down = 1, left = 2, right = 3 };

    explicit TreasureGrid(TreasureGridConfig config);

    std::size_t num_states() const override { return cfg_.rows * cfg_.cols; }
    std::size_t num_actions() const override { return 4; }
    std::size_t objectives() const override { return 2; }
    std::size_t horizon() const override { return cfg_.horizon; }
    std::vector<std::string> objective_names() const override { return {"treasure", "time"}; }

    std::size_t reset(Rng& rng) override;
    DiscreteStep step(std::size_t action, Rng& rng) override;

    const TreasureGridConfig& config() const { return cfg_; }
    std::size_t cell(std::size_t row, std::size_t col) const { return row * cfg_.cols + col; }
    /// Cell reached by `action` from `state` (pure transition function).
    std::size_t successor(std::size_t state, std::size_t action) const;
    /// Treasure on a cell, or nullptr.
    const Treasure* treasure_at(std::size_t state) const;
    std::size_t start_state() const { return cell(cfg_.start_row, cfg_.start_col); }

    /// Same dynamics as a TabularMomdp with treasure cells terminal.
    TabularMomdp to_tabular(double gamma) const;

private:
    TreasureGridConfig cfg_;
    std::size_t state_ = 0;
    std::size_t t_ = 0;
};

}  // namespace vmorl::envs
