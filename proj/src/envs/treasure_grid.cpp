#include "vmorl/envs/treasure_grid.hpp"

#include <stdexcept>
#include <string>

namespace vmorl::envs {

void TreasureGridConfig::validate() const {
    if (rows == 0 || cols == 0) throw std::invalid_argument("TreasureGrid: empty grid");
    if (horizon == 0) throw std::invalid_argument("TreasureGrid: horizon must be >= 1");
    if (start_row >= rows || start_col >= cols) throw std::invalid_argument("TreasureGrid: start outside grid");
    for (const auto& t : treasures) {
        if (t.row >= rows || t.col >= cols) throw std::invalid_argument("TreasureGrid: treasure outside grid");
        if (t.row == start_row && t.col == start_col) throw std::invalid_argument("TreasureGrid: treasure on start cell");
    }
}

TreasureGrid::TreasureGrid(TreasureGridConfig config) : cfg_(std::move(config)) { cfg_.validate(); }

std::size_t TreasureGrid::successor(std::size_t state, std::size_t action) const {
    std::size_t r = state / cfg_.cols, c = state % cfg_.cols;
    switch (action) {
        case up: if (r > 0) --r; break;
        case down: if (r + 1 < cfg_.rows) ++r; break;
        case left: if (c > 0) --c; break;
        case right: if (c + 1 < cfg_.cols) ++c; break;
        default: throw std::out_of_range("TreasureGrid: action " + std::to_string(action) + " out of range");
    }
    return cell(r, c);
}

const Treasure* TreasureGrid::treasure_at(std::size_t state) const {
    for (const auto& t : cfg_.treasures)
        if (cell(t.row, t.col) == state) return &t;
    return nullptr;
}

std::size_t TreasureGrid::reset(Rng&) {
    state_ = start_state();
    t_ = 0;
    return state_;
}

DiscreteStep TreasureGrid::step(std::size_t action, Rng&) {
    state_ = successor(state_, action);
    ++t_;
    const Treasure* t = treasure_at(state_);
    DiscreteStep out;
    out.state = state_;
    out.reward = {t ? t->value : 0.0, -cfg_.time_penalty};
    out.done = t != nullptr || t_ >= cfg_.horizon;
    return out;
}

TabularMomdp TreasureGrid::to_tabular(double gamma) const {
    TabularMomdp m;
    m.states = num_states();
    m.actions = num_actions();
    m.objectives = 2;
    m.gamma = gamma;
    m.transitions.assign(m.states * m.actions * m.states, 0.0);
    m.rewards.assign(m.states * m.actions * 2, 0.0);
    m.initial.assign(m.states, 0.0);
    m.initial[start_state()] = 1.0;
    m.terminal.assign(m.states, false);
    for (std::size_t s = 0; s < m.states; ++s) {
        m.terminal[s] = treasure_at(s) != nullptr;
        for (std::size_t a = 0; a < m.actions; ++a) {
            const std::size_t next = successor(s, a);
            m.transitions[(s * m.actions + a) * m.states + next] = 1.0;
            const Treasure* t = treasure_at(next);
            m.rewards[(s * m.actions + a) * 2] = t ? t->value : 0.0;
            m.rewards[(s * m.actions + a) * 2 + 1] = -cfg_.time_penalty;
        }
    }
    return m;
}

}  // namespace vmorl::envs
