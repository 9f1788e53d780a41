#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "vmorl/envs/environment.hpp"
#include "vmorl/envs/toy_locomotion.hpp"
#include "vmorl/envs/treasure_grid.hpp"
#include "vmorl/explain/alternatives.hpp"
#include "vmorl/explain/qa.hpp"
#include "vmorl/rl/trainer.hpp"

namespace vmorl::cli {

struct EnvSelection {
    std::string name = "treasure_grid";  // treasure_grid | toy_locomotion | tabular
    std::vector<std::size_t> channels;   // reward channels to expose; empty keeps all
    envs::TreasureGridConfig grid;
    envs::ToyLocomotionConfig loco;
    std::string tabular_path;
    std::size_t tabular_horizon = 100;
};

struct RunConfig {
    rl::TrainerConfig trainer;
    EnvSelection env;
    std::size_t eval_episodes = 20;
    std::size_t bench_seeds = 5;
    std::size_t bench_baseline_channel = 3;  // Rfor on the locomotion task
    std::vector<double> explain_increment;  // per objective, or one value for all; empty derives from data
    std::vector<double> explain_max_value;
    std::vector<std::size_t> explain_max_count{2};
    explain::QaSpec qa;                     // empty entries: derived from the environment
    std::string out = "run";

    /// Throws std::invalid_argument on any violated component invariant.
    void validate() const;
};

/// Parses `key=value` lines; '#' starts a comment line. Errors name the
/// source and line, e.g. "cfg.txt:3: unknown key 'trainer.gama'".
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Every key in a fixed order; parse_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const RunConfig& cfg);

/// Builds the environment described by `sel`, wrapped for the continuous
/// trainer and restricted to the selected channels.
envs::EnvFactory make_env_factory(const EnvSelection& sel);

/// QA vocabulary for the configured environment: the explicit one when set,
/// the locomotion vocabulary for all four locomotion channels, otherwise
/// generic maximize entries named after the channels.
explain::QaSpec resolve_qa(const RunConfig& cfg);

}  // namespace vmorl::cli
