#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vmorl/ccs/aols.hpp"
#include "vmorl/cli/run_config.hpp"
#include "vmorl/core/trajectory.hpp"
#include "vmorl/envs/tabular.hpp"
#include "vmorl/rl/rollout.hpp"
#include "vmorl/rl/trainer.hpp"

namespace vmorl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// One named value vector of a policy library.
struct LibraryEntry {
    std::string label;
    ValueVector value;
};

void write_library(const std::filesystem::path& path, const std::vector<LibraryEntry>& entries);
std::vector<LibraryEntry> read_library(const std::filesystem::path& path);

/// Objectives as rows, one "mu ± sigma" column per method.
std::string format_value_table(const std::vector<std::string>& objectives, const std::vector<std::string>& columns,
                               const std::vector<ValueEstimate>& estimates, int precision = 3);

/// Undiscounted per-episode returns of mean-action rollouts, summarized.
ValueEstimate evaluate_returns(const envs::EnvFactory& factory, const nn::GaussianPolicy& policy,
                               std::size_t episodes, std::uint64_t seed, double gamma);

/// Trains per `cfg` and writes the run directory. Returns the trainer output.
rl::TrainResult run_training(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& progress);

struct CcsReport {
    ccs::AolsResult aols;
    std::optional<std::vector<ValueVector>> reference;  // set when verified
    bool verified = false;
};

/// AOLS with the exact value-iteration oracle; `verify` compares against
/// brute-force enumeration (max-norm tolerance max(epsilon, 1e-6)).
CcsReport run_ccs(const envs::TabularMomdp& m, double epsilon, bool verify, std::size_t max_iterations = 10000);

/// Set equality under a max-norm tolerance.
bool same_vector_set(const std::vector<ValueVector>& a, const std::vector<ValueVector>& b, double tol);

struct BenchSeed {
    std::uint64_t seed = 0;
    ValueEstimate morl;
    ValueEstimate baseline;
    double morl_score = 0.0;      // mean min-max normalized return
    double baseline_score = 0.0;
    std::size_t updates = 0;      // training updates given to each method
};

struct BenchReport {
    std::vector<std::string> objectives;
    std::vector<BenchSeed> seeds;
    std::size_t wins() const;
    std::string table() const;
};

/// Multi-objective training against a single-channel baseline on the same
/// update budget, seeds base_seed .. base_seed + bench_seeds - 1.
BenchReport run_bench(const RunConfig& cfg, std::ostream& progress);

/// Normalizes each objective to [0, 1] using the min and max over both
/// episode sets, then averages over objectives and episodes. Returns the
/// pair (score of a, score of b).
std::pair<double, double> normalized_scores(const std::vector<ValueVector>& a, const std::vector<ValueVector>& b);

}  // namespace vmorl::cli
