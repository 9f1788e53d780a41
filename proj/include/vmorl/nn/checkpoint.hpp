#pragma once

#include <filesystem>
#include <iosfwd>

#include "vmorl/nn/gaussian_policy.hpp"
#include "vmorl/nn/mlp.hpp"

namespace vmorl::nn {

// Portable text format, version 1:
//
//   vmorl-checkpoint 1
//   kind mlp | gaussian_policy
//   sizes <n0> <n1> ... <nL>
//   activations <tanh|linear> x L
//   parameters <count>
//   <one value per line, row-major per layer: weights then bias>
//   log_std <count>            (gaussian_policy only)
//   <one value per line>
//
// Values use the shortest exact decimal form, so save/load round-trips bit for bit.

void write_checkpoint(std::ostream& os, const Mlp& net);
void write_checkpoint(std::ostream& os, const GaussianPolicy& policy);
Mlp read_mlp_checkpoint(std::istream& is);
GaussianPolicy read_policy_checkpoint(std::istream& is);

void save_checkpoint(const std::filesystem::path& path, const Mlp& net);
void save_checkpoint(const std::filesystem::path& path, const GaussianPolicy& policy);
Mlp load_mlp_checkpoint(const std::filesystem::path& path);
GaussianPolicy load_policy_checkpoint(const std::filesystem::path& path);

}  // namespace vmorl::nn
