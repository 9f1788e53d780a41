#pragma once

#include <cstddef>

#include "vmorl/ccs/aols.hpp"
#include "vmorl/core/types.hpp"

namespace vmorl::rl {

/// Picks row i of the IORM from the weights AOLS explored. Candidates are the
/// explored weights whose i-th entry is (weakly) their largest; among them the
/// one maximizing w . values wins, near-ties (1e-9) going to the higher-entropy
/// weight and then the earlier one. Falls back to e_i when nothing qualifies.
WeightVector iorm_row_select(const ccs::AolsResult& result, std::size_t i, const ValueVector& values);

}  // namespace vmorl::rl
