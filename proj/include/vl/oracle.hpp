#pragma once

#include <optional>
#include <vector>

#include "vl/core.hpp"

namespace vl {

struct RankedAssignment {
    Assignment assignment;
    ScoreKey key;
};

// All k^l assignments sorted best-first under ranks_before (the same
// tie-break the enumerator uses). Guarded at k^l <= 10^6; slow on purpose.
std::vector<RankedAssignment> brute_force_ranking(const ConfidenceGrid& grid,
                                                  const ScoreModel& model);

// Best feasible assignment under the same order, or nullopt when the
// verifier rejects everything.
std::optional<Assignment> brute_force_cop(const ConfidenceGrid& grid, const ScoreModel& model,
                                          const VerifierFn& verifier);

// Visits every assignment of the given shape in ascending index order.
void for_each_assignment(int length, int alphabet,
                         const std::function<void(const Assignment&)>& visit);

}  // namespace vl
