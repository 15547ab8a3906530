#pragma once

#include "vl/core.hpp"

namespace vl {

struct AlignmentConfig {
    SymbolPrior prior;
    double anneal = 1.0;          // 1 = full alignment, 0 = off
    bool row_renormalize = true;  // restore row-stochastic rows afterwards
};

// Rescales each symbol's column so its total mass over the sequence equals
// l * prior[j], then optionally renormalizes rows and blends with the
// input by the anneal factor. With anneal == 0 the input passes through
// unchanged. Raw (non-renormalized) output keeps the exact column-sum law.
ConfidenceGrid align(const ConfidenceGrid& grid, const AlignmentConfig& cfg);

// Linear decay from 1 to 0 over the first decay_epochs epochs, then 0.
double anneal_over(int epoch, int decay_epochs);

// Default schedule: decay over the first half of the run.
double anneal_schedule(int epoch, int total_epochs);

}  // namespace vl
