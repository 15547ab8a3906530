#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vl/alignment.hpp"
#include "vl/dcs.hpp"
#include "vl/perception.hpp"
#include "vl/symmetry.hpp"

namespace vl {

struct TrainConfig {
    int epochs = 10;
    int batch_size = 32;
    double lr = 0.001;
    bool align_enabled = true;
    bool row_renormalize = true;
    int anneal_epochs = -1;  // <0: decay over the first half of the run
    SymbolPrior prior;       // empty: uniform over the task alphabet
    ScoreVariant score_variant = ScoreVariant::IndependentProduct;
    long dcs_budget = 0;     // <=0: full space, capped at kDefaultBudgetCap
    std::uint64_t seed = 0;
};

inline constexpr long kDefaultBudgetCap = 10000;

struct EpochStats {
    int epoch = 0;
    double mean_rank_K = 0.0;        // emissions per item until accept (budget-capped)
    double mean_verifications = 0.0;
    double fraction_exhausted = 0.0;
    double pseudo_label_accuracy = 0.0;
    double symbol_accuracy = 0.0;
    double adjusted_accuracy = 0.0;  // 1 - min-permutation mismatch rate
    double wall_time_s = 0.0;
};

// Header + rows in the stats.csv layout.
std::string epoch_stats_csv(const std::vector<EpochStats>& stats);

// Per-item outcome of the predict -> align -> solve pipeline.
struct SolveOutcome {
    Assignment pseudo_label;
    long rank = 0;
    long verifications = 0;
    bool exhausted = false;
};

// One training item: forward, align by the given anneal factor, build the
// score model (consistency reference = aligned argmax) and solve the COP.
SolveOutcome pseudo_label(const SoftmaxModel& model, const Sample& sample,
                          const VerifierFn& verifier, const TrainConfig& cfg, double anneal);

// The verification-learning loop: per batch item predict, align, solve the
// COP and train on the returned assignment (exhausted items fall back to
// the rank-1 assignment). Updates the model in place; per-epoch stats out.
std::vector<EpochStats> train(SoftmaxModel& model, const Dataset& data, const TrainConfig& cfg);

struct TtcResult {
    Assignment assignment;
    bool corrected = false;  // false: budget ran out, raw argmax returned
    long rank = 0;
};

// Test-time correction: solve the COP on the raw forward pass (alignment
// is a training-phase corrective and stays off here).
TtcResult predict_ttc(const SoftmaxModel& model, const Sample& sample, const VerifierFn& verifier,
                      ScoreVariant variant, long budget);

struct EvalMetrics {
    double raw_accuracy = 0.0;
    double ttc_accuracy = 0.0;
    double adjusted_accuracy = 0.0;
    double ttc_verified_fraction = 0.0;
    double mean_ttc_rank = 0.0;
};

EvalMetrics evaluate(const SoftmaxModel& model, const Dataset& data, ScoreVariant variant,
                     long budget, const std::vector<Permutation>& group);

// Invariance group used for the symmetry-adjusted metric. Exact for
// alphabets the exhaustive analyzer handles; identity-only beyond that
// (every sequence length the trainer meets there has a trivial group).
std::vector<Permutation> task_group(const Dataset& data);

// Budget actually used: explicit value, else min(k^l, kDefaultBudgetCap).
long effective_budget(const TaskSpec& task, long requested);

VerifierFn sample_verifier(const TaskSpec& task, const Sample& sample);

}  // namespace vl
