#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vl/core.hpp"
#include "vl/verifiers.hpp"

namespace vl {

// Synthetic glyph generator settings. Each symbol class c renders as a
// one-hot bump at feature index c (optionally shifted) plus Gaussian
// noise; noise_sigma is the difficulty knob.
struct GlyphConfig {
    int feature_dim = 16;
    double noise_sigma = 0.3;
    int shift_range = 0;  // cyclic shift of the hot index, +-shift_range
    std::uint64_t seed = 0;

    void validate(int alphabet) const;
};

struct Sample {
    std::vector<std::vector<double>> features;  // l vectors of dimension d
    Assignment truth;                           // held out; evaluation only
    ChessPositions positions;                   // chess only: known board input
};

struct Dataset {
    TaskSpec task;
    std::vector<Sample> samples;
    SymbolPrior empirical_prior;  // symbol marginals of the truths

    int size() const { return static_cast<int>(samples.size()); }
};

// n samples whose truths satisfy the task verifier, rendered as glyphs.
// Fully determined by (task, n, glyph, seed).
Dataset gen_dataset(const TaskSpec& task, int n, const GlyphConfig& glyph, std::uint64_t seed);

// JSON-lines dataset serialization: {"features": [[...]], "truth": [...]}
// per record (chess records also carry "positions": [[x, y], ...]).
std::string dataset_to_jsonl(const Dataset& data);
void write_dataset_jsonl(const Dataset& data, const std::string& path);
Dataset read_dataset_jsonl(const std::string& path, const TaskSpec& task);

// Multinomial logistic model over glyph features, one shared classifier
// applied per position.
struct SoftmaxModel {
    int classes = 0;
    int feature_dim = 0;
    std::vector<double> weights;  // classes x feature_dim, row-major
    std::vector<double> bias;     // classes

    static SoftmaxModel seeded(int classes, int feature_dim, std::uint64_t seed);

    std::vector<double> forward_one(const std::vector<double>& x) const;
    ConfidenceGrid forward(const Sample& sample) const;

    std::string to_json() const;
    static SoftmaxModel from_json(const std::string& text);
};

// One SGD step on the mean cross-entropy of the batch against the given
// per-position labels; gradient is the analytic (softmax - onehot) x x.
void grad_step(SoftmaxModel& model, const std::vector<const Sample*>& batch,
               const std::vector<Assignment>& labels, double lr);

double mean_cross_entropy(const SoftmaxModel& model, const std::vector<const Sample*>& batch,
                          const std::vector<Assignment>& labels);

}  // namespace vl
