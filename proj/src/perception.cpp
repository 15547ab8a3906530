#include "vl/perception.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "vl/rng.hpp"
#include "json.hpp"

namespace vl {

void GlyphConfig::validate(int alphabet) const {
    if (feature_dim < alphabet)
        throw ContractViolation("glyph feature_dim must be >= alphabet size");
    if (noise_sigma < 0.0) throw ContractViolation("noise_sigma must be non-negative");
    if (shift_range < 0) throw ContractViolation("shift_range must be non-negative");
}

namespace {

std::vector<double> render_glyph(int symbol, const GlyphConfig& glyph, Rng& rng) {
    std::vector<double> x(glyph.feature_dim, 0.0);
    int hot = symbol;
    if (glyph.shift_range > 0) {
        int shift = rng.uniform_int(2 * glyph.shift_range + 1) - glyph.shift_range;
        hot = ((symbol + shift) % glyph.feature_dim + glyph.feature_dim) % glyph.feature_dim;
    }
    x[hot] += 1.0;
    if (glyph.noise_sigma > 0.0)
        for (double& v : x) v += rng.normal(0.0, glyph.noise_sigma);
    return x;
}

Assignment addition_truth(const TaskSpec& task, Rng& rng) {
    const int d = task.num_digits;
    long limit = 1;
    for (int i = 0; i < d; ++i) limit *= task.base;
    long x = rng.uniform_int(static_cast<int>(limit));
    long y = rng.uniform_int(static_cast<int>(limit));
    auto digits_of = [&](long v, int width) {
        std::vector<int> out(width);
        for (int i = width - 1; i >= 0; --i) {
            out[i] = static_cast<int>(v % task.base);
            v /= task.base;
        }
        return out;
    };
    Assignment truth = digits_of(x, d);
    Assignment op2 = digits_of(y, d);
    Assignment sum = digits_of(x + y, 2 * d);
    truth.insert(truth.end(), op2.begin(), op2.end());
    truth.insert(truth.end(), sum.begin(), sum.end());
    return truth;
}

Assignment subset_truth(int k, int l, Rng& rng, bool sorted) {
    Assignment pool(k);
    std::iota(pool.begin(), pool.end(), 0);
    rng.shuffle(pool);
    Assignment truth(pool.begin(), pool.begin() + l);
    if (sorted) std::sort(truth.begin(), truth.end());
    return truth;
}

Assignment match_truth(int k, int l, Rng& rng) {
    // valid strings are r strictly increasing symbols, each repeated l/r
    // times, for any divisor r of l with r <= k; draw r weighted by the
    // number of strings it contributes, so strings come out uniform
    std::vector<int> divisors;
    std::vector<double> weight;
    double total = 0.0;
    for (int r = 1; r <= std::min(l, k); ++r) {
        if (l % r != 0) continue;
        double combos = 1.0;
        for (int i = 0; i < r; ++i) combos = combos * (k - i) / (i + 1);
        divisors.push_back(r);
        weight.push_back(combos);
        total += combos;
    }
    double pick = rng.uniform() * total;
    int runs = divisors.back();
    for (size_t i = 0; i < divisors.size(); ++i) {
        if (pick < weight[i]) {
            runs = divisors[i];
            break;
        }
        pick -= weight[i];
    }
    Assignment symbols = subset_truth(k, runs, rng, true);
    Assignment truth;
    for (int s : symbols)
        for (int rep = 0; rep < l / runs; ++rep) truth.push_back(s);
    return truth;
}

std::pair<Assignment, ChessPositions> chess_truth(const TaskSpec& task, Rng& rng) {
    // uniform collision-free board + uniform types, resampled until the
    // configuration contains an attack (the rule the verifier checks)
    for (int attempt = 0; attempt < 100000; ++attempt) {
        ChessPositions pos;
        std::set<std::pair<int, int>> used;
        while (static_cast<int>(pos.coords.size()) < task.pieces) {
            std::pair<int, int> square{rng.uniform_int(8), rng.uniform_int(8)};
            if (used.insert(square).second) pos.coords.push_back(square);
        }
        Assignment types(task.pieces);
        for (int& t : types) t = rng.uniform_int(kChessTypes);
        if (verify_chess(types, pos)) return {types, pos};
    }
    throw ContractViolation("could not sample a verifying chess configuration");
}

}  // namespace

Dataset gen_dataset(const TaskSpec& task, int n, const GlyphConfig& glyph, std::uint64_t seed) {
    task.validate();
    glyph.validate(task.k());
    if (n < 1) throw ContractViolation("dataset size must be positive");

    Dataset data;
    data.task = task;
    data.samples.resize(n);
    for (int i = 0; i < n; ++i) {
        // per-sample stream: reproducible independent of generation order
        Rng rng(mix64(seed ^ mix64(glyph.seed)) + mix64(static_cast<std::uint64_t>(i) + 1));
        Sample& sample = data.samples[i];
        switch (task.kind) {
            case TaskKind::Addition:
                sample.truth = addition_truth(task, rng);
                break;
            case TaskKind::Sort:
                sample.truth = subset_truth(task.k(), task.l(), rng, true);
                break;
            case TaskKind::Match:
                sample.truth = match_truth(task.k(), task.l(), rng);
                break;
            case TaskKind::AllDifferent:
                sample.truth = subset_truth(task.k(), task.l(), rng, false);
                break;
            case TaskKind::Chess: {
                auto [types, pos] = chess_truth(task, rng);
                sample.truth = std::move(types);
                sample.positions = std::move(pos);
                break;
            }
        }
        sample.features.reserve(sample.truth.size());
        for (int symbol : sample.truth) sample.features.push_back(render_glyph(symbol, glyph, rng));
    }

    std::vector<double> counts(task.k(), 0.0);
    double total = 0.0;
    for (const Sample& s : data.samples)
        for (int symbol : s.truth) {
            counts[symbol] += 1.0;
            total += 1.0;
        }
    data.empirical_prior.probs.resize(task.k());
    for (int j = 0; j < task.k(); ++j) data.empirical_prior.probs[j] = counts[j] / total;
    return data;
}

std::string dataset_to_jsonl(const Dataset& data) {
    std::string out;
    for (const Sample& s : data.samples) {
        nlohmann::json j;
        j["features"] = s.features;
        j["truth"] = s.truth;
        if (data.task.kind == TaskKind::Chess) {
            nlohmann::json coords = nlohmann::json::array();
            for (const auto& [x, y] : s.positions.coords) coords.push_back({x, y});
            j["positions"] = coords;
        }
        out += j.dump();
        out += "\n";
    }
    return out;
}

void write_dataset_jsonl(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << dataset_to_jsonl(data);
}

Dataset read_dataset_jsonl(const std::string& path, const TaskSpec& task) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Dataset data;
    data.task = task;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        Sample s;
        s.features = j.at("features").get<std::vector<std::vector<double>>>();
        s.truth = j.at("truth").get<Assignment>();
        if (j.contains("positions"))
            for (const auto& c : j.at("positions"))
                s.positions.coords.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
        data.samples.push_back(std::move(s));
    }
    std::vector<double> counts(task.k(), 0.0);
    double total = 0.0;
    for (const Sample& s : data.samples)
        for (int symbol : s.truth) {
            counts[symbol] += 1.0;
            total += 1.0;
        }
    data.empirical_prior.probs.resize(task.k());
    if (total > 0)
        for (int j = 0; j < task.k(); ++j) data.empirical_prior.probs[j] = counts[j] / total;
    return data;
}

SoftmaxModel SoftmaxModel::seeded(int classes, int feature_dim, std::uint64_t seed) {
    if (classes < 2 || feature_dim < 1)
        throw ContractViolation("model needs >= 2 classes and a positive feature dim");
    SoftmaxModel m;
    m.classes = classes;
    m.feature_dim = feature_dim;
    m.weights.resize(static_cast<size_t>(classes) * feature_dim);
    m.bias.assign(classes, 0.0);
    Rng rng(mix64(seed ^ 0x6d6f64656cULL));
    for (double& w : m.weights) w = rng.normal(0.0, 0.01);
    return m;
}

std::vector<double> SoftmaxModel::forward_one(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != feature_dim)
        throw ContractViolation("feature vector dimension mismatch");
    std::vector<double> logits(classes);
    for (int c = 0; c < classes; ++c) {
        double z = bias[c];
        const double* w = weights.data() + static_cast<size_t>(c) * feature_dim;
        for (int d = 0; d < feature_dim; ++d) z += w[d] * x[d];
        logits[c] = z;
    }
    double zmax = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (double& z : logits) {
        z = std::exp(z - zmax);
        sum += z;
    }
    for (double& z : logits) z = std::max(z / sum, kConfidenceFloor);
    return logits;
}

ConfidenceGrid SoftmaxModel::forward(const Sample& sample) const {
    ConfidenceGrid grid(static_cast<int>(sample.features.size()), classes);
    for (size_t i = 0; i < sample.features.size(); ++i) {
        std::vector<double> probs = forward_one(sample.features[i]);
        for (int c = 0; c < classes; ++c) grid.at(static_cast<int>(i), c) = probs[c];
    }
    return grid;
}

std::string SoftmaxModel::to_json() const {
    nlohmann::json j;
    j["classes"] = classes;
    j["feature_dim"] = feature_dim;
    j["weights"] = weights;
    j["bias"] = bias;
    return j.dump();
}

SoftmaxModel SoftmaxModel::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SoftmaxModel m;
    m.classes = j.at("classes").get<int>();
    m.feature_dim = j.at("feature_dim").get<int>();
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<std::vector<double>>();
    if (static_cast<int>(m.weights.size()) != m.classes * m.feature_dim ||
        static_cast<int>(m.bias.size()) != m.classes)
        throw std::runtime_error("model file has inconsistent shapes");
    return m;
}

void grad_step(SoftmaxModel& model, const std::vector<const Sample*>& batch,
               const std::vector<Assignment>& labels, double lr) {
    if (lr <= 0.0) throw ContractViolation("learning rate must be positive");
    if (batch.size() != labels.size())
        throw ContractViolation("batch and label counts must match");
    const int k = model.classes;
    const int d = model.feature_dim;
    std::vector<double> gw(static_cast<size_t>(k) * d, 0.0);
    std::vector<double> gb(k, 0.0);
    long positions = 0;
    for (size_t b = 0; b < batch.size(); ++b) {
        const Sample& s = *batch[b];
        if (s.features.size() != labels[b].size())
            throw ContractViolation("label length must match sample length");
        for (size_t i = 0; i < s.features.size(); ++i) {
            std::vector<double> p = model.forward_one(s.features[i]);
            const int y = labels[b][i];
            if (y < 0 || y >= k) throw ContractViolation("label symbol out of range");
            for (int c = 0; c < k; ++c) {
                double g = p[c] - (c == y ? 1.0 : 0.0);
                gb[c] += g;
                double* row = gw.data() + static_cast<size_t>(c) * d;
                const std::vector<double>& x = s.features[i];
                for (int f = 0; f < d; ++f) row[f] += g * x[f];
            }
            ++positions;
        }
    }
    if (positions == 0) return;
    const double scale = lr / static_cast<double>(positions);
    for (size_t i = 0; i < gw.size(); ++i) model.weights[i] -= scale * gw[i];
    for (int c = 0; c < k; ++c) model.bias[c] -= scale * gb[c];
}

double mean_cross_entropy(const SoftmaxModel& model, const std::vector<const Sample*>& batch,
                          const std::vector<Assignment>& labels) {
    if (batch.size() != labels.size())
        throw ContractViolation("batch and label counts must match");
    double loss = 0.0;
    long positions = 0;
    for (size_t b = 0; b < batch.size(); ++b) {
        const Sample& s = *batch[b];
        for (size_t i = 0; i < s.features.size(); ++i) {
            std::vector<double> p = model.forward_one(s.features[i]);
            loss -= std::log(std::max(p[labels[b][i]], kConfidenceFloor));
            ++positions;
        }
    }
    return positions == 0 ? 0.0 : loss / static_cast<double>(positions);
}

}  // namespace vl
