#include "vl/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <thread>

namespace vl {

Alphabet Alphabet::numeric(int k) {
    Alphabet a;
    a.size = k;
    for (int i = 0; i < k; ++i) a.names.push_back(std::to_string(i));
    a.validate();
    return a;
}

void Alphabet::validate() const {
    if (size < 2) throw ContractViolation("alphabet size must be >= 2");
    if (static_cast<int>(names.size()) != size)
        throw ContractViolation("alphabet needs one name per symbol");
    std::set<std::string> distinct(names.begin(), names.end());
    if (static_cast<int>(distinct.size()) != size)
        throw ContractViolation("alphabet names must be distinct");
}

SymbolPrior SymbolPrior::uniform(int k) {
    if (k < 1) throw ContractViolation("prior needs at least one symbol");
    SymbolPrior p;
    p.probs.assign(k, 1.0 / k);
    return p;
}

void SymbolPrior::validate() const {
    double sum = 0.0;
    for (double v : probs) {
        if (v < 0.0) throw ContractViolation("prior probabilities must be non-negative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw ContractViolation("prior must sum to 1");
}

ConfidenceGrid::ConfidenceGrid(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), values_(static_cast<size_t>(rows) * cols, fill) {
    if (rows < 1 || cols < 1) throw ContractViolation("grid dimensions must be positive");
}

ConfidenceGrid ConfidenceGrid::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw ContractViolation("grid needs at least one row");
    ConfidenceGrid g(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < g.rows_; ++i) {
        if (static_cast<int>(rows[i].size()) != g.cols_)
            throw ContractViolation("grid rows must have equal length");
        for (int j = 0; j < g.cols_; ++j) g.at(i, j) = rows[i][j];
    }
    return g;
}

bool ConfidenceGrid::is_row_stochastic(double tol) const {
    for (int i = 0; i < rows_; ++i) {
        double sum = 0.0;
        for (int j = 0; j < cols_; ++j) {
            if (at(i, j) < 0.0) return false;
            sum += at(i, j);
        }
        if (std::abs(sum - 1.0) > tol) return false;
    }
    return true;
}

int ConfidenceGrid::argmax_row(int i) const {
    int best = 0;
    for (int j = 1; j < cols_; ++j)
        if (at(i, j) > at(i, best)) best = j;
    return best;
}

Assignment ConfidenceGrid::argmax() const {
    Assignment a(rows_);
    for (int i = 0; i < rows_; ++i) a[i] = argmax_row(i);
    return a;
}

std::string to_string(ScoreVariant v) {
    switch (v) {
        case ScoreVariant::IndependentProduct: return "independent";
        case ScoreVariant::ConsistencyCount: return "consistency";
        case ScoreVariant::LexConsistencyThenProduct: return "lex";
    }
    return "?";
}

ScoreModel ScoreModel::independent_product() {
    return ScoreModel{ScoreVariant::IndependentProduct, std::nullopt};
}

ScoreModel ScoreModel::consistency_count(Assignment prediction) {
    return ScoreModel{ScoreVariant::ConsistencyCount, std::move(prediction)};
}

ScoreModel ScoreModel::lex_consistency_then_product(Assignment prediction) {
    return ScoreModel{ScoreVariant::LexConsistencyThenProduct, std::move(prediction)};
}

bool ScoreModel::uses_consistency() const {
    return variant != ScoreVariant::IndependentProduct;
}

void ScoreModel::validate_against(const ConfidenceGrid& grid) const {
    if (!uses_consistency()) return;
    if (!reference_prediction)
        throw ContractViolation("consistency score needs a reference prediction");
    if (static_cast<int>(reference_prediction->size()) != grid.rows())
        throw ContractViolation("reference prediction length must match grid rows");
    for (int s : *reference_prediction)
        if (s < 0 || s >= grid.cols())
            throw ContractViolation("reference prediction symbol out of range");
}

bool key_less(const ScoreKey& a, const ScoreKey& b) {
    if (a.consistency != b.consistency) return a.consistency < b.consistency;
    return a.log_product < b.log_product;
}

bool ranks_before(const ScoreKey& ka, const Assignment& a,
                  const ScoreKey& kb, const Assignment& b) {
    if (key_less(kb, ka)) return true;
    if (key_less(ka, kb)) return false;
    return a < b;
}

double log_product_score(const ConfidenceGrid& grid, const Assignment& a) {
    if (static_cast<int>(a.size()) != grid.rows())
        throw ContractViolation("assignment length must match grid rows");
    double sum = 0.0;
    for (int i = 0; i < grid.rows(); ++i) {
        int s = a[i];
        if (s < 0 || s >= grid.cols())
            throw ContractViolation("assignment symbol out of range");
        sum += std::log(std::max(grid.at(i, s), kConfidenceFloor));
    }
    return sum;
}

double product_score(const ConfidenceGrid& grid, const Assignment& a) {
    return std::exp(log_product_score(grid, a));
}

int consistency_score(const Assignment& a, const Assignment& prediction) {
    if (a.size() != prediction.size())
        throw ContractViolation("consistency operands must have equal length");
    int count = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] == prediction[i]) ++count;
    return count;
}

ScoreKey score_key(const ScoreModel& model, const ConfidenceGrid& grid, const Assignment& a) {
    model.validate_against(grid);
    switch (model.variant) {
        case ScoreVariant::IndependentProduct:
            return ScoreKey{0, log_product_score(grid, a)};
        case ScoreVariant::ConsistencyCount:
            return ScoreKey{consistency_score(a, *model.reference_prediction), 0.0};
        case ScoreVariant::LexConsistencyThenProduct:
            return ScoreKey{consistency_score(a, *model.reference_prediction),
                            log_product_score(grid, a)};
    }
    throw ContractViolation("unknown score variant");
}

int thread_count() {
    if (const char* env = std::getenv("VL_THREADS")) {
        int n = std::atoi(env);
        return n > 0 ? n : 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) return 1;
    return static_cast<int>(std::min(hw, 8u));
}

bool deterministic_time() {
    const char* env = std::getenv("VL_DETERMINISTIC");
    return env && env[0] == '1';
}

void parallel_for(int n, const std::function<void(int)>& body) {
    int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace vl
