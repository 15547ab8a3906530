#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vl {

// Caller broke a documented precondition (dimension mismatch, bad config).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Request exceeds what exhaustive computation supports (space too large).
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A symbol sequence: one symbol index in [0, k) per position.
using Assignment = std::vector<int>;

// Boolean rule check over assignments. Must be total and deterministic.
using VerifierFn = std::function<bool(const Assignment&)>;

// Floor applied to confidences before taking logs, so keys stay finite.
inline constexpr double kConfidenceFloor = 1e-12;

struct Alphabet {
    int size = 0;
    std::vector<std::string> names;

    static Alphabet numeric(int k);
    void validate() const;
};

struct SymbolPrior {
    std::vector<double> probs;

    static SymbolPrior uniform(int k);
    int size() const { return static_cast<int>(probs.size()); }
    void validate() const;
};

// Row-stochastic l x k matrix of per-position symbol probabilities.
class ConfidenceGrid {
  public:
    ConfidenceGrid() = default;
    ConfidenceGrid(int rows, int cols, double fill = 0.0);
    static ConfidenceGrid from_rows(const std::vector<std::vector<double>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double at(int i, int j) const { return values_[static_cast<size_t>(i) * cols_ + j]; }
    double& at(int i, int j) { return values_[static_cast<size_t>(i) * cols_ + j]; }
    bool is_row_stochastic(double tol = 1e-9) const;
    int argmax_row(int i) const;  // lowest index wins ties
    Assignment argmax() const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> values_;
};

enum class ScoreVariant {
    IndependentProduct,
    ConsistencyCount,
    LexConsistencyThenProduct,
};

std::string to_string(ScoreVariant v);

// Ordering rule over assignments. The consistency variants compare against
// a reference prediction (normally the argmax of the grid being scored).
struct ScoreModel {
    ScoreVariant variant = ScoreVariant::IndependentProduct;
    std::optional<Assignment> reference_prediction;

    static ScoreModel independent_product();
    static ScoreModel consistency_count(Assignment prediction);
    static ScoreModel lex_consistency_then_product(Assignment prediction);

    bool uses_consistency() const;
    void validate_against(const ConfidenceGrid& grid) const;
};

// Total-order key: consistency count first, confidence product second.
// The product is kept in log space; exponentiate only for display.
struct ScoreKey {
    int consistency = 0;
    double log_product = 0.0;

    double product() const { return std::exp(log_product); }
    friend bool operator==(const ScoreKey&, const ScoreKey&) = default;
};

// true when a ranks strictly below b
bool key_less(const ScoreKey& a, const ScoreKey& b);

// Shared rank order for the enumerator and the brute-force oracle: higher
// key first, exact key ties broken by ascending symbol indices.
bool ranks_before(const ScoreKey& ka, const Assignment& a,
                  const ScoreKey& kb, const Assignment& b);

double log_product_score(const ConfidenceGrid& grid, const Assignment& a);
double product_score(const ConfidenceGrid& grid, const Assignment& a);
int consistency_score(const Assignment& a, const Assignment& prediction);
ScoreKey score_key(const ScoreModel& model, const ConfidenceGrid& grid, const Assignment& a);

// Runtime knobs shared by the trainer and the CLI.
int thread_count();         // VL_THREADS; default: hardware, capped at 8
bool deterministic_time();  // VL_DETERMINISTIC=1 zeroes reported wall times

// Runs body(0..n-1), split across thread_count() workers. Each index writes
// only its own output slot, so results are schedule-independent.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace vl
