#include "vl/alignment.hpp"

#include <algorithm>

namespace vl {

ConfidenceGrid align(const ConfidenceGrid& grid, const AlignmentConfig& cfg) {
    const int l = grid.rows();
    const int k = grid.cols();
    if (cfg.prior.size() != k)
        throw ContractViolation("alignment prior size must match grid columns");
    if (cfg.anneal < 0.0 || cfg.anneal > 1.0)
        throw ContractViolation("anneal factor must lie in [0, 1]");
    if (cfg.anneal == 0.0) return grid;

    std::vector<double> col_sum(k, 0.0);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < k; ++j) col_sum[j] += grid.at(i, j);

    ConfidenceGrid aligned(l, k);
    for (int j = 0; j < k; ++j) {
        // a zero column stays zero: the clamp only guards the division
        const double scale = l * cfg.prior.probs[j] / std::max(col_sum[j], kConfidenceFloor);
        for (int i = 0; i < l; ++i) aligned.at(i, j) = scale * grid.at(i, j);
    }

    if (cfg.row_renormalize) {
        for (int i = 0; i < l; ++i) {
            double row_sum = 0.0;
            for (int j = 0; j < k; ++j) row_sum += aligned.at(i, j);
            if (row_sum <= kConfidenceFloor) continue;
            for (int j = 0; j < k; ++j) aligned.at(i, j) /= row_sum;
        }
    }

    if (cfg.anneal == 1.0) return aligned;
    ConfidenceGrid blended(l, k);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < k; ++j)
            blended.at(i, j) = cfg.anneal * aligned.at(i, j) + (1.0 - cfg.anneal) * grid.at(i, j);
    return blended;
}

double anneal_over(int epoch, int decay_epochs) {
    if (epoch < 0) throw ContractViolation("epoch must be non-negative");
    if (decay_epochs < 1 || epoch >= decay_epochs) return 0.0;
    return 1.0 - static_cast<double>(epoch) / decay_epochs;
}

double anneal_schedule(int epoch, int total_epochs) {
    if (total_epochs < 1 || epoch < 0 || epoch >= total_epochs)
        throw ContractViolation("epoch must lie in [0, total_epochs)");
    return anneal_over(epoch, (total_epochs + 1) / 2);
}

}  // namespace vl
