#include "vl/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace vl {

namespace {

void check_space(int length, int alphabet) {
    if (length < 1 || alphabet < 1) throw ContractViolation("empty assignment space");
    double size = std::pow(static_cast<double>(alphabet), length);
    if (size > 1e6) throw CapabilityError("assignment space too large for brute force");
}

}  // namespace

void for_each_assignment(int length, int alphabet,
                         const std::function<void(const Assignment&)>& visit) {
    Assignment a(length, 0);
    while (true) {
        visit(a);
        int p = length - 1;
        while (p >= 0 && a[p] == alphabet - 1) {
            a[p] = 0;
            --p;
        }
        if (p < 0) return;
        ++a[p];
    }
}

std::vector<RankedAssignment> brute_force_ranking(const ConfidenceGrid& grid,
                                                  const ScoreModel& model) {
    check_space(grid.rows(), grid.cols());
    model.validate_against(grid);
    std::vector<RankedAssignment> all;
    for_each_assignment(grid.rows(), grid.cols(), [&](const Assignment& a) {
        all.push_back({a, score_key(model, grid, a)});
    });
    std::sort(all.begin(), all.end(), [](const RankedAssignment& x, const RankedAssignment& y) {
        return ranks_before(x.key, x.assignment, y.key, y.assignment);
    });
    return all;
}

std::optional<Assignment> brute_force_cop(const ConfidenceGrid& grid, const ScoreModel& model,
                                          const VerifierFn& verifier) {
    check_space(grid.rows(), grid.cols());
    model.validate_against(grid);
    std::optional<Assignment> best;
    ScoreKey best_key;
    for_each_assignment(grid.rows(), grid.cols(), [&](const Assignment& a) {
        if (!verifier(a)) return;
        ScoreKey key = score_key(model, grid, a);
        if (!best || ranks_before(key, a, best_key, *best)) {
            best = a;
            best_key = key;
        }
    });
    return best;
}

}  // namespace vl
