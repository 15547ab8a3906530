#include "vl/dcs.hpp"

#include <algorithm>

namespace vl {

PositionOrder build_order(const ConfidenceGrid& grid, const ScoreModel& model) {
    model.validate_against(grid);
    PositionOrder order;
    order.per_position.resize(grid.rows());
    for (int p = 0; p < grid.rows(); ++p) {
        std::vector<int>& syms = order.per_position[p];
        syms.resize(grid.cols());
        for (int s = 0; s < grid.cols(); ++s) syms[s] = s;
        const int ref = model.uses_consistency() ? (*model.reference_prediction)[p] : -1;
        std::sort(syms.begin(), syms.end(), [&](int a, int b) {
            if (ref >= 0 && (a == ref) != (b == ref)) return a == ref;
            if (grid.at(p, a) != grid.at(p, b)) return grid.at(p, a) > grid.at(p, b);
            return a < b;
        });
    }
    return order;
}

Assignment first_assignment(const PositionOrder& order) {
    Assignment a(order.length());
    for (int p = 0; p < order.length(); ++p) a[p] = order.per_position[p][0];
    return a;
}

std::vector<Assignment> successors(const Assignment& a, const std::vector<int>& cursor,
                                   const PositionOrder& order) {
    const int l = order.length();
    const int k = order.alphabet();
    if (static_cast<int>(a.size()) != l || static_cast<int>(cursor.size()) != l)
        throw ContractViolation("assignment/cursor shape must match the order");
    std::vector<Assignment> out;
    for (int p = 0; p < l; ++p) {
        if (cursor[p] + 1 >= k) continue;
        Assignment succ = a;
        succ[p] = order.per_position[p][cursor[p] + 1];
        out.push_back(std::move(succ));
    }
    return out;
}

Enumerator::Enumerator(ConfidenceGrid grid, ScoreModel model)
    : grid_(std::move(grid)), model_(std::move(model)) {
    model_.validate_against(grid_);
    order_ = build_order(grid_, model_);
}

ScoreKey Enumerator::key_of(const Assignment& a) const {
    return score_key(model_, grid_, a);
}

void Enumerator::push_entry(const Assignment& a, const std::vector<int>& cursor) {
    const int l = order_.length();
    const int k = order_.alphabet();
    Entry e;
    e.cursor = cursor;
    for (int p = 0; p < l; ++p) {
        if (cursor[p] + 1 >= k) continue;
        Pending s;
        s.assignment = a;
        s.assignment[p] = order_.per_position[p][cursor[p] + 1];
        s.key = key_of(s.assignment);
        s.position = p;
        e.pending.push_back(std::move(s));
    }
    if (e.pending.empty()) return;
    std::sort(e.pending.begin(), e.pending.end(), [](const Pending& x, const Pending& y) {
        return ranks_before(x.key, x.assignment, y.key, y.assignment);
    });
    heap_.push(std::move(e));
    ++heap_ops_;
}

std::optional<Assignment> Enumerator::next() {
    if (!started_) {
        started_ = true;
        Assignment first = first_assignment(order_);
        visited_.insert(first);
        ++emitted_;
        push_entry(first, std::vector<int>(order_.length(), 0));
        return first;
    }
    while (!heap_.empty()) {
        Entry e = heap_.top();
        heap_.pop();
        ++heap_ops_;
        Pending s = e.pending[e.front];
        std::vector<int> cursor = e.cursor;
        ++cursor[s.position];
        ++e.front;
        if (e.front < e.pending.size()) {
            heap_.push(std::move(e));
            ++heap_ops_;
        }
        // several parents can propose the same assignment; emit it once
        if (!visited_.insert(s.assignment).second) continue;
        ++emitted_;
        push_entry(s.assignment, cursor);
        return s.assignment;
    }
    return std::nullopt;
}

CopResult solve_cop(const ConfidenceGrid& grid, const ScoreModel& model,
                    const VerifierFn& verifier, long budget) {
    if (budget < 1) throw ContractViolation("solve_cop budget must be >= 1");
    Enumerator stream(grid, model);
    CopResult result;
    Assignment rank1;
    while (stream.emitted() < budget) {
        std::optional<Assignment> a = stream.next();
        if (!a) break;  // all k^l assignments seen
        if (stream.emitted() == 1) rank1 = *a;
        ++result.verifications;
        if (verifier(*a)) {
            result.assignment = std::move(*a);
            result.rank = stream.emitted();
            return result;
        }
    }
    result.assignment = std::move(rank1);
    result.exhausted = true;
    return result;
}

}  // namespace vl
