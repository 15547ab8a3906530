#include "vl/verifiers.hpp"

#include <cstdlib>
#include <set>

namespace vl {

long digits_to_number(const std::vector<int>& digits, int base) {
    long number = 0;
    for (int d : digits) {
        number *= base;
        number += d;
    }
    return number;
}

bool verify_addition(const Assignment& a, int base, int num_digits) {
    const int n = num_digits;
    if (static_cast<int>(a.size()) != 4 * n)
        throw ContractViolation("addition assignment must have 4*num_digits symbols");
    std::vector<int> nums1(a.begin(), a.begin() + n);
    std::vector<int> nums2(a.begin() + n, a.begin() + 2 * n);
    std::vector<int> nums3(a.begin() + 2 * n, a.end());
    return digits_to_number(nums1, base) + digits_to_number(nums2, base) ==
           digits_to_number(nums3, base);
}

bool verify_sort(const Assignment& a) {
    for (size_t i = 0; i + 1 < a.size(); ++i)
        if (a[i + 1] <= a[i]) return false;
    return true;
}

bool verify_match(const Assignment& a) {
    const int l = static_cast<int>(a.size());
    bool have_count = false;
    int count = 0;
    int cur_count = 0;
    for (int i = 0; i < l; ++i) {
        if (i > 0 && a[i] < a[i - 1]) return false;
        if (i > 0 && a[i] > a[i - 1]) {
            if (!have_count) {
                have_count = true;
                count = cur_count;
            } else if (count != cur_count) {
                return false;
            }
            cur_count = 0;
        }
        ++cur_count;
    }
    return !have_count || cur_count == count;
}

namespace {

bool straight_attack(int x1, int y1, int x2, int y2) {
    return x1 == x2 || y1 == y2;
}

bool diagonal_attack(int x1, int y1, int x2, int y2) {
    return std::abs(x1 - x2) == std::abs(y1 - y2);
}

}  // namespace

bool attack(int ptype, int x1, int y1, int x2, int y2) {
    switch (ptype) {
        case 0:  // bishop
            return diagonal_attack(x1, y1, x2, y2);
        case 1:  // king
            return std::abs(x1 - x2) <= 1 && std::abs(y1 - y2) <= 1;
        case 2:  // knight
            return (std::abs(x1 - x2) == 2 && std::abs(y1 - y2) == 1) ||
                   (std::abs(x1 - x2) == 1 && std::abs(y1 - y2) == 2);
        case 3:  // pawn (white: attacks one square diagonally forward)
            return std::abs(x1 - x2) == 1 && y2 - y1 == 1;
        case 4:  // queen
            return straight_attack(x1, y1, x2, y2) || diagonal_attack(x1, y1, x2, y2);
        case 5:  // rook
            return straight_attack(x1, y1, x2, y2);
        default:
            return false;
    }
}

bool verify_chess(const Assignment& a, const ChessPositions& pos) {
    const int l = static_cast<int>(a.size());
    if (l != static_cast<int>(pos.coords.size()))
        throw ContractViolation("chess assignment must match position count");
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j)
            if (attack(a[i], pos.coords[i].first, pos.coords[i].second,
                       pos.coords[j].first, pos.coords[j].second))
                return true;
    return false;
}

bool verify_all_different(const Assignment& a) {
    std::set<int> seen;
    for (int s : a)
        if (!seen.insert(s).second) return false;
    return true;
}

int TaskSpec::k() const {
    switch (kind) {
        case TaskKind::Addition: return base;
        case TaskKind::Chess: return kChessTypes;
        default: return alphabet;
    }
}

int TaskSpec::l() const {
    switch (kind) {
        case TaskKind::Addition: return 4 * num_digits;
        case TaskKind::Chess: return pieces;
        default: return length;
    }
}

std::string TaskSpec::name() const {
    switch (kind) {
        case TaskKind::Addition: return "addition";
        case TaskKind::Sort: return "sort";
        case TaskKind::Match: return "match";
        case TaskKind::Chess: return "chess";
        case TaskKind::AllDifferent: return "alldiff";
    }
    return "?";
}

void TaskSpec::validate() const {
    switch (kind) {
        case TaskKind::Addition:
            if (base < 2) throw ContractViolation("addition base must be >= 2");
            if (num_digits < 1) throw ContractViolation("addition needs >= 1 digit");
            break;
        case TaskKind::Sort:
            if (alphabet < 2 || length < 1) throw ContractViolation("sort needs k >= 2, l >= 1");
            if (length > alphabet)
                throw ContractViolation("sort is infeasible with l > k (no strictly increasing sequence)");
            break;
        case TaskKind::Match:
            if (alphabet < 2 || length < 1) throw ContractViolation("match needs k >= 2, l >= 1");
            break;
        case TaskKind::Chess:
            // one piece has no pairs, so no configuration verifies
            if (pieces < 2) throw ContractViolation("chess needs >= 2 pieces");
            if (pieces > 64) throw ContractViolation("chess board holds at most 64 pieces");
            break;
        case TaskKind::AllDifferent:
            if (alphabet < 2 || length < 1) throw ContractViolation("alldiff needs k >= 2, l >= 1");
            if (length > alphabet) throw ContractViolation("alldiff is infeasible with l > k");
            break;
    }
}

VerifierFn TaskSpec::verifier() const {
    validate();
    switch (kind) {
        case TaskKind::Addition: {
            int b = base, d = num_digits;
            return [b, d](const Assignment& a) { return verify_addition(a, b, d); };
        }
        case TaskKind::Sort:
            return [](const Assignment& a) { return verify_sort(a); };
        case TaskKind::Match:
            return [](const Assignment& a) { return verify_match(a); };
        case TaskKind::AllDifferent:
            return [](const Assignment& a) { return verify_all_different(a); };
        case TaskKind::Chess:
            throw ContractViolation("chess verifier needs per-sample positions");
    }
    throw ContractViolation("unknown task kind");
}

VerifierFn TaskSpec::verifier_for(const ChessPositions& pos) const {
    if (kind != TaskKind::Chess) return verifier();
    ChessPositions copy = pos;
    return [copy](const Assignment& a) { return verify_chess(a, copy); };
}

TaskKind task_kind_from_name(const std::string& name) {
    if (name == "addition") return TaskKind::Addition;
    if (name == "sort") return TaskKind::Sort;
    if (name == "match") return TaskKind::Match;
    if (name == "chess") return TaskKind::Chess;
    if (name == "alldiff") return TaskKind::AllDifferent;
    throw ContractViolation("unknown task: " + name);
}

}  // namespace vl
