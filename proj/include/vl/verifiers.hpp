#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vl/core.hpp"

namespace vl {

long digits_to_number(const std::vector<int>& digits, int base);

// Assignment layout: [operand1 digits | operand2 digits | result digits],
// operands num_digits wide, result 2*num_digits wide (big-endian).
bool verify_addition(const Assignment& a, int base, int num_digits);

// Strictly increasing sequence.
bool verify_sort(const Assignment& a);

// Non-decreasing sequence whose maximal runs all share one length.
bool verify_match(const Assignment& a);

// Piece types: 0 bishop, 1 king, 2 knight, 3 pawn, 4 queen, 5 rook.
inline constexpr int kChessTypes = 6;
bool attack(int ptype, int x1, int y1, int x2, int y2);

// Board coordinates are known inputs; only the piece types are predicted.
struct ChessPositions {
    std::vector<std::pair<int, int>> coords;
};

// True iff some pair i<j has piece i attacking square j. Only the i->j
// direction is checked (pawn attacks are asymmetric, so order matters).
bool verify_chess(const Assignment& a, const ChessPositions& pos);

bool verify_all_different(const Assignment& a);

enum class TaskKind { Addition, Sort, Match, Chess, AllDifferent };

// Task identity plus parameters; enough to build verifiers, datasets and
// the CLI wiring for one experiment.
struct TaskSpec {
    TaskKind kind = TaskKind::Addition;
    int base = 10;       // addition
    int num_digits = 1;  // addition
    int alphabet = 0;    // k for sort/match/alldiff (addition: base, chess: 6)
    int length = 0;      // l for sort/match/alldiff (addition/chess: derived)
    int pieces = 2;      // chess slots

    int k() const;
    int l() const;
    std::string name() const;
    void validate() const;

    // Verifier for tasks whose rule does not depend on per-sample inputs.
    // Throws for Chess; use verifier_for with the sample's board.
    VerifierFn verifier() const;
    VerifierFn verifier_for(const ChessPositions& pos) const;
};

TaskKind task_kind_from_name(const std::string& name);

}  // namespace vl
