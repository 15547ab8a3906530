#pragma once

#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "vl/core.hpp"

namespace vl {

// Per-position symbol priorities: per_position[p] lists the k symbols of
// position p best-first. Advancing any single position one rank never
// improves the global key, which is what makes lazy best-first emission
// exact for the supported score models.
struct PositionOrder {
    std::vector<std::vector<int>> per_position;

    int length() const { return static_cast<int>(per_position.size()); }
    int alphabet() const { return per_position.empty() ? 0 : static_cast<int>(per_position[0].size()); }
};

// Priority: confidence descending for the independent model; the reference
// prediction's symbol first, then confidence descending, for consistency
// models. Ties by ascending symbol index.
PositionOrder build_order(const ConfidenceGrid& grid, const ScoreModel& model);

// Rank-0 pick at every position: the global score maximum.
Assignment first_assignment(const PositionOrder& order);

// One successor per position that can still advance: that position moves
// to its next rank, everything else stays. cursor[p] is the rank a holds
// at position p.
std::vector<Assignment> successors(const Assignment& a, const std::vector<int>& cursor,
                                   const PositionOrder& order);

// Streams assignments in non-increasing ScoreKey order (exact key ties in
// a deterministic order) without materializing the k^l space. One entry
// per emitted parent lives in the heap, keyed by its best pending
// successor; a visited set drops duplicates proposed by several parents.
class Enumerator {
  public:
    Enumerator(ConfidenceGrid grid, ScoreModel model);

    // Next assignment in rank order; the first call yields the global
    // maximum. nullopt once all k^l assignments were emitted.
    std::optional<Assignment> next();

    ScoreKey key_of(const Assignment& a) const;
    long emitted() const { return emitted_; }
    long heap_operations() const { return heap_ops_; }

  private:
    struct Pending {
        Assignment assignment;
        ScoreKey key;
        int position;  // which position was advanced relative to the parent
    };
    struct Entry {
        std::vector<int> cursor;       // parent's rank vector
        std::vector<Pending> pending;  // parent's unexpanded successors, best first
        size_t front = 0;
    };
    struct EntryWorse {
        bool operator()(const Entry& a, const Entry& b) const {
            const Pending& pa = a.pending[a.front];
            const Pending& pb = b.pending[b.front];
            return ranks_before(pb.key, pb.assignment, pa.key, pa.assignment);
        }
    };

    void push_entry(const Assignment& a, const std::vector<int>& cursor);

    ConfidenceGrid grid_;
    ScoreModel model_;
    PositionOrder order_;
    std::priority_queue<Entry, std::vector<Entry>, EntryWorse> heap_;
    std::set<Assignment> visited_;
    bool started_ = false;
    long emitted_ = 0;
    long heap_ops_ = 0;
};

struct CopResult {
    Assignment assignment;    // accepted solution, or the rank-1 assignment when exhausted
    long rank = 0;            // 1-based rank of the accepted assignment; 0 when exhausted
    long verifications = 0;   // total verifier calls (== assignments emitted)
    bool exhausted = false;
};

// Emits assignments best-first and verifies each until one passes; the
// first accepted assignment is the COP optimum. Stops after `budget`
// emissions (or a fully enumerated space) and falls back to the rank-1
// assignment with the exhausted flag set.
CopResult solve_cop(const ConfidenceGrid& grid, const ScoreModel& model,
                    const VerifierFn& verifier, long budget);

}  // namespace vl
