#pragma once

#include <string>
#include <vector>

#include "vl/core.hpp"

namespace vl {

// Bijection on symbol indices 0..k-1, stored as its image table.
using Permutation = std::vector<int>;

bool is_permutation(const Permutation& p);
Assignment apply_permutation(const Permutation& sigma, const Assignment& a);

// Exhaustive k! enumeration is only attempted up to this alphabet size.
inline constexpr int kMaxExhaustiveAlphabet = 8;

// All permutations sigma with V(S) == V(sigma(S)) for every sequence S of
// each given length, for every supplied verifier instance. Checking is
// exhaustive over the listed lengths, so the result is a (possibly proper)
// superset of the verifier's true invariance group on longer sequences.
std::vector<Permutation> symmetry_group(const std::vector<VerifierFn>& verifiers, int k,
                                        const std::vector<int>& lengths);
std::vector<Permutation> symmetry_group(const VerifierFn& verifier, int k,
                                        const std::vector<int>& lengths);

// Union-find partition of 0..k-1 under all group elements. The input must
// contain the identity and be closed under composition.
std::vector<std::vector<int>> orbit_decomposition(const std::vector<Permutation>& group, int k);

struct TaskErrorBounds {
    double r_up = 0.0;   // prior mass of symbols outside the fixed-point set
    double r_avg = 0.0;  // sum of prior mass divided by orbit size
};

TaskErrorBounds task_error_bounds(const std::vector<std::vector<int>>& orbits,
                                  const SymbolPrior& prior);

// Smallest symbol-level mismatch rate between sigma(preds) and truths over
// all sigma in the group, in [0, 1].
double min_perm_empirical_error(const std::vector<Assignment>& preds,
                                const std::vector<Assignment>& truths,
                                const std::vector<Permutation>& group);

struct OrbitReport {
    int alphabet = 0;
    std::vector<Permutation> group;
    std::vector<std::vector<int>> orbits;
    std::vector<int> fixed_points;
    double r_up = 0.0;
    double r_avg = 0.0;
    int check_length = 0;  // longest sequence length checked exhaustively

    std::string to_json(const std::vector<std::string>& symbol_names = {}) const;
};

OrbitReport analyze_symmetry(const std::vector<VerifierFn>& verifiers, int k,
                             const std::vector<int>& lengths, const SymbolPrior& prior);

}  // namespace vl
