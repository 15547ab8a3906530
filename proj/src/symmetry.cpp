#include "vl/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "vl/oracle.hpp"
#include "json.hpp"

namespace vl {

bool is_permutation(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
        seen[v] = true;
    }
    return !p.empty();
}

Assignment apply_permutation(const Permutation& sigma, const Assignment& a) {
    Assignment out(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 0 || a[i] >= static_cast<int>(sigma.size()))
            throw ContractViolation("symbol out of permutation domain");
        out[i] = sigma[a[i]];
    }
    return out;
}

namespace {

bool invariant_under(const Permutation& sigma, const std::vector<VerifierFn>& verifiers, int k,
                     const std::vector<int>& lengths) {
    for (const VerifierFn& v : verifiers) {
        for (int len : lengths) {
            bool ok = true;
            for_each_assignment(len, k, [&](const Assignment& a) {
                if (!ok) return;
                if (v(a) != v(apply_permutation(sigma, a))) ok = false;
            });
            if (!ok) return false;
        }
    }
    return true;
}

// Exhaustively checked invariance over all sequences of the given lengths
// is closed by construction; this re-verification exists to catch bugs.
// Full pairwise checking is quadratic in |G|, so large groups (alldiff
// with big k) get a seeded sample of pairs instead.
void assert_group_closure(const std::vector<Permutation>& group) {
    std::set<Permutation> members(group.begin(), group.end());
    auto compose = [](const Permutation& a, const Permutation& b) {
        Permutation c(a.size());
        for (size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
        return c;
    };
    auto check_pair = [&](size_t i, size_t j) {
        if (!members.count(compose(group[i], group[j])))
            throw ContractViolation("symmetry group is not closed under composition");
    };
    const size_t n = group.size();
    if (n * n <= 1u << 22) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) check_pair(i, j);
    } else {
        std::uint64_t state = 0x9e3779b97f4a7c15ULL;
        for (int t = 0; t < 1 << 14; ++t) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            size_t i = static_cast<size_t>((state >> 33) % n);
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            size_t j = static_cast<size_t>((state >> 33) % n);
            check_pair(i, j);
        }
    }
    // inverses: a finite set closed under composition that contains only
    // bijections contains inverses as well, but verify the identity exists
    Permutation id(group.empty() ? 0 : group[0].size());
    std::iota(id.begin(), id.end(), 0);
    if (!members.count(id)) throw ContractViolation("symmetry group lacks the identity");
}

}  // namespace

std::vector<Permutation> symmetry_group(const std::vector<VerifierFn>& verifiers, int k,
                                        const std::vector<int>& lengths) {
    if (k < 1) throw ContractViolation("alphabet size must be positive");
    if (k > kMaxExhaustiveAlphabet)
        throw CapabilityError("alphabet too large for exhaustive permutation enumeration (k <= " +
                              std::to_string(kMaxExhaustiveAlphabet) + ")");
    if (verifiers.empty() || lengths.empty())
        throw ContractViolation("symmetry check needs at least one verifier and length");
    double checks = 0.0;
    for (int len : lengths) {
        if (len < 1) throw ContractViolation("sequence lengths must be positive");
        checks += std::pow(static_cast<double>(k), len);
    }
    if (checks * static_cast<double>(verifiers.size()) > 2e6)
        throw CapabilityError("sequence space too large for exhaustive symmetry check");

    std::vector<Permutation> group;
    Permutation sigma(k);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        if (invariant_under(sigma, verifiers, k, lengths)) group.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    assert_group_closure(group);
    return group;
}

std::vector<Permutation> symmetry_group(const VerifierFn& verifier, int k,
                                        const std::vector<int>& lengths) {
    return symmetry_group(std::vector<VerifierFn>{verifier}, k, lengths);
}

std::vector<std::vector<int>> orbit_decomposition(const std::vector<Permutation>& group, int k) {
    if (group.empty()) throw ContractViolation("orbit decomposition needs a non-empty group");
    for (const Permutation& p : group)
        if (!is_permutation(p) || static_cast<int>(p.size()) != k)
            throw ContractViolation("group element is not a permutation of 0..k-1");
    assert_group_closure(group);

    std::vector<int> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const Permutation& sigma : group)
        for (int s = 0; s < k; ++s) {
            int a = find(s), b = find(sigma[s]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }

    std::map<int, std::vector<int>> buckets;
    for (int s = 0; s < k; ++s) buckets[find(s)].push_back(s);
    std::vector<std::vector<int>> orbits;
    for (auto& [root, members] : buckets) orbits.push_back(std::move(members));
    return orbits;
}

TaskErrorBounds task_error_bounds(const std::vector<std::vector<int>>& orbits,
                                  const SymbolPrior& prior) {
    prior.validate();
    std::vector<int> orbit_size(prior.size(), 0);
    int covered = 0;
    for (const auto& orbit : orbits)
        for (int s : orbit) {
            if (s < 0 || s >= prior.size() || orbit_size[s] != 0)
                throw ContractViolation("orbits must partition the symbol set");
            orbit_size[s] = static_cast<int>(orbit.size());
            ++covered;
        }
    if (covered != prior.size())
        throw ContractViolation("orbits must cover every symbol");

    TaskErrorBounds bounds;
    for (int s = 0; s < prior.size(); ++s) {
        if (orbit_size[s] > 1) bounds.r_up += prior.probs[s];
        bounds.r_avg += prior.probs[s] / orbit_size[s];
    }
    return bounds;
}

double min_perm_empirical_error(const std::vector<Assignment>& preds,
                                const std::vector<Assignment>& truths,
                                const std::vector<Permutation>& group) {
    if (preds.size() != truths.size())
        throw ContractViolation("prediction/truth lists must have equal size");
    if (group.empty()) throw ContractViolation("permutation group must be non-empty");
    long total = 0;
    for (size_t i = 0; i < preds.size(); ++i) {
        if (preds[i].size() != truths[i].size())
            throw ContractViolation("prediction/truth shapes must match");
        total += static_cast<long>(preds[i].size());
    }
    if (total == 0) return 0.0;

    long best = total + 1;
    for (const Permutation& sigma : group) {
        long mismatches = 0;
        for (size_t i = 0; i < preds.size() && mismatches < best; ++i)
            for (size_t p = 0; p < preds[i].size(); ++p)
                if (sigma[preds[i][p]] != truths[i][p]) ++mismatches;
        best = std::min(best, mismatches);
    }
    return static_cast<double>(best) / static_cast<double>(total);
}

OrbitReport analyze_symmetry(const std::vector<VerifierFn>& verifiers, int k,
                             const std::vector<int>& lengths, const SymbolPrior& prior) {
    OrbitReport report;
    report.alphabet = k;
    report.group = symmetry_group(verifiers, k, lengths);
    report.orbits = orbit_decomposition(report.group, k);
    for (const auto& orbit : report.orbits)
        if (orbit.size() == 1) report.fixed_points.push_back(orbit[0]);
    TaskErrorBounds bounds = task_error_bounds(report.orbits, prior);
    report.r_up = bounds.r_up;
    report.r_avg = bounds.r_avg;
    report.check_length = *std::max_element(lengths.begin(), lengths.end());
    return report;
}

std::string OrbitReport::to_json(const std::vector<std::string>& symbol_names) const {
    nlohmann::json j;
    j["alphabet"] = alphabet;
    if (!symbol_names.empty()) j["symbols"] = symbol_names;
    j["group_size"] = group.size();
    j["group"] = group;
    j["orbits"] = orbits;
    j["fixed_points"] = fixed_points;
    j["r_up"] = r_up;
    j["r_avg"] = r_avg;
    j["check_length"] = check_length;
    return j.dump(2);
}

}  // namespace vl
