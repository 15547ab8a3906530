#include <numeric>

#include "doctest.h"
#include "vl/rng.hpp"
#include "vl/symmetry.hpp"
#include "vl/verifiers.hpp"

using namespace vl;

namespace {

const VerifierFn kSort = [](const Assignment& a) { return verify_sort(a); };
const VerifierFn kMatch = [](const Assignment& a) { return verify_match(a); };
const VerifierFn kAllDiff = [](const Assignment& a) { return verify_all_different(a); };

Permutation identity(int k) {
    Permutation id(k);
    std::iota(id.begin(), id.end(), 0);
    return id;
}

}  // namespace

TEST_CASE("all-different is invariant under every permutation") {
    auto group = symmetry_group(kAllDiff, 3, {3});
    CHECK(group.size() == 6);  // Sym(3)
}

TEST_CASE("binary addition admits only the identity") {
    VerifierFn add = [](const Assignment& a) { return verify_addition(a, 2, 1); };
    auto group = symmetry_group(add, 2, {4});
    REQUIRE(group.size() == 1);
    CHECK(group[0] == identity(2));
}

TEST_CASE("sort admits only the identity") {
    auto group = symmetry_group(kSort, 4, {2, 3, 4});
    REQUIRE(group.size() == 1);
    CHECK(group[0] == identity(4));
}

TEST_CASE("group elements really preserve the verifier on random sequences") {
    auto group = symmetry_group(kAllDiff, 5, {3});
    CHECK(group.size() == 120);
    Rng rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        Assignment a(3);
        for (int& s : a) s = rng.uniform_int(5);
        const Permutation& sigma = group[rng.uniform_int(static_cast<int>(group.size()))];
        CHECK(verify_all_different(a) == verify_all_different(apply_permutation(sigma, a)));
    }
}

TEST_CASE("truncated-length groups shrink as the checked length grows") {
    // match over length-1 sequences is blind (all valid), longer sequences
    // pin the group down; the reported bound may only tighten
    auto loose = symmetry_group(kMatch, 3, {1});
    auto mid = symmetry_group(kMatch, 3, {1, 2});
    auto tight = symmetry_group(kMatch, 3, {1, 2, 3});
    CHECK(loose.size() >= mid.size());
    CHECK(mid.size() >= tight.size());

    SymbolPrior uniform = SymbolPrior::uniform(3);
    double r_loose = task_error_bounds(orbit_decomposition(loose, 3), uniform).r_up;
    double r_mid = task_error_bounds(orbit_decomposition(mid, 3), uniform).r_up;
    double r_tight = task_error_bounds(orbit_decomposition(tight, 3), uniform).r_up;
    CHECK(r_loose >= r_mid);
    CHECK(r_mid >= r_tight);
}

TEST_CASE("alphabet guard rejects oversized exhaustive requests") {
    CHECK_THROWS_AS(symmetry_group(kAllDiff, 9, {2}), CapabilityError);
}

TEST_CASE("orbit decomposition") {
    auto sym3 = symmetry_group(kAllDiff, 3, {3});
    auto orbits = orbit_decomposition(sym3, 3);
    REQUIRE(orbits.size() == 1);
    CHECK(orbits[0] == std::vector<int>{0, 1, 2});

    auto singletons = orbit_decomposition({identity(4)}, 4);
    CHECK(singletons.size() == 4);

    Permutation swap01{1, 0, 2};
    auto mixed = orbit_decomposition({identity(3), swap01}, 3);
    REQUIRE(mixed.size() == 2);
    CHECK(mixed[0] == std::vector<int>{0, 1});
    CHECK(mixed[1] == std::vector<int>{2});
}

TEST_CASE("orbit decomposition rejects non-groups") {
    Permutation swap01{1, 0, 2};
    CHECK_THROWS_AS(orbit_decomposition({swap01}, 3), ContractViolation);  // no identity
    Permutation cycle{1, 2, 0};
    CHECK_THROWS_AS(orbit_decomposition({identity(3), cycle}, 3), ContractViolation);  // open
}

TEST_CASE("task error bounds follow the orbit structure") {
    SymbolPrior uniform = SymbolPrior::uniform(3);

    auto all_diff_orbits = orbit_decomposition(symmetry_group(kAllDiff, 3, {3}), 3);
    CHECK(task_error_bounds(all_diff_orbits, uniform).r_up == doctest::Approx(1.0));

    VerifierFn add = [](const Assignment& a) { return verify_addition(a, 3, 1); };
    auto add_orbits = orbit_decomposition(symmetry_group(add, 3, {4}), 3);
    CHECK(task_error_bounds(add_orbits, uniform).r_up == doctest::Approx(0.0));

    Permutation swap01{1, 0, 2};
    auto orbits = orbit_decomposition({identity(3), swap01}, 3);
    TaskErrorBounds b = task_error_bounds(orbits, uniform);
    CHECK(b.r_up == doctest::Approx(2.0 / 3.0));
    CHECK(b.r_avg == doctest::Approx(2.0 / 3.0));

    // r_avg == 1 exactly when the group is trivial; r_up == 0 likewise
    auto trivial = orbit_decomposition({identity(3)}, 3);
    TaskErrorBounds t = task_error_bounds(trivial, uniform);
    CHECK(t.r_avg == doctest::Approx(1.0));
    CHECK(t.r_up == doctest::Approx(0.0));
}

TEST_CASE("min-permutation empirical error") {
    std::vector<Assignment> truths = {{0, 1, 2}, {2, 1, 0}, {0, 0, 1}};
    std::vector<Assignment> same = truths;
    auto sym3 = symmetry_group(kAllDiff, 3, {3});
    CHECK(min_perm_empirical_error(same, truths, sym3) == doctest::Approx(0.0));

    Permutation swap01{1, 0, 2};
    std::vector<Assignment> swapped;
    for (const Assignment& t : truths) swapped.push_back(apply_permutation(swap01, t));

    // the group containing the swap undoes the relabeling completely
    CHECK(min_perm_empirical_error(swapped, truths, {identity(3), swap01}) ==
          doctest::Approx(0.0));

    // identity-only: mismatches are exactly the positions whose truth is 0 or 1
    double expected = 7.0 / 9.0;
    CHECK(min_perm_empirical_error(swapped, truths, {identity(3)}) ==
          doctest::Approx(expected));
}

TEST_CASE("analyze_symmetry assembles the report") {
    OrbitReport report = analyze_symmetry({kAllDiff}, 3, {3}, SymbolPrior::uniform(3));
    CHECK(report.group.size() == 6);
    CHECK(report.orbits.size() == 1);
    CHECK(report.fixed_points.empty());
    CHECK(report.r_up == doctest::Approx(1.0));
    CHECK(report.check_length == 3);
    CHECK(report.to_json().find("\"r_up\"") != std::string::npos);
}
