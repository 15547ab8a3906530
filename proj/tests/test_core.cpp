#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "vl/core.hpp"
#include "vl/oracle.hpp"
#include "vl/rng.hpp"

using namespace vl;

namespace {

ConfidenceGrid random_grid(int l, int k, Rng& rng) {
    ConfidenceGrid g(l, k);
    for (int i = 0; i < l; ++i) {
        double sum = 0.0;
        for (int j = 0; j < k; ++j) {
            g.at(i, j) = 0.05 + rng.uniform();
            sum += g.at(i, j);
        }
        for (int j = 0; j < k; ++j) g.at(i, j) /= sum;
    }
    return g;
}

Assignment random_assignment(int l, int k, Rng& rng) {
    Assignment a(l);
    for (int& s : a) s = rng.uniform_int(k);
    return a;
}

}  // namespace

TEST_CASE("product_score matches direct arithmetic") {
    ConfidenceGrid g = ConfidenceGrid::from_rows({{0.9, 0.1}, {0.6, 0.4}});
    CHECK(product_score(g, {0, 0}) == doctest::Approx(0.54));
    CHECK(product_score(g, {0, 1}) == doctest::Approx(0.36));

    ConfidenceGrid onehot = ConfidenceGrid::from_rows({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(product_score(onehot, onehot.argmax()) == doctest::Approx(1.0));

    ConfidenceGrid uniform = ConfidenceGrid::from_rows({{0.5, 0.5}, {0.5, 0.5}});
    CHECK(product_score(uniform, {0, 1}) == doctest::Approx(0.25));
    CHECK(product_score(uniform, {1, 1}) == doctest::Approx(0.25));
}

TEST_CASE("product_score rejects shape mismatches") {
    ConfidenceGrid g = ConfidenceGrid::from_rows({{0.9, 0.1}});
    CHECK_THROWS_AS(product_score(g, {0, 1}), ContractViolation);
    CHECK_THROWS_AS(product_score(g, {2}), ContractViolation);
}

TEST_CASE("product_score stays finite on zero confidences") {
    ConfidenceGrid g = ConfidenceGrid::from_rows({{1.0, 0.0}});
    double log_key = log_product_score(g, {1});
    CHECK(std::isfinite(log_key));
    CHECK(log_key == doctest::Approx(std::log(kConfidenceFloor)));
}

TEST_CASE("consistency_score counts matching positions") {
    CHECK(consistency_score({1, 2, 3}, {1, 2, 3}) == 3);
    CHECK(consistency_score({1, 2, 3}, {3, 2, 1}) == 1);
    CHECK(consistency_score({0}, {1}) == 0);
    CHECK_THROWS_AS(consistency_score({0, 1}, {0}), ContractViolation);
}

TEST_CASE("score_key unfolds per variant") {
    ConfidenceGrid g = ConfidenceGrid::from_rows({{0.9, 0.1}});

    ScoreKey independent = score_key(ScoreModel::independent_product(), g, {0});
    CHECK(independent.consistency == 0);
    CHECK(independent.product() == doctest::Approx(0.9));

    ScoreModel lex = ScoreModel::lex_consistency_then_product({0});
    ScoreKey hit = score_key(lex, g, {0});
    CHECK(hit.consistency == 1);
    CHECK(hit.product() == doctest::Approx(0.9));

    ScoreKey miss = score_key(lex, g, {1});
    CHECK(miss.consistency == 0);
    CHECK(miss.product() == doctest::Approx(0.1));

    ScoreModel no_ref{ScoreVariant::ConsistencyCount, std::nullopt};
    CHECK_THROWS_AS(score_key(no_ref, g, {0}), ContractViolation);
}

TEST_CASE("product_score is permutation covariant") {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        int l = 2 + rng.uniform_int(4);
        int k = 2 + rng.uniform_int(3);
        ConfidenceGrid g = random_grid(l, k, rng);
        Assignment a = random_assignment(l, k, rng);

        std::vector<int> perm(l);
        for (int i = 0; i < l; ++i) perm[i] = i;
        rng.shuffle(perm);
        ConfidenceGrid pg(l, k);
        Assignment pa(l);
        for (int i = 0; i < l; ++i) {
            pa[i] = a[perm[i]];
            for (int j = 0; j < k; ++j) pg.at(i, j) = g.at(perm[i], j);
        }
        CHECK(product_score(g, a) == doctest::Approx(product_score(pg, pa)).epsilon(1e-12));
    }
}

TEST_CASE("lex keys: higher consistency always outranks higher confidence") {
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        int l = 2 + rng.uniform_int(3);  // up to 4
        int k = 2 + rng.uniform_int(2);  // up to 3
        ConfidenceGrid g = random_grid(l, k, rng);
        ScoreModel lex = ScoreModel::lex_consistency_then_product(random_assignment(l, k, rng));

        std::vector<RankedAssignment> all = brute_force_ranking(g, lex);
        for (size_t i = 0; i + 1 < all.size(); ++i)
            for (size_t j = i + 1; j < all.size(); ++j)
                if (all[i].key.consistency > all[j].key.consistency)
                    CHECK(key_less(all[j].key, all[i].key));
    }
}

// Theorem premise: the order each score model induces between two symbols
// at one position never depends on the other positions' symbols.
TEST_CASE("per-position priority is context independent") {
    Rng rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const int l = 3, k = 3;
        ConfidenceGrid g = random_grid(l, k, rng);
        std::vector<ScoreModel> models = {
            ScoreModel::independent_product(),
            ScoreModel::consistency_count(random_assignment(l, k, rng)),
            ScoreModel::lex_consistency_then_product(random_assignment(l, k, rng)),
        };
        for (const ScoreModel& model : models) {
            for (int p = 0; p < l; ++p) {
                for (int u = 0; u < k; ++u) {
                    for (int v = 0; v < k; ++v) {
                        if (u == v) continue;
                        int direction = 0;  // 0 unknown, +1 u better, -1 v better, stays fixed
                        for_each_assignment(l, k, [&](const Assignment& context) {
                            Assignment with_u = context, with_v = context;
                            with_u[p] = u;
                            with_v[p] = v;
                            ScoreKey ku = score_key(model, g, with_u);
                            ScoreKey kv = score_key(model, g, with_v);
                            int now = key_less(kv, ku) ? 1 : (key_less(ku, kv) ? -1 : 0);
                            if (direction == 0) direction = now;
                            CHECK(direction == now);
                        });
                    }
                }
            }
        }
    }
}

TEST_CASE("alphabet and prior validation") {
    CHECK_THROWS_AS(Alphabet::numeric(1), ContractViolation);
    Alphabet a = Alphabet::numeric(3);
    CHECK(a.names == std::vector<std::string>{"0", "1", "2"});

    SymbolPrior p = SymbolPrior::uniform(4);
    p.validate();
    p.probs[0] += 0.5;
    CHECK_THROWS_AS(p.validate(), ContractViolation);
}
