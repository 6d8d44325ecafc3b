#include "zne/allocation.h"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "test_util.h"
#include "zne/error.h"

using namespace zne;

namespace {

WeightVector weights_of(std::vector<double> xs) {
    return lagrange_weights(NodeSet::from_values(std::move(xs)));
}

double real_variance(const std::vector<double> &gammas, const std::vector<double> &shots) {
    double v = 0.0;
    for (size_t j = 0; j < gammas.size(); j++) {
        v += gammas[j] * gammas[j] / shots[j];
    }
    return v;
}

}  // namespace

TEST(Allocation, proportional_split_three_nodes) {
    WeightVector w = weights_of({1, 2, 3});  // gammas 3, -3, 1
    ShotPlan plan = allocate_shots(w, 700);
    EXPECT_EQ(plan.shots, (std::vector<int64_t>{300, 300, 100}));
    EXPECT_EQ(plan.n_tot, 700);
    EXPECT_DOUBLE_EQ(plan.overhead, 49.0);
    EXPECT_NEAR(plan.n_eff, 700.0 / 49.0, 1e-12);

    EXPECT_NEAR(estimator_variance(w, plan, 1.0), 0.07, 1e-15);
    EXPECT_NEAR(ideal_variance(w, 700, 1.0), 49.0 / 700.0, 1e-15);
    EXPECT_EQ(estimator_variance(w, plan, 0.0), 0.0);
}

TEST(Allocation, largest_remainder_keeps_total) {
    WeightVector w = weights_of({1, 2});  // 2, -1; targets 266.67 / 133.33
    ShotPlan plan = allocate_shots(w, 400);
    EXPECT_EQ(plan.shots, (std::vector<int64_t>{267, 133}));
}

TEST(Allocation, unmitigated_single_node) {
    WeightVector w = weights_of({1});
    ShotPlan plan = allocate_shots(w, 1000);
    EXPECT_EQ(plan.shots, std::vector<int64_t>{1000});
    EXPECT_EQ(plan.n_eff, 1000.0);
    EXPECT_DOUBLE_EQ(estimator_variance(w, plan, 2.0), 4.0 / 1000.0);
}

TEST(Allocation, budget_errors) {
    WeightVector w = weights_of({1, 2, 3});
    EXPECT_THROW(allocate_shots(w, 2), Error);
    try {
        allocate_shots(w, 2);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kInsufficientBudget);
    }
    ShotPlan bad{{10, 0, 5}, 15, 0.0, 49.0};
    try {
        estimator_variance(w, bad, 1.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kDivisionDegenerate);
    }
}

TEST(Allocation, floor_lifts_small_nodes) {
    // Tiny last weight: proportional share rounds to zero.
    NodeSet nodes = nodes_for_overhead(SpacingFamily::kExponential, 6, 2.5);
    WeightVector w = lagrange_weights(nodes);
    ShotPlan plan = allocate_shots(w, 20);
    EXPECT_EQ(std::accumulate(plan.shots.begin(), plan.shots.end(), int64_t{0}), 20);
    for (int64_t s : plan.shots) {
        EXPECT_GE(s, 1);
    }
    ShotPlan floored = allocate_shots(w, 1000, 50);
    EXPECT_EQ(std::accumulate(floored.shots.begin(), floored.shots.end(), int64_t{0}), 1000);
    for (int64_t s : floored.shots) {
        EXPECT_GE(s, 50);
    }
}

TEST(Allocation, overhead_from_budget_ratio) {
    // N_tot = 1e6 at N_eff = 1024 is an overhead of roughly 32^2.
    double lambda = std::sqrt(1e6 / 1024.0);
    EXPECT_NEAR(lambda, 32.0, 0.03 * 32.0);
    EXPECT_DOUBLE_EQ(lambda * lambda, 1e6 / 1024.0);
}

TEST(AllocationProperty, proportional_split_minimizes_variance) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; trial++) {
        auto c = zne::testing::random_case(rng, 1, 8, 2.0, 64.0);
        WeightVector w = lagrange_weights(nodes_for_overhead(c.family, c.n, c.lambda));
        const double n_tot = 1e5;
        std::vector<double> ideal(w.gammas.size());
        for (size_t j = 0; j < ideal.size(); j++) {
            ideal[j] = n_tot * std::abs(w.gammas[j]) / w.lambda_overhead;
        }
        double best = real_variance(w.gammas, ideal);
        EXPECT_NEAR(best, ideal_variance(w, n_tot, 1.0), 1e-12 * best);
        std::uniform_real_distribution<double> jitter(0.5, 1.5);
        for (int k = 0; k < 100; k++) {
            std::vector<double> other(ideal.size());
            double total = 0.0;
            for (size_t j = 0; j < other.size(); j++) {
                other[j] = ideal[j] * jitter(rng);
                total += other[j];
            }
            for (double &s : other) {
                s *= n_tot / total;
            }
            EXPECT_GE(real_variance(w.gammas, other), best * (1 - 1e-12));
        }
    }
}

TEST(AllocationProperty, ideal_variance_does_not_depend_on_n) {
    const double lambda = 16.0;
    const double expected = lambda * lambda / 1e6;
    for (SpacingFamily f : kAllFamilies) {
        for (size_t n = 1; n <= 12; n++) {
            WeightVector w = lagrange_weights(nodes_for_overhead(f, n, lambda));
            EXPECT_NEAR(ideal_variance(w, 1e6, 1.0), expected, 1e-7 * expected);
        }
    }
}

TEST(AllocationProperty, rounding_costs_at_most_five_percent) {
    std::mt19937_64 rng(9);
    int checked = 0;
    for (int trial = 0; trial < 200; trial++) {
        auto c = zne::testing::random_case(rng, 1, 10, 2.0, 256.0);
        WeightVector w = lagrange_weights(nodes_for_overhead(c.family, c.n, c.lambda));
        std::uniform_int_distribution<int64_t> budget(100, 200000);
        int64_t n_tot = budget(rng);
        ShotPlan plan = allocate_shots(w, n_tot);
        if (*std::min_element(plan.shots.begin(), plan.shots.end()) < 20) {
            continue;
        }
        checked++;
        EXPECT_LE(estimator_variance(w, plan, 1.0), 1.05 * ideal_variance(w, static_cast<double>(n_tot), 1.0));
    }
    EXPECT_GT(checked, 50);
}
