#include "zne/analysis.h"

#include <gtest/gtest.h>

#include <cmath>

#include "zne/error.h"
#include "zne/estimator.h"

using namespace zne;

TEST(DensityGrid, single_node_rows_have_unit_ratio) {
    std::vector<size_t> ns{0};
    std::vector<double> lambdas{4.0, 32.0};
    GridResult g = density_grid(kAllFamilies, ns, lambdas);
    ASSERT_EQ(g.rows.size(), 8u);
    for (const auto &r : g.rows) {
        EXPECT_TRUE(r.error.empty());
        EXPECT_EQ(r.cn, 1.0);
        EXPECT_EQ(r.ratio, 1.0);
    }
}

TEST(DensityGrid, ratio_matches_direct_node_product) {
    std::vector<SpacingFamily> fam{SpacingFamily::kTiltedChebyshev};
    std::vector<size_t> ns{2};
    std::vector<double> lambdas{7.0};
    GridResult g = density_grid(fam, ns, lambdas);
    ASSERT_EQ(g.rows.size(), 1u);
    NodeSet nodes = nodes_for_overhead(SpacingFamily::kTiltedChebyshev, 2, 7.0);
    double product = nodes[0] * nodes[1] * nodes[2];
    EXPECT_NEAR(g.rows[0].ratio, 6.0 / product, 1e-14);
    EXPECT_NEAR(g.rows[0].cn, product, 1e-14 * product);
}

TEST(DensityGrid, rows_are_ordered_family_then_n_then_lambda) {
    std::vector<SpacingFamily> fam{SpacingFamily::kLinear, SpacingFamily::kTiltedChebyshev};
    std::vector<size_t> ns{1, 3};
    std::vector<double> lambdas{2.0, 8.0};
    GridResult g = density_grid(fam, ns, lambdas);
    ASSERT_EQ(g.rows.size(), 8u);
    EXPECT_EQ(g.rows[0].family, SpacingFamily::kLinear);
    EXPECT_EQ(g.rows[1].lambda, 8.0);
    EXPECT_EQ(g.rows[2].n, 3u);
    EXPECT_EQ(g.rows[4].family, SpacingFamily::kTiltedChebyshev);
}

TEST(DensityGrid, failing_rows_are_recorded_not_fatal) {
    std::vector<SpacingFamily> fam{SpacingFamily::kLinear};
    std::vector<size_t> ns{1};
    std::vector<double> lambdas{1.0 + 1e-12, 4.0};
    GridResult g = density_grid(fam, ns, lambdas);
    EXPECT_FALSE(g.rows[0].error.empty());
    EXPECT_TRUE(g.rows[1].error.empty());

    std::vector<double> impossible{1.0 + 1e-12};
    EXPECT_THROW(density_grid(fam, ns, impossible), Error);
}

TEST(DensityGrid, ratio_grows_with_overhead) {
    std::vector<double> lambdas{2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0};
    for (size_t n = 1; n <= 10; n++) {
        std::vector<size_t> ns{n};
        GridResult g = density_grid(kAllFamilies, ns, lambdas);
        for (size_t i = 1; i < g.rows.size(); i++) {
            if (g.rows[i].family == g.rows[i - 1].family) {
                EXPECT_GT(g.rows[i].ratio, g.rows[i - 1].ratio) << to_string(g.rows[i].family) << " n=" << n;
            }
        }
    }
}

TEST(NHat, tilted_guidance_values) {
    EXPECT_EQ(n_hat(SpacingFamily::kTiltedChebyshev, 4.0, 15).n, 1u);
    size_t mid = n_hat(SpacingFamily::kTiltedChebyshev, 32.0, 15).n;
    EXPECT_TRUE(mid == 2 || mid == 3) << mid;
    size_t high = n_hat(SpacingFamily::kTiltedChebyshev, 256.0, 15).n;
    EXPECT_TRUE(high == 5 || high == 6) << high;
}

TEST(NHat, invalid_arguments) {
    EXPECT_THROW(n_hat(SpacingFamily::kLinear, 1.0, 5), Error);
    EXPECT_THROW(n_hat(SpacingFamily::kLinear, 4.0, 0), Error);
}

TEST(Omega, small_n_by_hand) {
    OmegaCheck one = verify_omega(1);
    ASSERT_EQ(one.omegas.size(), 2u);
    EXPECT_NEAR(one.omegas[0], 4.0, 1e-13);
    EXPECT_NEAR(one.omegas[1], -4.0, 1e-13);
    OmegaCheck two = verify_omega(2);
    EXPECT_NEAR(two.omegas[0], 12.0, 1e-13);
    EXPECT_NEAR(two.omegas[1], -6.0, 1e-13);
    EXPECT_NEAR(two.omegas[2], -6.0, 1e-13);
    EXPECT_TRUE(one.pass && two.pass);
    EXPECT_THROW(verify_omega(0), Error);
}

TEST(Omega, tolerance_relaxes_above_two_hundred) {
    EXPECT_EQ(omega_tolerance(200), 1e-8);
    EXPECT_EQ(omega_tolerance(201), 1e-6);
    EXPECT_TRUE(verify_omega(250).pass);
}

TEST(Stationarity, tilted_nodes_satisfy_lagrange_conditions) {
    for (double lambda : {4.0, 32.0, 256.0}) {
        for (size_t n : {1u, 2u, 5u, 12u, 30u}) {
            StationarityCheck c = verify_stationarity(n, lambda);
            EXPECT_TRUE(c.pass) << "n=" << n << " lambda=" << lambda << " residual=" << c.max_residual;
            EXPECT_LE(c.max_relation_residual, 1e-9);
        }
    }
}

TEST(Stationarity, other_families_are_not_stationary) {
    // Sanity of the check itself: extremal nodes violate the tilted conditions.
    StationarityCheck c = verify_stationarity(4, 16.0);
    EXPECT_TRUE(c.pass);
    NodeSet extremal = nodes_for_overhead(SpacingFamily::kChebyshevExtremal, 4, 16.0);
    NodeSet tilted = nodes_for_overhead(SpacingFamily::kTiltedChebyshev, 4, 16.0);
    EXPECT_GT(std::abs(extremal[4] - tilted[4]), 1e-3);
}

TEST(Optimality, recovers_tilted_nodes) {
    OptimalityResult r = verify_optimality(2, 7.0, 0);
    EXPECT_EQ(r.verdict, Verdict::kPass);
    ASSERT_EQ(r.best_nodes.size(), 3u);
    // Tilted n = 2: x2 - 1 = 3 (x1 - 1).
    EXPECT_NEAR((r.best_nodes[2] - 1.0) / (r.best_nodes[1] - 1.0), 3.0, 1e-4);
    EXPECT_GT(r.converged_starts, 0u);

    OptimalityResult r3 = verify_optimality(3, 10.0, 1);
    EXPECT_EQ(r3.verdict, Verdict::kPass);
    EXPECT_NEAR(r3.best_cn, r3.tilted_cn, 1e-6 * r3.tilted_cn);
}

TEST(Optimality, product_shrinks_toward_one_as_overhead_grows) {
    double previous = INFINITY;
    for (double lambda : {2.0, 4.0, 16.0, 64.0, 256.0, 4096.0}) {
        double cn = lagrange_weights(nodes_for_overhead(SpacingFamily::kTiltedChebyshev, 2, lambda)).cn;
        EXPECT_GT(cn, 1.0);
        EXPECT_LT(cn, previous);
        previous = cn;
    }
}

TEST(Optimality, rejects_out_of_scope_arguments) {
    EXPECT_THROW(verify_optimality(1, 7.0), Error);
    EXPECT_THROW(verify_optimality(5, 7.0), Error);
    EXPECT_THROW(verify_optimality(2, 0.5), Error);
}

TEST(BiasSweep, rows_and_unmitigated_column) {
    SweepSpec spec;
    spec.noise = NoiseKind::kMarkovian;
    spec.axis = SweepAxis::kLambda0;
    spec.axis_values = {0.1, 0.4};
    spec.families = {SpacingFamily::kTiltedChebyshev, SpacingFamily::kLinear};
    spec.ns = {0, 5};
    spec.lambdas = {8.0};
    auto rows = bias_sweep(spec);
    ASSERT_EQ(rows.size(), 8u);
    for (const auto &r : rows) {
        EXPECT_TRUE(r.error.empty());
        EXPECT_NEAR(r.abs_bias_unmitigated, 1.0 - std::exp(-r.axis_value), 1e-15);
        if (r.n == 0) {
            EXPECT_NEAR(r.abs_bias, r.abs_bias_unmitigated, 1e-15);
        }
        EXPECT_FALSE(r.abs_bias_fake_square.has_value());
    }
    EXPECT_EQ(rows[2].n, 5u);
    EXPECT_EQ(rows[3].axis_value, 0.4);
}

TEST(BiasSweep, eta_axis_with_fake_nodes) {
    SweepSpec spec;
    spec.noise = NoiseKind::kNonMarkovian;
    spec.axis = SweepAxis::kEta;
    spec.axis_values = default_axis_values(SweepAxis::kEta);
    spec.lambda0 = 0.4;
    spec.families = {SpacingFamily::kTiltedChebyshev};
    spec.ns = {4, 9};
    spec.lambdas = {4.0, 32.0, 256.0};
    spec.fake_square = true;
    auto rows = bias_sweep(spec);
    ASSERT_EQ(rows.size(), 2u * 3u * 101u);
    for (const auto &r : rows) {
        ASSERT_TRUE(r.abs_bias_fake_square.has_value());
    }
    // eta = 0 end of the Lambda = 4, n = 4 block: purely exponential decay.
    EXPECT_NEAR(rows[0].abs_bias,
                std::abs(exact_bias(NoiseModel::non_markovian(0.0, 0.4),
                                    nodes_for_overhead(SpacingFamily::kTiltedChebyshev, 4, 4.0))),
                1e-15);
}

TEST(BiasSweep, validation) {
    SweepSpec spec;
    spec.noise = NoiseKind::kMarkovian;
    spec.axis = SweepAxis::kEta;
    spec.axis_values = {0.5};
    spec.families = {SpacingFamily::kLinear};
    spec.ns = {1};
    spec.lambdas = {4.0};
    EXPECT_THROW(bias_sweep(spec), Error);
    spec.axis = SweepAxis::kLambda0;
    spec.axis_values = {-0.1};
    EXPECT_THROW(bias_sweep(spec), Error);
    spec.axis_values = {0.1};
    spec.lambdas = {1.0};
    EXPECT_THROW(bias_sweep(spec), Error);
}

TEST(BiasSweep, default_axes) {
    auto l0 = default_axis_values(SweepAxis::kLambda0);
    ASSERT_EQ(l0.size(), 50u);
    EXPECT_NEAR(l0.front(), 0.01, 1e-15);
    EXPECT_EQ(l0.back(), 1.0);
    auto eta = default_axis_values(SweepAxis::kEta);
    ASSERT_EQ(eta.size(), 101u);
    EXPECT_EQ(eta.front(), 0.0);
    EXPECT_EQ(eta.back(), 1.0);
}

TEST(DensityGrid, tilted_is_row_maximal_from_n_four) {
    std::vector<size_t> ns;
    for (size_t n = 1; n <= 10; n++) {
        ns.push_back(n);
    }
    std::vector<double> lambdas{2.0, 4.0, 8.0, 32.0, 256.0};
    GridResult g = density_grid(kAllFamilies, ns, lambdas);
    auto at = [&](SpacingFamily f, size_t n, double lambda) {
        for (const auto &r : g.rows) {
            if (r.family == f && r.n == n && r.lambda == lambda) {
                return r.ratio;
            }
        }
        return std::nan("");
    };
    for (size_t n = 4; n <= 10; n++) {
        for (double lambda : lambdas) {
            double tilted = at(SpacingFamily::kTiltedChebyshev, n, lambda);
            EXPECT_GT(tilted, 0.0);
            for (auto f : {SpacingFamily::kChebyshevExtremal, SpacingFamily::kExponential, SpacingFamily::kLinear}) {
                EXPECT_GE(tilted, at(f, n, lambda)) << to_string(f) << " n=" << n << " lambda=" << lambda;
            }
        }
    }
}
