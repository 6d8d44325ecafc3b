#include "zne/noise.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "zne/error.h"

using namespace zne;

TEST(Noise, zero_noise_values) {
    EXPECT_EQ(evaluate(NoiseModel::markovian(0.4), 0.0), 1.0);
    EXPECT_EQ(NoiseModel::markovian(0.4).e_star(), 1.0);
    for (double eta : {0.0, 0.3, 1.0}) {
        auto m = NoiseModel::non_markovian(eta, 0.4);
        EXPECT_NEAR(evaluate(m, 0.0), std::cos(2.0), 1e-15);
        EXPECT_EQ(m.e_star(), std::cos(2.0));
    }
    EXPECT_NEAR(std::cos(2.0), -0.41615, 1e-5);
}

TEST(Noise, markovian_limit_of_toy_model) {
    EXPECT_NEAR(evaluate(NoiseModel::non_markovian(0.0, 0.4), 2.0), std::cos(2.0) * std::exp(-0.8), 1e-15);
    for (double x = 0.0; x <= 10.0; x += 0.25) {
        EXPECT_NEAR(evaluate(NoiseModel::non_markovian(0.0, 0.7), x),
                    std::cos(2.0) * evaluate(NoiseModel::markovian(0.7), x), 1e-15);
    }
}

TEST(Noise, fully_coherent_model_is_even) {
    for (double l = 0.0; l <= 8.0; l += 0.37) {
        EXPECT_NEAR(non_markovian_closed_form(1.0, l), non_markovian_closed_form(1.0, -l), 1e-15);
    }
}

TEST(Noise, parameter_validation) {
    EXPECT_THROW(NoiseModel::markovian(0.0), Error);
    EXPECT_THROW(NoiseModel::non_markovian(1.5, 0.4), Error);
    EXPECT_THROW(NoiseModel::non_markovian(0.5, -1.0), Error);
    EXPECT_THROW(evaluate(NoiseModel::markovian(0.4), -1.0), Error);
}

TEST(Noise, tabulated_interpolation_and_refusal) {
    auto m = NoiseModel::tabulated({{1.0, 0.8}, {2.0, 0.6}, {4.0, 0.2}}, 1.0);
    EXPECT_DOUBLE_EQ(evaluate(m, 1.0), 0.8);
    EXPECT_DOUBLE_EQ(evaluate(m, 1.5), 0.7);
    EXPECT_DOUBLE_EQ(evaluate(m, 3.0), 0.4);
    EXPECT_DOUBLE_EQ(evaluate(m, 4.0), 0.2);
    try {
        evaluate(m, 0.5);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kExtrapolationRefused);
    }
    EXPECT_THROW(evaluate(m, 4.5), Error);
    EXPECT_THROW(NoiseModel::tabulated({{1.0, 0.8}, {1.0, 0.6}}), Error);
    EXPECT_FALSE(NoiseModel::tabulated({{1.0, 0.8}, {2.0, 0.6}}).e_star().has_value());
}

TEST(Noise, tabulated_csv) {
    std::istringstream in("x,E\n1,0.5\r\n2,0.25\n\n3,0.125\n");
    auto m = load_tabulated_csv(in, 1.0);
    EXPECT_DOUBLE_EQ(evaluate(m, 2.5), 0.1875);
    std::istringstream bad("x,E\n1;0.5\n");
    EXPECT_THROW(load_tabulated_csv(bad), Error);
    std::istringstream text("x,E\n1,abc\n");
    EXPECT_THROW(load_tabulated_csv(text), Error);
    EXPECT_THROW(load_tabulated_csv(std::string("/nonexistent/table.csv")), Error);
}

TEST(NoiseOracle, free_precession_without_noise) {
    EXPECT_NEAR(ode_oracle_nonmarkovian(0.5, 0.4, 0.0), std::cos(2.0), 1e-9);
}

TEST(NoiseOracle, matches_closed_form_in_both_limits) {
    EXPECT_NEAR(ode_oracle_nonmarkovian(1.0, 0.4, 1.0), evaluate(NoiseModel::non_markovian(1.0, 0.4), 1.0), 1e-8);
    EXPECT_NEAR(ode_oracle_nonmarkovian(0.0, 0.4, 1.0), std::cos(2.0) * std::exp(-0.4), 1e-8);
}

TEST(NoiseOracle, other_observation_times) {
    for (double tau : {0.3, 0.7, 2.5}) {
        for (double eta : {0.0, 0.5, 1.0}) {
            EXPECT_NEAR(ode_oracle_nonmarkovian(eta, 1.0, 3.0, tau), non_markovian_closed_form(eta, 3.0, tau), 1e-8)
                << "tau=" << tau << " eta=" << eta;
        }
    }
}

TEST(NoiseOracle, density_matrix_stays_physical) {
    for (double eta : {0.0, 0.5, 1.0}) {
        OracleTrace t = integrate_two_qubit_model(eta, 1.0, 10.0);
        EXPECT_LE(t.max_trace_error, 1e-9);
        EXPECT_LE(t.max_hermiticity_error, 1e-9);
        EXPECT_GT(t.accepted_steps, 0u);
    }
}

TEST(NoiseOracle, agrees_on_coarse_grid) {
    for (double eta : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        for (int i = 0; i < 10; i++) {
            double lx = 10.0 * i / 9.0;
            EXPECT_NEAR(ode_oracle_nonmarkovian(eta, 1.0, lx), non_markovian_closed_form(eta, lx), 1e-8);
        }
    }
}
