#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zne/allocation.h"
#include "zne/noise.h"
#include "zne/nodes.h"

// Sweeps, grids and numerical checks of the node-optimality claims.
//
// Every kernel that loops over independent rows has an OpenMP version and a
// `_serial` reference. Both produce rows in the same order and bit-identical values;
// the tests compare them and bench/ times them.

namespace zne {

struct GridRow {
    SpacingFamily family;
    size_t n = 0;
    double lambda = 0.0;
    double cn = 0.0;
    double ratio = 0.0;  // (n+1)! / C_n
    std::string error;   // non-empty when the row could not be computed
};

struct GridResult {
    std::vector<GridRow> rows;
};

/// (family, n, Lambda) -> C_n and (n+1)!/C_n, ordered family-major, then n, then Lambda.
/// Throws only if every row fails.
GridResult density_grid(std::span<const SpacingFamily> families, std::span<const size_t> ns,
                        std::span<const double> lambdas);
GridResult density_grid_serial(std::span<const SpacingFamily> families, std::span<const size_t> ns,
                               std::span<const double> lambdas);

struct NHat {
    size_t n = 0;
    double ratio = 0.0;
    std::vector<std::string> skipped;  // solver failures, one message per skipped n
};

/// argmax over n in 1..n_max of (n+1)!/C_n at fixed overhead; ties go to the smaller n.
NHat n_hat(SpacingFamily family, double lambda_overhead, size_t n_max);

enum class NoiseKind { kMarkovian, kNonMarkovian };
enum class SweepAxis { kLambda0, kEta };

std::string_view to_string(SweepAxis axis);

struct SweepSpec {
    NoiseKind noise = NoiseKind::kMarkovian;
    SweepAxis axis = SweepAxis::kLambda0;
    std::vector<double> axis_values;
    double lambda0 = 0.4;  // fixed value when sweeping eta
    double eta = 0.0;      // fixed value when sweeping lambda0 (non-Markovian only)
    std::vector<SpacingFamily> families;
    std::vector<size_t> ns;
    std::vector<double> lambdas;
    bool fake_square = false;
};

/// 50 log-spaced lambda0 values on [0.01, 1], or 101 eta values on [0, 1].
std::vector<double> default_axis_values(SweepAxis axis);

/// Throws kInvalidParameter when a range is out of its domain.
void validate(const SweepSpec &spec);

struct BiasRow {
    SpacingFamily family;
    size_t n = 0;
    double lambda = 0.0;
    SweepAxis axis = SweepAxis::kLambda0;
    double axis_value = 0.0;
    double abs_bias = 0.0;
    double abs_bias_unmitigated = 0.0;
    std::optional<double> abs_bias_fake_square;
    std::string error;
};

/// Rows ordered family, n, Lambda, axis value. Throws only if every row fails.
std::vector<BiasRow> bias_sweep(const SweepSpec &spec);
std::vector<BiasRow> bias_sweep_serial(const SweepSpec &spec);

/// |bias| for one configuration; n = 0 gives the unmitigated bias.
double abs_bias_at(const NoiseModel &model, SpacingFamily family, size_t n, double lambda_overhead);

struct OmegaCheck {
    size_t n = 0;
    std::vector<double> omegas;  // Omega_k, k = 0..n
    double max_residual = 0.0;   // relative to the closed-form values
    bool pass = false;
};

/// Relative tolerance on Omega_k: 1e-8, relaxed to 1e-6 above n = 200.
double omega_tolerance(size_t n);

/// Evaluates Omega_k for the tilted nodes of index n against 2n(n+1) (k = 0) and
/// -2(n+1) (k > 0).
OmegaCheck verify_omega(size_t n);
std::vector<OmegaCheck> verify_omega_range(size_t n_max);
std::vector<OmegaCheck> verify_omega_range_serial(size_t n_max);

struct StationarityCheck {
    size_t n = 0;
    double lambda = 0.0;
    double max_residual = 0.0;           // Lagrange condition mu phi_k vs {-n C_n, C_n}
    double max_relation_residual = 0.0;  // x_j gamma_j vs (-1)^j x_0 gamma_0 (2 cos^2(j alpha) - delta_j0)
    bool pass = false;
};

/// First-order optimality of tilted Chebyshev nodes for min C_n s.t. sum|gamma| = Lambda.
StationarityCheck verify_stationarity(size_t n, double lambda_overhead, double tolerance = 1e-8);

enum class Verdict { kPass, kFail, kInconclusive };
std::string_view to_string(Verdict verdict);

struct OptimalityResult {
    Verdict verdict = Verdict::kInconclusive;
    double tilted_cn = 0.0;
    double best_cn = 0.0;
    std::vector<double> best_nodes;
    std::vector<double> tilted_nodes;
    double max_node_deviation = 0.0;  // relative, best-found vs tilted
    size_t converged_starts = 0;
};

/// Brute-force minimization of C_n at fixed overhead from `starts` seeded random
/// starting shapes. Pass when nothing beats tilted C_n by more than 1e-6 relative and
/// the best nodes match tilted nodes to 1e-4 relative.
OptimalityResult verify_optimality(size_t n, double lambda_overhead, uint64_t seed = 0, size_t starts = 50);

struct VarianceEstimate {
    double mean = 0.0;
    double variance = 0.0;  // unbiased sample variance of the estimate
    size_t runs = 0;
};

/// Repeats simulate_experiment with seeds first_seed .. first_seed + runs - 1.
VarianceEstimate monte_carlo_variance(const NoiseModel &model, const NodeSet &nodes, const ShotPlan &plan,
                                      double sigma, size_t runs, uint64_t first_seed = 0);
VarianceEstimate monte_carlo_variance_serial(const NoiseModel &model, const NodeSet &nodes, const ShotPlan &plan,
                                             double sigma, size_t runs, uint64_t first_seed = 0);

}  // namespace zne
