#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "zne/allocation.h"
#include "zne/noise.h"
#include "zne/nodes.h"

namespace zne {

struct MitigationReport {
    double estimate = 0.0;
    double exact_estimate = 0.0;  // R_n from noise-free node values
    std::optional<double> bias;   // exact_estimate - E*, when E* is known
    double std_dev = 0.0;         // sigma / sqrt(N_eff)
    NodeSet nodes;
    WeightVector weights;
    ShotPlan plan;

    bool operator==(const MitigationReport &) const = default;
};

/// Monotone reparameterization of the amplification axis with S(0) = 0, S(1) = 1.
/// Extrapolating on fake nodes S(x_j) changes the approximation basis from
/// {1, x, ..., x^n} to {1, S, ..., S^n}.
class FakeNodeMap {
public:
    enum class Kind { kIdentity, kSquare };

    static FakeNodeMap identity() { return FakeNodeMap(Kind::kIdentity); }
    static FakeNodeMap square() { return FakeNodeMap(Kind::kSquare); }

    Kind kind() const { return kind_; }
    double forward(double x) const;
    /// Throws kInvalidMap when y is outside the image of [0, inf).
    double inverse(double y) const;

private:
    explicit FakeNodeMap(Kind kind) : kind_(kind) {}
    Kind kind_;
};

/// sum_j values[j] gamma_j with compensated accumulation.
double richardson_estimate(std::span<const double> values, const WeightVector &weights);

/// R_n - E* from exact model values.
double exact_bias(const NoiseModel &model, const NodeSet &nodes);

/// Per node, draws the sample mean evaluate(model, x_j) + N(0, sigma^2 / N_j) from a
/// generator seeded with `seed`, and extrapolates. Bit-identical for equal inputs.
MitigationReport simulate_experiment(const NoiseModel &model, const NodeSet &nodes, const ShotPlan &plan,
                                     double sigma, uint64_t seed);

/// Same as above with precomputed weights (skips the O(n^2) weight evaluation in
/// Monte Carlo loops). `weights` must belong to `nodes`.
MitigationReport simulate_experiment(const NoiseModel &model, const NodeSet &nodes, const WeightVector &weights,
                                     const ShotPlan &plan, double sigma, uint64_t seed);

/// Extrapolates curve(S^{-1}(x~)) on the fake nodes x~ and returns the estimate at 0.
double fake_node_estimate(const std::function<double(double)> &curve, const NodeSet &fake_nodes,
                          const FakeNodeMap &map);
double fake_node_estimate(const NoiseModel &model, const NodeSet &fake_nodes, const FakeNodeMap &map);

}  // namespace zne
