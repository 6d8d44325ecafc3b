#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zne/nodes.h"

namespace zne {

/// Measurement counts per node for a fixed total budget.
struct ShotPlan {
    std::vector<int64_t> shots;
    int64_t n_tot = 0;
    double n_eff = 0.0;     // n_tot / overhead
    double overhead = 1.0;  // Lambda^2

    bool operator==(const ShotPlan &) const = default;
};

/// Splits n_tot proportionally to |gamma_j| (the variance-minimizing split), rounds by
/// largest remainder so the total is exact, then lifts any nonzero-weight node below
/// `shot_floor` by taking shots from the largest allocation.
ShotPlan allocate_shots(const WeightVector &weights, int64_t n_tot, int64_t shot_floor = 1);

/// sum_j gamma_j^2 sigma^2 / N_j.
double estimator_variance(const WeightVector &weights, const ShotPlan &plan, double sigma);
double estimator_variance(const WeightVector &weights, const ShotPlan &plan, std::span<const double> sigmas);

/// sigma^2 Lambda^2 / N_tot: the variance of the unrounded optimal split.
double ideal_variance(const WeightVector &weights, double n_tot, double sigma);

}  // namespace zne
