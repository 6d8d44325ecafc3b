#include "zne/allocation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "zne/error.h"
#include "zne/summation.h"

namespace zne {

ShotPlan allocate_shots(const WeightVector &weights, int64_t n_tot, int64_t shot_floor) {
    const size_t count = weights.gammas.size();
    if (shot_floor < 0) {
        throw Error(ErrorKind::kInvalidParameter, "shot floor must be non-negative");
    }
    size_t active = 0;
    for (double g : weights.gammas) {
        active += g != 0.0;
    }
    const int64_t needed = std::max<int64_t>(static_cast<int64_t>(count), shot_floor * static_cast<int64_t>(active));
    if (n_tot < needed) {
        throw Error(ErrorKind::kInsufficientBudget,
                    "budget " + std::to_string(n_tot) + " below the minimum " + std::to_string(needed));
    }

    const double lambda = weights.lambda_overhead;
    std::vector<int64_t> shots(count);
    std::vector<double> remainder(count);
    int64_t assigned = 0;
    for (size_t j = 0; j < count; j++) {
        double target = static_cast<double>(n_tot) * std::abs(weights.gammas[j]) / lambda;
        double base = std::floor(target);
        shots[j] = static_cast<int64_t>(base);
        remainder[j] = target - base;
        assigned += shots[j];
    }

    // Largest remainder; ties go to the lower index.
    std::vector<size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return remainder[a] > remainder[b]; });
    int64_t left = n_tot - assigned;
    for (size_t i = 0; left > 0; i = (i + 1) % count, left--) {
        shots[order[i]]++;
    }
    for (size_t i = 0; left < 0; i = (i + 1) % count, left++) {
        shots[order[count - 1 - i]]--;
    }

    for (size_t j = 0; j < count; j++) {
        if (weights.gammas[j] == 0.0) {
            continue;
        }
        while (shots[j] < shot_floor) {
            size_t donor = static_cast<size_t>(std::max_element(shots.begin(), shots.end()) - shots.begin());
            int64_t take = std::min(shot_floor - shots[j], shots[donor] - shot_floor);
            if (donor == j || take <= 0) {
                throw Error(ErrorKind::kInsufficientBudget, "cannot honour the shot floor");
            }
            shots[donor] -= take;
            shots[j] += take;
        }
    }

    ShotPlan plan;
    plan.shots = std::move(shots);
    plan.n_tot = n_tot;
    plan.overhead = lambda * lambda;
    plan.n_eff = static_cast<double>(n_tot) / plan.overhead;
    return plan;
}

double estimator_variance(const WeightVector &weights, const ShotPlan &plan, std::span<const double> sigmas) {
    if (plan.shots.size() != weights.gammas.size() || sigmas.size() != weights.gammas.size()) {
        throw Error(ErrorKind::kShape, "weights, shots and sigmas must have the same length");
    }
    CompensatedSum acc;
    for (size_t j = 0; j < weights.gammas.size(); j++) {
        double g = weights.gammas[j];
        if (g == 0.0 || sigmas[j] == 0.0) {
            continue;
        }
        if (plan.shots[j] <= 0) {
            throw Error(ErrorKind::kDivisionDegenerate, "node " + std::to_string(j) + " has weight but no shots");
        }
        acc.add(g * g * sigmas[j] * sigmas[j] / static_cast<double>(plan.shots[j]));
    }
    return acc.value();
}

double estimator_variance(const WeightVector &weights, const ShotPlan &plan, double sigma) {
    std::vector<double> sigmas(weights.gammas.size(), sigma);
    if (sigma == 0.0) {
        // Still reject unusable plans, even though the result would be zero.
        for (size_t j = 0; j < sigmas.size() && j < plan.shots.size(); j++) {
            if (weights.gammas[j] != 0.0 && plan.shots[j] <= 0) {
                throw Error(ErrorKind::kDivisionDegenerate, "node " + std::to_string(j) + " has weight but no shots");
            }
        }
    }
    return estimator_variance(weights, plan, sigmas);
}

double ideal_variance(const WeightVector &weights, double n_tot, double sigma) {
    return sigma * sigma * weights.lambda_overhead * weights.lambda_overhead / n_tot;
}

}  // namespace zne
