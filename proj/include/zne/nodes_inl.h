#pragma once

#include <cmath>
#include <string>

#include "zne/error.h"

namespace zne {

inline constexpr double kMaxBracketX1 = 1e9;

template <class OverheadOfGap>
double solve_gap_for_overhead(OverheadOfGap &&overhead, double lambda_target) {
    if (!(lambda_target > 1.0) || !std::isfinite(lambda_target)) {
        throw Error(ErrorKind::kInvalidParameter,
                    "overhead target must be finite and > 1, got " + std::to_string(lambda_target));
    }
    // overhead(d) decreases from +inf (d -> 0) to 1 (d -> inf).
    double lo = 1.0;
    double hi = 1.0;
    if (overhead(1.0) >= lambda_target) {
        while (overhead(hi) >= lambda_target) {
            lo = hi;
            hi *= 2.0;
            if (1.0 + hi > kMaxBracketX1) {
                throw Error(ErrorKind::kNoSolution,
                            "overhead " + std::to_string(lambda_target) + " not reached below x1 = 1e9");
            }
        }
    } else {
        while (overhead(lo) < lambda_target) {
            hi = lo;
            lo *= 0.5;
            if (1.0 + lo == 1.0) {
                throw Error(ErrorKind::kNoSolution,
                            "overhead " + std::to_string(lambda_target) + " needs nodes closer than machine precision");
            }
        }
    }
    for (int iter = 0; iter < 200 && hi > lo * (1.0 + 1e-15); iter++) {
        double mid = std::sqrt(lo * hi);
        if (!(mid > lo && mid < hi)) {
            break;
        }
        if (overhead(mid) >= lambda_target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double lo_err = std::abs(overhead(lo) - lambda_target);
    double hi_err = std::abs(overhead(hi) - lambda_target);
    return lo_err <= hi_err ? lo : hi;
}

}  // namespace zne
