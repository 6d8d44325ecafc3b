#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "zne/error.h"

namespace zne {

struct Dopri5Options {
    double atol = 1e-10;
    double rtol = 1e-10;
    double initial_step = 1e-3;
    size_t max_steps = 1000000;
};

struct Dopri5Stats {
    size_t accepted = 0;
    size_t rejected = 0;
};

/// Dormand-Prince 5(4) with FSAL and a PI-free standard controller.
///
/// State must support +, -, scalar *, and `error_norm(err, y0, y1, opt)` must return the
/// scaled max-norm of the local error estimate. `observe(t, y)` runs after every
/// accepted step.
template <class State, class Rhs, class ErrorNorm, class Observer>
State integrate_dopri5(Rhs &&rhs, State y, double t0, double t1, const Dopri5Options &opt, ErrorNorm &&error_norm,
                       Observer &&observe, Dopri5Stats *stats = nullptr) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - b_hat
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    Dopri5Stats local;
    double t = t0;
    double h = std::min(opt.initial_step, t1 - t0);
    State k1 = rhs(t, y);
    while (t < t1) {
        if (local.accepted + local.rejected >= opt.max_steps) {
            throw Error(ErrorKind::kNumericalIntegration, "step budget exhausted");
        }
        if (t + h > t1) {
            h = t1 - t;
        }
        State k2 = rhs(t + c2 * h, y + (h * a21) * k1);
        State k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        State k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        State k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        State k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        State y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        State k7 = rhs(t + h, y_new);
        State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double norm = error_norm(err, y, y_new, opt);
        if (!std::isfinite(norm)) {
            throw Error(ErrorKind::kNumericalIntegration, "non-finite error estimate");
        }
        if (norm <= 1.0) {
            t = (t1 - t <= h) ? t1 : t + h;
            y = y_new;
            k1 = k7;
            local.accepted++;
            observe(t, y);
        } else {
            local.rejected++;
        }
        double factor = norm == 0.0 ? 5.0 : 0.9 * std::pow(norm, -0.2);
        h *= std::clamp(factor, 0.2, 5.0);
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
            throw Error(ErrorKind::kNumericalIntegration, "step size underflow");
        }
    }
    if (stats != nullptr) {
        *stats = local;
    }
    return y;
}

}  // namespace zne
