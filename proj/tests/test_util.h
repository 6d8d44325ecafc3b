#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "zne/nodes.h"

namespace zne::testing {

/// Lagrange weights at 0 from the moment conditions sum_j g_j x_j^k = delta_k0,
/// solved by Gaussian elimination in long double. Independent of lagrange_weights.
inline std::vector<double> vandermonde_weights(const std::vector<double> &xs) {
    const size_t m = xs.size();
    std::vector<std::vector<long double>> a(m, std::vector<long double>(m + 1, 0.0L));
    for (size_t k = 0; k < m; k++) {
        for (size_t j = 0; j < m; j++) {
            a[k][j] = std::pow(static_cast<long double>(xs[j]), static_cast<long double>(k));
        }
        a[k][m] = k == 0 ? 1.0L : 0.0L;
    }
    for (size_t c = 0; c < m; c++) {
        size_t pivot = c;
        for (size_t r = c + 1; r < m; r++) {
            if (std::abs(a[r][c]) > std::abs(a[pivot][c])) {
                pivot = r;
            }
        }
        std::swap(a[c], a[pivot]);
        for (size_t r = 0; r < m; r++) {
            if (r == c) {
                continue;
            }
            long double f = a[r][c] / a[c][c];
            for (size_t k = c; k <= m; k++) {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    std::vector<double> g(m);
    for (size_t j = 0; j < m; j++) {
        g[j] = static_cast<double>(a[j][m] / a[j][j]);
    }
    return g;
}

/// Random (family, n, Lambda) cases from a fixed seed.
struct RandomCase {
    SpacingFamily family;
    size_t n;
    double lambda;
};

inline RandomCase random_case(std::mt19937_64 &rng, size_t n_min, size_t n_max, double lambda_lo, double lambda_hi) {
    std::uniform_int_distribution<size_t> fam(0, 3);
    std::uniform_int_distribution<size_t> nd(n_min, n_max);
    std::uniform_real_distribution<double> logl(std::log(lambda_lo), std::log(lambda_hi));
    return {kAllFamilies[fam(rng)], nd(rng), std::exp(logl(rng))};
}

/// Horner evaluation; coefficients in increasing degree.
inline double polyval(const std::vector<double> &c, double x) {
    double v = 0.0;
    for (size_t i = c.size(); i-- > 0;) {
        v = v * x + c[i];
    }
    return v;
}

}  // namespace zne::testing
