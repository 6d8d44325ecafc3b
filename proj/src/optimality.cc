#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "zne/analysis.h"
#include "zne/error.h"

namespace zne {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Nodes 1 + d * (g_1 + ... + g_j) with g_1 = 1 and g_i = exp(u_{i-1}) for i >= 2, where
// the scale d is fixed by the overhead constraint. The shape u has n - 1 free entries.
std::vector<double> nodes_from_shape(const std::vector<double> &u, double lambda_overhead) {
    const size_t n = u.size() + 1;
    std::vector<double> offsets(n + 1, 0.0);
    offsets[1] = 1.0;
    for (size_t i = 2; i <= n; i++) {
        offsets[i] = offsets[i - 1] + std::exp(u[i - 2]);
    }
    auto build = [&](double d) {
        std::vector<double> xs(n + 1);
        for (size_t j = 0; j <= n; j++) {
            xs[j] = 1.0 + d * offsets[j];
        }
        return xs;
    };
    auto overhead = [&](double d) {
        try {
            return lagrange_weights(NodeSet::from_values(build(d))).lambda_overhead;
        } catch (const Error &e) {
            if (e.kind() == ErrorKind::kDegenerateNodes) {
                return kInf;
            }
            throw;
        }
    };
    return build(solve_gap_for_overhead(overhead, lambda_overhead));
}

double log_product(const std::vector<double> &xs) {
    double s = 0.0;
    for (double x : xs) {
        s += std::log(x);
    }
    return s;
}

double objective(const std::vector<double> &u, double lambda_overhead) {
    for (double v : u) {
        if (!(std::abs(v) < 30.0)) {
            return kInf;
        }
    }
    try {
        return log_product(nodes_from_shape(u, lambda_overhead));
    } catch (const Error &) {
        return kInf;
    }
}

struct Minimum {
    std::vector<double> u;
    double value = kInf;
    bool converged = false;
};

// Downhill simplex; the dimension here is at most 3.
template <class F>
Minimum nelder_mead(F &&f, std::vector<double> start, double step) {
    const size_t dim = start.size();
    std::vector<std::vector<double>> simplex(dim + 1, start);
    for (size_t i = 0; i < dim; i++) {
        simplex[i + 1][i] += step;
    }
    std::vector<double> values(dim + 1);
    for (size_t i = 0; i <= dim; i++) {
        values[i] = f(simplex[i]);
    }

    auto affine = [&](const std::vector<double> &a, const std::vector<double> &b, double t) {
        std::vector<double> out(dim);
        for (size_t i = 0; i < dim; i++) {
            out[i] = a[i] + t * (b[i] - a[i]);
        }
        return out;
    };

    std::vector<size_t> order(dim + 1);
    Minimum result;
    for (int iter = 0; iter < 5000; iter++) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
        const size_t best = order.front();
        const size_t worst = order.back();
        const size_t second = order[dim - 1];

        double size = 0.0;
        for (size_t i = 0; i <= dim; i++) {
            for (size_t k = 0; k < dim; k++) {
                size = std::max(size, std::abs(simplex[i][k] - simplex[best][k]));
            }
        }
        if (std::isfinite(values[best]) && size < 1e-11) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (size_t i = 0; i <= dim; i++) {
            if (i == worst) {
                continue;
            }
            for (size_t k = 0; k < dim; k++) {
                centroid[k] += simplex[i][k] / static_cast<double>(dim);
            }
        }

        auto reflected = affine(centroid, simplex[worst], -1.0);
        double fr = f(reflected);
        if (fr < values[best]) {
            auto expanded = affine(centroid, simplex[worst], -2.0);
            double fe = f(expanded);
            if (fe < fr) {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second]) {
            simplex[worst] = reflected;
            values[worst] = fr;
            continue;
        }
        bool outside = fr < values[worst];
        auto contracted = outside ? affine(centroid, reflected, 0.5) : affine(centroid, simplex[worst], 0.5);
        double fc = f(contracted);
        if (fc < std::min(fr, values[worst])) {
            simplex[worst] = contracted;
            values[worst] = fc;
            continue;
        }
        for (size_t i = 0; i <= dim; i++) {
            if (i != best) {
                simplex[i] = affine(simplex[best], simplex[i], 0.5);
                values[i] = f(simplex[i]);
            }
        }
    }
    size_t best = static_cast<size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    result.u = simplex[best];
    result.value = values[best];
    return result;
}

}  // namespace

OptimalityResult verify_optimality(size_t n, double lambda_overhead, uint64_t seed, size_t starts) {
    if (n < 2 || n > 4) {
        throw Error(ErrorKind::kInvalidParameter, "brute-force optimality check supports n in {2, 3, 4}");
    }
    if (!(lambda_overhead > 1.0)) {
        throw Error(ErrorKind::kInvalidParameter, "overhead must be > 1");
    }
    if (starts == 0) {
        throw Error(ErrorKind::kInvalidParameter, "need at least one start");
    }

    OptimalityResult result;
    NodeSet tilted = nodes_for_overhead(SpacingFamily::kTiltedChebyshev, n, lambda_overhead);
    result.tilted_nodes.assign(tilted.xs().begin(), tilted.xs().end());
    result.tilted_cn = lagrange_weights(tilted).cn;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> spread(-2.0, 2.0);
    std::vector<std::vector<double>> initial(starts, std::vector<double>(n - 1));
    for (auto &u : initial) {
        for (double &v : u) {
            v = spread(rng);
        }
    }

    std::vector<Minimum> minima(starts);
    auto f = [&](const std::vector<double> &u) { return objective(u, lambda_overhead); };
    const auto count = static_cast<std::ptrdiff_t>(starts);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; i++) {
        minima[i] = nelder_mead(f, initial[i], 0.5);
    }

    const Minimum *best = nullptr;
    for (const auto &m : minima) {
        result.converged_starts += m.converged;
        if (std::isfinite(m.value) && (best == nullptr || m.value < best->value)) {
            best = &m;
        }
    }
    if (best == nullptr || result.converged_starts == 0) {
        result.verdict = Verdict::kInconclusive;
        return result;
    }

    result.best_nodes = nodes_from_shape(best->u, lambda_overhead);
    result.best_cn = std::exp(log_product(result.best_nodes));
    for (size_t j = 0; j <= n; j++) {
        result.max_node_deviation = std::max(
            result.max_node_deviation, std::abs(result.best_nodes[j] - result.tilted_nodes[j]) / result.tilted_nodes[j]);
    }
    const bool no_better = result.best_cn >= result.tilted_cn * (1.0 - 1e-6);
    const bool matches = result.max_node_deviation <= 1e-4;
    result.verdict = no_better && matches ? Verdict::kPass : Verdict::kFail;
    return result;
}

}  // namespace zne
