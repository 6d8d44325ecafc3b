#include "zne/nodes.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "zne/error.h"

namespace zne {

std::string_view to_string(SpacingFamily family) {
    switch (family) {
        case SpacingFamily::kLinear: return "linear";
        case SpacingFamily::kExponential: return "exponential";
        case SpacingFamily::kChebyshevExtremal: return "chebyshev";
        case SpacingFamily::kTiltedChebyshev: return "tilted";
    }
    return "unknown";
}

SpacingFamily parse_family(std::string_view name) {
    for (SpacingFamily f : kAllFamilies) {
        if (to_string(f) == name) {
            return f;
        }
    }
    throw Error(ErrorKind::kInvalidParameter, "unknown spacing family '" + std::string(name) + "'");
}

NodeSet NodeSet::from_values(std::vector<double> xs, std::optional<SpacingFamily> family) {
    if (xs.empty()) {
        throw Error(ErrorKind::kInvalidParameter, "node set is empty");
    }
    if (xs[0] != 1.0) {
        throw Error(ErrorKind::kInvalidParameter, "first node must be exactly 1, got " + std::to_string(xs[0]));
    }
    for (size_t j = 1; j < xs.size(); j++) {
        if (!std::isfinite(xs[j])) {
            throw Error(ErrorKind::kInvalidParameter, "node " + std::to_string(j) + " is not finite");
        }
        double gap = xs[j] - xs[j - 1];
        if (std::abs(gap) < kDegenerateGap * std::abs(xs[j])) {
            throw Error(ErrorKind::kDegenerateNodes,
                        "nodes " + std::to_string(j - 1) + " and " + std::to_string(j) + " coincide");
        }
        if (gap < 0) {
            throw Error(ErrorKind::kInvalidParameter, "nodes must be strictly increasing");
        }
    }
    return NodeSet(std::move(xs), family);
}

namespace {

// Above this many factors the direct products can leave the double range.
constexpr size_t kDirectProductMaxN = 8;

}  // namespace

WeightVector lagrange_weights(const NodeSet &nodes) {
    auto xs = nodes.xs();
    const size_t count = xs.size();
    WeightVector w;
    w.gammas.resize(count);

    // NodeSet already rejects coincident nodes (kDegenerateNodes), so no factor divides by zero.
    if (nodes.n() <= kDirectProductMaxN) {
        for (size_t j = 0; j < count; j++) {
            double p = 1.0;
            for (size_t k = 0; k < count; k++) {
                if (k != j) {
                    p *= xs[k] / (xs[k] - xs[j]);
                }
            }
            w.gammas[j] = p;
        }
    } else {
        for (size_t j = 0; j < count; j++) {
            double log_mag = 0.0;
            bool negative = false;
            for (size_t k = 0; k < count; k++) {
                if (k == j) {
                    continue;
                }
                double num = xs[k];
                double den = xs[k] - xs[j];
                log_mag += std::log(std::abs(num)) - std::log(std::abs(den));
                negative ^= (num < 0) != (den < 0);
            }
            double mag = std::exp(log_mag);
            w.gammas[j] = negative ? -mag : mag;
        }
    }

    w.lambda_overhead = 0.0;
    w.log_cn = 0.0;
    for (size_t j = 0; j < count; j++) {
        w.lambda_overhead += std::abs(w.gammas[j]);
        w.log_cn += std::log(xs[j]);
    }
    w.cn = std::exp(w.log_cn);
    return w;
}

NodeSet make_nodes(SpacingFamily family, size_t n, double x1) {
    if (n == 0) {
        return NodeSet::from_values({1.0}, family);
    }
    if (!(x1 > 1.0) || !std::isfinite(x1)) {
        throw Error(ErrorKind::kInvalidParameter, "x1 must be finite and > 1, got " + std::to_string(x1));
    }
    std::vector<double> xs(n + 1);
    xs[0] = 1.0;
    const double d = x1 - 1.0;
    const double pi = std::numbers::pi;
    for (size_t j = 1; j <= n; j++) {
        const double jd = static_cast<double>(j);
        switch (family) {
            case SpacingFamily::kLinear:
                xs[j] = 1.0 + jd * d;
                break;
            case SpacingFamily::kExponential:
                xs[j] = std::pow(x1, jd);
                break;
            case SpacingFamily::kChebyshevExtremal: {
                double a = pi / (2.0 * static_cast<double>(n));
                double s = std::sin(jd * a) / std::sin(a);
                xs[j] = 1.0 + s * s * d;
                break;
            }
            case SpacingFamily::kTiltedChebyshev: {
                double a = pi / (2.0 * static_cast<double>(n + 1));
                double s = std::sin(jd * a) / std::sin(a);
                xs[j] = 1.0 + s * s * d;
                break;
            }
        }
    }
    // sin(a)/sin(a) may round away from 1; pin the defining node.
    xs[1] = x1;
    return NodeSet::from_values(std::move(xs), family);
}

double overhead_of(SpacingFamily family, size_t n, double x1) {
    return lagrange_weights(make_nodes(family, n, x1)).lambda_overhead;
}

double solve_x1_for_overhead(SpacingFamily family, size_t n, double lambda_target) {
    if (n == 0) {
        throw Error(ErrorKind::kInvalidParameter, "overhead cannot be tuned with a single node (n = 0)");
    }
    auto overhead = [&](double d) {
        try {
            return overhead_of(family, n, 1.0 + d);
        } catch (const Error &e) {
            if (e.kind() == ErrorKind::kDegenerateNodes) {
                return std::numeric_limits<double>::infinity();
            }
            throw;
        }
    };
    return 1.0 + solve_gap_for_overhead(overhead, lambda_target);
}

NodeSet nodes_for_overhead(SpacingFamily family, size_t n, double lambda_target) {
    if (n == 0) {
        return make_nodes(family, 0, 2.0);
    }
    return make_nodes(family, n, solve_x1_for_overhead(family, n, lambda_target));
}

double cn_ratio(const WeightVector &weights) {
    const size_t count = weights.gammas.size();
    if (count <= 21) {
        double fact = 1.0;
        for (size_t k = 2; k <= count; k++) {
            fact *= static_cast<double>(k);
        }
        if (std::isfinite(weights.cn)) {
            return fact / weights.cn;
        }
    }
    return std::exp(std::lgamma(static_cast<double>(count) + 1.0) - weights.log_cn);
}

}  // namespace zne
