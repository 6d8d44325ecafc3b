#include "zne/estimator.h"

#include <cmath>
#include <random>
#include <string>

#include "zne/error.h"
#include "zne/summation.h"

namespace zne {

double FakeNodeMap::forward(double x) const {
    switch (kind_) {
        case Kind::kIdentity: return x;
        case Kind::kSquare: return x * x;
    }
    return x;
}

double FakeNodeMap::inverse(double y) const {
    if (!(y >= 0.0) || !std::isfinite(y)) {
        throw Error(ErrorKind::kInvalidMap, "fake node " + std::to_string(y) + " has no preimage in [0, inf)");
    }
    switch (kind_) {
        case Kind::kIdentity: return y;
        case Kind::kSquare: return std::sqrt(y);
    }
    return y;
}

double richardson_estimate(std::span<const double> values, const WeightVector &weights) {
    if (values.size() != weights.gammas.size()) {
        throw Error(ErrorKind::kShape, "got " + std::to_string(values.size()) + " values for " +
                                           std::to_string(weights.gammas.size()) + " weights");
    }
    return compensated_dot(values, weights.gammas);
}

namespace {

std::vector<double> exact_values(const NoiseModel &model, const NodeSet &nodes) {
    std::vector<double> values(nodes.size());
    for (size_t j = 0; j < nodes.size(); j++) {
        values[j] = evaluate(model, nodes[j]);
    }
    return values;
}

}  // namespace

double exact_bias(const NoiseModel &model, const NodeSet &nodes) {
    auto e_star = model.e_star();
    if (!e_star) {
        throw Error(ErrorKind::kBiasUnavailable, "model " + model.describe() + " has no known zero-noise value");
    }
    WeightVector w = lagrange_weights(nodes);
    auto values = exact_values(model, nodes);
    CompensatedSum acc;
    acc.add(richardson_estimate(values, w));
    acc.add(-*e_star);
    return acc.value();
}

MitigationReport simulate_experiment(const NoiseModel &model, const NodeSet &nodes, const WeightVector &weights,
                                     const ShotPlan &plan, double sigma, uint64_t seed) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorKind::kInvalidParameter, "sigma must be finite and >= 0");
    }
    if (plan.shots.size() != nodes.size() || weights.gammas.size() != nodes.size()) {
        throw Error(ErrorKind::kShape, "plan, weights and nodes disagree on the node count");
    }
    for (size_t j = 0; j < nodes.size(); j++) {
        if (weights.gammas[j] != 0.0 && plan.shots[j] <= 0) {
            throw Error(ErrorKind::kDivisionDegenerate, "node " + std::to_string(j) + " has weight but no shots");
        }
    }

    auto exact = exact_values(model, nodes);
    std::vector<double> sampled(exact);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (size_t j = 0; j < nodes.size(); j++) {
        double z = gauss(rng);
        if (plan.shots[j] > 0) {
            sampled[j] += sigma / std::sqrt(static_cast<double>(plan.shots[j])) * z;
        }
    }

    MitigationReport report{
        .estimate = richardson_estimate(sampled, weights),
        .exact_estimate = richardson_estimate(exact, weights),
        .bias = std::nullopt,
        .std_dev = sigma / std::sqrt(plan.n_eff),
        .nodes = nodes,
        .weights = weights,
        .plan = plan,
    };
    if (auto e_star = model.e_star()) {
        CompensatedSum acc;
        acc.add(report.exact_estimate);
        acc.add(-*e_star);
        report.bias = acc.value();
    }
    return report;
}

MitigationReport simulate_experiment(const NoiseModel &model, const NodeSet &nodes, const ShotPlan &plan,
                                     double sigma, uint64_t seed) {
    return simulate_experiment(model, nodes, lagrange_weights(nodes), plan, sigma, seed);
}

double fake_node_estimate(const std::function<double(double)> &curve, const NodeSet &fake_nodes,
                          const FakeNodeMap &map) {
    std::vector<double> values(fake_nodes.size());
    double previous = -1.0;
    for (size_t j = 0; j < fake_nodes.size(); j++) {
        double real = map.inverse(fake_nodes[j]);
        if (!(real > previous)) {
            throw Error(ErrorKind::kInvalidMap, "map is not increasing over the node range");
        }
        previous = real;
        values[j] = curve(real);
    }
    return richardson_estimate(values, lagrange_weights(fake_nodes));
}

double fake_node_estimate(const NoiseModel &model, const NodeSet &fake_nodes, const FakeNodeMap &map) {
    return fake_node_estimate([&](double x) { return evaluate(model, x); }, fake_nodes, map);
}

}  // namespace zne
