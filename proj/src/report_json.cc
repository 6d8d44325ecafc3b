#include "zne/report_json.h"

#include <cmath>
#include <string>

namespace zne {

nlohmann::json plan_to_json(const NodeSet &nodes, const WeightVector &weights, const ShotPlan &plan, double sigma) {
    nlohmann::json doc;
    doc["family"] = nodes.family() ? nlohmann::json(std::string(to_string(*nodes.family()))) : nlohmann::json(nullptr);
    doc["n"] = nodes.n();
    doc["xs"] = std::vector<double>(nodes.xs().begin(), nodes.xs().end());
    doc["gammas"] = weights.gammas;
    doc["shots"] = plan.shots;
    doc["n_tot"] = plan.n_tot;
    doc["n_eff"] = plan.n_eff;
    doc["lambda_overhead"] = weights.lambda_overhead;
    doc["overhead"] = plan.overhead;
    doc["cn"] = weights.cn;
    doc["sigma"] = sigma;
    doc["std_dev"] = sigma / std::sqrt(plan.n_eff);
    return doc;
}

nlohmann::json to_json(const MitigationReport &report) {
    nlohmann::json doc;
    doc["estimate"] = report.estimate;
    doc["exact_estimate"] = report.exact_estimate;
    doc["bias"] = report.bias ? nlohmann::json(*report.bias) : nlohmann::json(nullptr);
    doc["std_dev"] = report.std_dev;
    doc["family"] = report.nodes.family() ? nlohmann::json(std::string(to_string(*report.nodes.family())))
                                          : nlohmann::json(nullptr);
    doc["nodes"] = std::vector<double>(report.nodes.xs().begin(), report.nodes.xs().end());
    doc["gammas"] = report.weights.gammas;
    doc["shots"] = report.plan.shots;
    doc["n_tot"] = report.plan.n_tot;
    doc["lambda_overhead"] = report.weights.lambda_overhead;
    doc["n_eff"] = report.plan.n_eff;
    return doc;
}

}  // namespace zne
