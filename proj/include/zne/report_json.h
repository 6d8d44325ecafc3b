#pragma once

#include "json.hpp"
#include "zne/estimator.h"

namespace zne {

/// estimate, bias (null when unknown), std_dev, nodes, gammas, shots, lambda_overhead,
/// n_eff, plus exact_estimate, n_tot and the family tag.
nlohmann::json to_json(const MitigationReport &report);

/// The planning document: nodes, weights and shot split for an external executor.
nlohmann::json plan_to_json(const NodeSet &nodes, const WeightVector &weights, const ShotPlan &plan, double sigma);

}  // namespace zne
