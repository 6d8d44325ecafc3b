#include "zne/analysis.h"

#include <cmath>
#include <numbers>

#include "zne/error.h"
#include "zne/estimator.h"
#include "zne/summation.h"

namespace zne {

std::string_view to_string(SweepAxis axis) {
    return axis == SweepAxis::kLambda0 ? "lambda0" : "eta";
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::kPass: return "pass";
        case Verdict::kFail: return "fail";
        case Verdict::kInconclusive: return "inconclusive";
    }
    return "unknown";
}

namespace {

struct GridCell {
    SpacingFamily family;
    size_t n;
    double lambda;
};

std::vector<GridCell> grid_cells(std::span<const SpacingFamily> families, std::span<const size_t> ns,
                                 std::span<const double> lambdas) {
    std::vector<GridCell> cells;
    cells.reserve(families.size() * ns.size() * lambdas.size());
    for (SpacingFamily f : families) {
        for (size_t n : ns) {
            for (double l : lambdas) {
                cells.push_back({f, n, l});
            }
        }
    }
    return cells;
}

GridRow grid_row(const GridCell &cell) {
    GridRow row{cell.family, cell.n, cell.lambda, 0.0, 0.0, {}};
    try {
        // A single node is the unmitigated estimator: C_0 = 1 whatever Lambda was asked for.
        NodeSet nodes = nodes_for_overhead(cell.family, cell.n, cell.lambda);
        WeightVector w = lagrange_weights(nodes);
        row.cn = w.cn;
        row.ratio = cn_ratio(w);
    } catch (const std::exception &e) {
        row.error = e.what();
    }
    return row;
}

template <class Rows>
void require_some_success(const Rows &rows, const char *what) {
    if (rows.empty()) {
        return;
    }
    for (const auto &r : rows) {
        if (r.error.empty()) {
            return;
        }
    }
    throw Error(ErrorKind::kNoSolution, std::string("every ") + what + " row failed; first: " + rows.front().error);
}

}  // namespace

GridResult density_grid_serial(std::span<const SpacingFamily> families, std::span<const size_t> ns,
                               std::span<const double> lambdas) {
    auto cells = grid_cells(families, ns, lambdas);
    GridResult result;
    result.rows.reserve(cells.size());
    for (const auto &cell : cells) {
        result.rows.push_back(grid_row(cell));
    }
    require_some_success(result.rows, "grid");
    return result;
}

GridResult density_grid(std::span<const SpacingFamily> families, std::span<const size_t> ns,
                        std::span<const double> lambdas) {
    auto cells = grid_cells(families, ns, lambdas);
    GridResult result;
    result.rows.resize(cells.size());
    const auto count = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; i++) {
        result.rows[i] = grid_row(cells[i]);
    }
    require_some_success(result.rows, "grid");
    return result;
}

NHat n_hat(SpacingFamily family, double lambda_overhead, size_t n_max) {
    if (!(lambda_overhead > 1.0)) {
        throw Error(ErrorKind::kInvalidParameter, "overhead must be > 1");
    }
    if (n_max < 1) {
        throw Error(ErrorKind::kInvalidParameter, "n_max must be >= 1");
    }
    NHat best;
    bool found = false;
    for (size_t n = 1; n <= n_max; n++) {
        try {
            double ratio = cn_ratio(lagrange_weights(nodes_for_overhead(family, n, lambda_overhead)));
            if (!found || ratio > best.ratio) {
                best.n = n;
                best.ratio = ratio;
                found = true;
            }
        } catch (const Error &e) {
            best.skipped.push_back("n=" + std::to_string(n) + ": " + e.what());
        }
    }
    if (!found) {
        throw Error(ErrorKind::kNoSolution, "no n in 1.." + std::to_string(n_max) + " admits the requested overhead");
    }
    return best;
}

std::vector<double> default_axis_values(SweepAxis axis) {
    std::vector<double> values;
    if (axis == SweepAxis::kLambda0) {
        constexpr int kPoints = 50;
        const double lo = std::log(0.01);
        const double hi = std::log(1.0);
        for (int i = 0; i < kPoints; i++) {
            values.push_back(std::exp(lo + (hi - lo) * i / (kPoints - 1)));
        }
        values.back() = 1.0;
    } else {
        for (int i = 0; i <= 100; i++) {
            values.push_back(i / 100.0);
        }
    }
    return values;
}

void validate(const SweepSpec &spec) {
    if (spec.noise == NoiseKind::kMarkovian && spec.axis == SweepAxis::kEta) {
        throw Error(ErrorKind::kInvalidParameter, "Markovian noise has no eta axis");
    }
    if (spec.families.empty() || spec.ns.empty() || spec.lambdas.empty() || spec.axis_values.empty()) {
        throw Error(ErrorKind::kInvalidParameter, "sweep needs families, n values, overheads and axis values");
    }
    for (double l : spec.lambdas) {
        if (!(l > 1.0)) {
            throw Error(ErrorKind::kInvalidParameter, "all overheads must be > 1");
        }
    }
    auto check_lambda0 = [](double v) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(ErrorKind::kInvalidParameter, "lambda0 values must be > 0");
        }
    };
    auto check_eta = [](double v) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw Error(ErrorKind::kInvalidParameter, "eta values must lie in [0, 1]");
        }
    };
    for (double v : spec.axis_values) {
        spec.axis == SweepAxis::kLambda0 ? check_lambda0(v) : check_eta(v);
    }
    if (spec.axis == SweepAxis::kEta) {
        check_lambda0(spec.lambda0);
    } else if (spec.noise == NoiseKind::kNonMarkovian) {
        check_eta(spec.eta);
    }
}

double abs_bias_at(const NoiseModel &model, SpacingFamily family, size_t n, double lambda_overhead) {
    return std::abs(exact_bias(model, nodes_for_overhead(family, n, lambda_overhead)));
}

namespace {

struct SweepCell {
    size_t config;  // index into the (family, n, Lambda) node cache
    double axis_value;
};

struct NodeConfig {
    SpacingFamily family;
    size_t n;
    double lambda;
    std::optional<NodeSet> nodes;
    std::string error;
};

std::vector<NodeConfig> sweep_configs(const SweepSpec &spec) {
    std::vector<NodeConfig> configs;
    for (SpacingFamily f : spec.families) {
        for (size_t n : spec.ns) {
            for (double l : spec.lambdas) {
                NodeConfig c{f, n, l, std::nullopt, {}};
                try {
                    c.nodes = nodes_for_overhead(f, n, l);
                } catch (const std::exception &e) {
                    c.error = e.what();
                }
                configs.push_back(std::move(c));
            }
        }
    }
    return configs;
}

std::vector<SweepCell> sweep_cells(const SweepSpec &spec, size_t config_count) {
    std::vector<SweepCell> cells;
    cells.reserve(config_count * spec.axis_values.size());
    for (size_t c = 0; c < config_count; c++) {
        for (double v : spec.axis_values) {
            cells.push_back({c, v});
        }
    }
    return cells;
}

NoiseModel sweep_model(const SweepSpec &spec, double axis_value) {
    if (spec.noise == NoiseKind::kMarkovian) {
        return NoiseModel::markovian(axis_value);
    }
    return spec.axis == SweepAxis::kLambda0 ? NoiseModel::non_markovian(spec.eta, axis_value)
                                            : NoiseModel::non_markovian(axis_value, spec.lambda0);
}

BiasRow sweep_row(const SweepSpec &spec, const NodeConfig &config, double axis_value) {
    BiasRow row{config.family, config.n, config.lambda, spec.axis, axis_value, 0.0, 0.0, std::nullopt, config.error};
    if (!config.nodes) {
        return row;
    }
    try {
        NoiseModel model = sweep_model(spec, axis_value);
        const double e_star = *model.e_star();
        row.abs_bias = std::abs(exact_bias(model, *config.nodes));
        row.abs_bias_unmitigated = std::abs(evaluate(model, 1.0) - e_star);
        if (spec.fake_square) {
            row.abs_bias_fake_square =
                std::abs(fake_node_estimate(model, *config.nodes, FakeNodeMap::square()) - e_star);
        }
    } catch (const std::exception &e) {
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::vector<BiasRow> bias_sweep_serial(const SweepSpec &spec) {
    validate(spec);
    auto configs = sweep_configs(spec);
    auto cells = sweep_cells(spec, configs.size());
    std::vector<BiasRow> rows;
    rows.reserve(cells.size());
    for (const auto &cell : cells) {
        rows.push_back(sweep_row(spec, configs[cell.config], cell.axis_value));
    }
    require_some_success(rows, "sweep");
    return rows;
}

std::vector<BiasRow> bias_sweep(const SweepSpec &spec) {
    validate(spec);
    auto configs = sweep_configs(spec);
    auto cells = sweep_cells(spec, configs.size());
    std::vector<BiasRow> rows(cells.size());
    const auto count = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < count; i++) {
        rows[i] = sweep_row(spec, configs[cells[i].config], cells[i].axis_value);
    }
    require_some_success(rows, "sweep");
    return rows;
}

double omega_tolerance(size_t n) {
    return n > 200 ? 1e-6 : 1e-8;
}

OmegaCheck verify_omega(size_t n) {
    if (n < 1) {
        throw Error(ErrorKind::kInvalidParameter, "Omega check needs n >= 1");
    }
    const double alpha = std::numbers::pi / (2.0 * static_cast<double>(n + 1));
    // sin^2(j a) - sin^2(k a) = sin((j-k) a) sin((j+k) a); tabulate sin(m a) for m in [0, 2n].
    std::vector<double> sines(2 * n + 1);
    std::vector<double> cos2(n + 1);
    for (size_t m = 0; m <= 2 * n; m++) {
        sines[m] = std::sin(static_cast<double>(m) * alpha);
    }
    for (size_t j = 0; j <= n; j++) {
        double c = std::cos(static_cast<double>(j) * alpha);
        cos2[j] = c * c;
    }

    OmegaCheck check;
    check.n = n;
    check.omegas.resize(n + 1);
    const double nd = static_cast<double>(n);
    for (size_t k = 0; k <= n; k++) {
        CompensatedSum acc;
        const double dk = k == 0 ? 1.0 : 0.0;
        for (size_t j = 0; j <= n; j++) {
            if (j == k) {
                continue;
            }
            const double dj = j == 0 ? 1.0 : 0.0;
            double diff = j > k ? sines[j - k] : -sines[k - j];
            double denom = diff * sines[j + k];
            acc.add((2.0 * cos2[j] + 2.0 * cos2[k] - dk - dj) / denom);
        }
        check.omegas[k] = acc.value();
        double expected = k == 0 ? 2.0 * nd * (nd + 1.0) : -2.0 * (nd + 1.0);
        check.max_residual = std::max(check.max_residual, std::abs(check.omegas[k] - expected) / std::abs(expected));
    }
    check.pass = check.max_residual <= omega_tolerance(n);
    return check;
}

std::vector<OmegaCheck> verify_omega_range_serial(size_t n_max) {
    std::vector<OmegaCheck> checks;
    checks.reserve(n_max);
    for (size_t n = 1; n <= n_max; n++) {
        checks.push_back(verify_omega(n));
    }
    return checks;
}

std::vector<OmegaCheck> verify_omega_range(size_t n_max) {
    std::vector<OmegaCheck> checks(n_max);
    const auto count = static_cast<std::ptrdiff_t>(n_max);
    // Cost grows like n^2, so hand out work dynamically from the expensive end.
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = count - 1; i >= 0; i--) {
        checks[i] = verify_omega(static_cast<size_t>(i) + 1);
    }
    return checks;
}

StationarityCheck verify_stationarity(size_t n, double lambda_overhead, double tolerance) {
    if (n < 1) {
        throw Error(ErrorKind::kInvalidParameter, "stationarity check needs n >= 1");
    }
    NodeSet nodes = nodes_for_overhead(SpacingFamily::kTiltedChebyshev, n, lambda_overhead);
    WeightVector w = lagrange_weights(nodes);
    auto xs = nodes.xs();
    const auto &g = w.gammas;
    const double alpha = std::numbers::pi / (2.0 * static_cast<double>(n + 1));
    const double sin_a = std::sin(alpha);
    const double nd = static_cast<double>(n);

    StationarityCheck check;
    check.n = n;
    check.lambda = lambda_overhead;

    auto alt = [](size_t j) { return j % 2 == 0 ? 1.0 : -1.0; };

    for (size_t j = 0; j <= n; j++) {
        double c = std::cos(static_cast<double>(j) * alpha);
        double expected = alt(j) * xs[0] * g[0] * (2.0 * c * c - (j == 0 ? 1.0 : 0.0));
        double got = xs[j] * g[j];
        check.max_relation_residual = std::max(check.max_relation_residual, std::abs(got - expected) / std::abs(expected));
    }

    // mu / C_n; dividing through by C_n keeps large n finite.
    const double mu_over_cn = -(xs[1] - 1.0) / (2.0 * sin_a * sin_a * xs[0] * g[0] * (nd + 1.0));
    for (size_t k = 0; k <= n; k++) {
        CompensatedSum phi;
        for (size_t j = 0; j <= n; j++) {
            if (j == k) {
                continue;
            }
            phi.add((alt(j) * xs[j] * g[j] + alt(k) * xs[k] * g[k]) / (xs[j] - xs[k]));
        }
        double got = mu_over_cn * phi.value();
        double expected = k == 0 ? -nd : 1.0;
        check.max_residual = std::max(check.max_residual, std::abs(got - expected) / std::abs(expected));
    }
    check.pass = check.max_residual <= tolerance && check.max_relation_residual <= tolerance;
    return check;
}

namespace {

VarianceEstimate summarize(const std::vector<double> &estimates) {
    VarianceEstimate out;
    out.runs = estimates.size();
    if (estimates.empty()) {
        return out;
    }
    CompensatedSum sum;
    for (double e : estimates) {
        sum.add(e);
    }
    out.mean = sum.value() / static_cast<double>(estimates.size());
    if (estimates.size() > 1) {
        CompensatedSum sq;
        for (double e : estimates) {
            sq.add((e - out.mean) * (e - out.mean));
        }
        out.variance = sq.value() / static_cast<double>(estimates.size() - 1);
    }
    return out;
}

}  // namespace

VarianceEstimate monte_carlo_variance_serial(const NoiseModel &model, const NodeSet &nodes, const ShotPlan &plan,
                                             double sigma, size_t runs, uint64_t first_seed) {
    WeightVector w = lagrange_weights(nodes);
    std::vector<double> estimates(runs);
    for (size_t i = 0; i < runs; i++) {
        estimates[i] = simulate_experiment(model, nodes, w, plan, sigma, first_seed + i).estimate;
    }
    return summarize(estimates);
}

VarianceEstimate monte_carlo_variance(const NoiseModel &model, const NodeSet &nodes, const ShotPlan &plan,
                                      double sigma, size_t runs, uint64_t first_seed) {
    WeightVector w = lagrange_weights(nodes);
    // Surface input errors before entering the parallel region.
    (void)simulate_experiment(model, nodes, w, plan, sigma, first_seed);
    std::vector<double> estimates(runs);
    const auto count = static_cast<std::ptrdiff_t>(runs);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; i++) {
        estimates[i] = simulate_experiment(model, nodes, w, plan, sigma, first_seed + static_cast<uint64_t>(i)).estimate;
    }
    return summarize(estimates);
}

}  // namespace zne
