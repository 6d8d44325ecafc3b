#include "zne/cli.h"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <optional>

#include "json.hpp"
#include "zne/analysis.h"
#include "zne/csv.h"
#include "zne/error.h"
#include "zne/estimator.h"
#include "zne/report_json.h"

namespace zne::cli {

namespace {

struct PlanFlags {
    std::string family = "tilted";
    size_t n = 0;
    std::optional<double> lambda;
    std::optional<int64_t> n_tot;
    std::optional<double> n_eff;
    double sigma = 1.0;
    int64_t shot_floor = 1;
};

struct NoiseFlags {
    std::string noise = "markovian";
    double lambda0 = 0.4;
    double eta = 0.0;
    std::string table;
    std::optional<double> e_star;
};

struct Options {
    std::string out_path;

    PlanFlags plan;
    NoiseFlags noise;
    uint64_t seed = 0;
    std::string from_plan;

    std::vector<std::string> families{"all"};
    std::vector<size_t> ns;
    size_t n_max = 0;
    std::vector<double> lambdas;
    std::string axis;
    std::vector<double> axis_values;
    bool fake_square = false;

    size_t verify_n = 2;
    double verify_lambda = 7.0;
    size_t starts = 50;
    double tolerance = 1e-8;
};

/// Result of a command; the payload is written by the caller to --out or stdout.
struct Outcome {
    std::string text;
    int status = kExitOk;
};

std::vector<SpacingFamily> parse_families(const std::vector<std::string> &names) {
    std::vector<SpacingFamily> out;
    for (const auto &name : names) {
        if (name == "all") {
            out.assign(std::begin(kAllFamilies), std::end(kAllFamilies));
            return out;
        }
        out.push_back(parse_family(name));
    }
    return out;
}

NoiseModel build_noise(const NoiseFlags &f) {
    if (f.noise == "markovian") {
        return NoiseModel::markovian(f.lambda0);
    }
    if (f.noise == "nonmarkovian") {
        return NoiseModel::non_markovian(f.eta, f.lambda0);
    }
    if (f.noise == "table") {
        if (f.table.empty()) {
            throw Error(ErrorKind::kInvalidParameter, "--noise table needs --table <csv>");
        }
        return load_tabulated_csv(f.table, f.e_star);
    }
    throw Error(ErrorKind::kInvalidParameter, "unknown noise model '" + f.noise + "'");
}

struct Pipeline {
    NodeSet nodes;
    WeightVector weights;
    ShotPlan plan;
};

Pipeline build_pipeline(const PlanFlags &f) {
    SpacingFamily family = parse_family(f.family);
    if (f.n > 0 && !f.lambda) {
        throw Error(ErrorKind::kInvalidParameter, "--lambda is required for n >= 1");
    }
    NodeSet nodes = nodes_for_overhead(family, f.n, f.lambda.value_or(2.0));
    WeightVector weights = lagrange_weights(nodes);

    int64_t n_tot = 0;
    if (f.n_tot.has_value() == f.n_eff.has_value()) {
        throw Error(ErrorKind::kInvalidParameter, "give exactly one of --ntot and --neff");
    }
    if (f.n_tot) {
        n_tot = *f.n_tot;
    } else {
        double lambda = f.n > 0 ? *f.lambda : 1.0;
        if (!(*f.n_eff > 0.0)) {
            throw Error(ErrorKind::kInvalidParameter, "--neff must be > 0");
        }
        n_tot = std::llround(*f.n_eff * lambda * lambda);
    }
    ShotPlan plan = allocate_shots(weights, n_tot, f.shot_floor);
    return {std::move(nodes), std::move(weights), std::move(plan)};
}

Pipeline pipeline_from_plan(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::kInvalidParameter, "cannot open plan '" + path + "'");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
        std::optional<SpacingFamily> family;
        if (doc.contains("family") && doc["family"].is_string()) {
            family = parse_family(doc["family"].get<std::string>());
        }
        NodeSet nodes = NodeSet::from_values(doc.at("xs").get<std::vector<double>>(), family);
        WeightVector weights = lagrange_weights(nodes);
        auto gammas = doc.at("gammas").get<std::vector<double>>();
        if (gammas.size() != weights.gammas.size()) {
            throw Error(ErrorKind::kShape, "plan gammas do not match its nodes");
        }
        for (size_t j = 0; j < gammas.size(); j++) {
            if (std::abs(gammas[j] - weights.gammas[j]) > 1e-12 * std::abs(weights.gammas[j])) {
                throw Error(ErrorKind::kInvalidParameter, "plan gamma " + std::to_string(j) + " disagrees with its nodes");
            }
        }
        ShotPlan plan;
        plan.shots = doc.at("shots").get<std::vector<int64_t>>();
        if (plan.shots.size() != nodes.size()) {
            throw Error(ErrorKind::kShape, "plan shots do not match its nodes");
        }
        for (int64_t s : plan.shots) {
            plan.n_tot += s;
        }
        plan.overhead = weights.lambda_overhead * weights.lambda_overhead;
        plan.n_eff = static_cast<double>(plan.n_tot) / plan.overhead;
        return {std::move(nodes), std::move(weights), std::move(plan)};
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::kInvalidParameter, std::string("malformed plan: ") + e.what());
    }
}

Outcome cmd_plan(const Options &o) {
    Pipeline p = build_pipeline(o.plan);
    return {plan_to_json(p.nodes, p.weights, p.plan, o.plan.sigma).dump(2) + "\n"};
}

Outcome cmd_simulate(const Options &o, bool sigma_given) {
    double sigma = o.plan.sigma;
    Pipeline p = [&] {
        if (o.from_plan.empty()) {
            return build_pipeline(o.plan);
        }
        if (!sigma_given) {
            std::ifstream in(o.from_plan);
            auto doc = nlohmann::json::parse(in, nullptr, false);
            if (!doc.is_discarded() && doc.contains("sigma") && doc["sigma"].is_number()) {
                sigma = doc["sigma"].get<double>();
            }
        }
        return pipeline_from_plan(o.from_plan);
    }();
    NoiseModel model = build_noise(o.noise);
    MitigationReport report = simulate_experiment(model, p.nodes, p.weights, p.plan, sigma, o.seed);
    return {to_json(report).dump(2) + "\n"};
}

Outcome cmd_grid(const Options &o) {
    auto families = parse_families(o.families);
    std::vector<size_t> ns = o.ns;
    if (ns.empty()) {
        if (o.n_max == 0) {
            throw Error(ErrorKind::kInvalidParameter, "grid needs --nmax or --n");
        }
        for (size_t n = 1; n <= o.n_max; n++) {
            ns.push_back(n);
        }
    }
    if (o.lambdas.empty()) {
        throw Error(ErrorKind::kInvalidParameter, "grid needs --lambdas");
    }
    GridResult grid = density_grid(families, ns, o.lambdas);
    std::ostringstream text;
    write_grid_csv(text, grid);
    return {text.str()};
}

Outcome cmd_sweep(const Options &o) {
    SweepSpec spec;
    if (o.noise.noise == "markovian") {
        spec.noise = NoiseKind::kMarkovian;
    } else if (o.noise.noise == "nonmarkovian") {
        spec.noise = NoiseKind::kNonMarkovian;
    } else {
        throw Error(ErrorKind::kInvalidParameter, "sweep supports markovian and nonmarkovian noise");
    }
    if (o.axis.empty() || o.axis == "lambda0") {
        spec.axis = SweepAxis::kLambda0;
    } else if (o.axis == "eta") {
        spec.axis = SweepAxis::kEta;
    } else {
        throw Error(ErrorKind::kInvalidParameter, "unknown axis '" + o.axis + "'");
    }
    spec.axis_values = o.axis_values.empty() ? default_axis_values(spec.axis) : o.axis_values;
    spec.lambda0 = o.noise.lambda0;
    spec.eta = o.noise.eta;
    spec.families = parse_families(o.families);
    spec.ns = o.ns;
    spec.lambdas = o.lambdas;
    spec.fake_square = o.fake_square;
    auto rows = bias_sweep(spec);
    std::ostringstream text;
    write_bias_csv(text, rows, spec.fake_square);
    return {text.str()};
}

Outcome finish_verify(const std::vector<VerifyRow> &rows) {
    std::ostringstream text;
    write_verify_csv(text, rows);
    bool all_pass = true;
    for (const auto &r : rows) {
        all_pass = all_pass && r.pass;
    }
    return {text.str(), all_pass ? kExitOk : kExitVerificationFailed};
}

Outcome cmd_verify_omega(const Options &o) {
    if (o.n_max < 1) {
        throw Error(ErrorKind::kInvalidParameter, "--nmax must be >= 1");
    }
    std::vector<VerifyRow> rows;
    for (const auto &c : verify_omega_range(o.n_max)) {
        rows.push_back({"omega", c.n, std::nullopt, c.pass, c.max_residual});
    }
    return finish_verify(rows);
}

Outcome cmd_verify_stationarity(const Options &o) {
    if (o.n_max < 1 || o.lambdas.empty()) {
        throw Error(ErrorKind::kInvalidParameter, "stationarity needs --nmax >= 1 and --lambdas");
    }
    std::vector<VerifyRow> rows;
    for (double l : o.lambdas) {
        for (size_t n = 1; n <= o.n_max; n++) {
            auto c = verify_stationarity(n, l, o.tolerance);
            rows.push_back({"stationarity", n, l, c.pass, std::max(c.max_residual, c.max_relation_residual)});
        }
    }
    return finish_verify(rows);
}

Outcome cmd_verify_optimality(const Options &o, std::ostream &err) {
    auto r = verify_optimality(o.verify_n, o.verify_lambda, o.seed, o.starts);
    if (r.verdict == Verdict::kInconclusive) {
        err << "optimality: no start converged; result inconclusive\n";
    }
    double residual = std::max(r.max_node_deviation, std::max(0.0, (r.tilted_cn - r.best_cn) / r.tilted_cn));
    return finish_verify({{"optimality", o.verify_n, o.verify_lambda, r.verdict == Verdict::kPass, residual}});
}

void add_plan_flags(CLI::App *cmd, Options &o) {
    cmd->add_option("--family", o.plan.family, "linear|exponential|chebyshev|tilted")
        ->check(CLI::IsMember({"linear", "exponential", "chebyshev", "tilted"}));
    cmd->add_option("--n", o.plan.n, "Index of the last node (n+1 nodes)");
    cmd->add_option("--lambda", o.plan.lambda, "Overhead root Lambda = sum |gamma_j|");
    auto *ntot = cmd->add_option("--ntot", o.plan.n_tot, "Total measurement budget");
    auto *neff = cmd->add_option("--neff", o.plan.n_eff, "Effective samples; N_tot = N_eff Lambda^2");
    ntot->excludes(neff);
    cmd->add_option("--sigma", o.plan.sigma, "Single-shot standard deviation")->capture_default_str();
    cmd->add_option("--shot-floor", o.plan.shot_floor, "Minimum shots per weighted node")->capture_default_str();
}

void add_noise_flags(CLI::App *cmd, Options &o) {
    cmd->add_option("--noise", o.noise.noise, "markovian|nonmarkovian|table")
        ->check(CLI::IsMember({"markovian", "nonmarkovian", "table"}));
    cmd->add_option("--lambda0", o.noise.lambda0, "Minimal noise strength")->capture_default_str();
    cmd->add_option("--eta", o.noise.eta, "Non-Markovianity in [0, 1]")->capture_default_str();
    cmd->add_option("--table", o.noise.table, "Two-column CSV (x,E) with header");
    cmd->add_option("--estar", o.noise.e_star, "Known zero-noise value of a tabulated curve");
}

void emit(const Outcome &outcome, const std::string &path, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << outcome.text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Error(ErrorKind::kInvalidParameter, "cannot write '" + path + "'");
    }
    file << outcome.text;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Richardson zero-noise extrapolation planner and analysis tool", "zne"};
    app.require_subcommand(1);

    auto *plan = app.add_subcommand("plan", "Solve x1 for the overhead and split the shot budget");
    add_plan_flags(plan, o);

    auto *simulate = app.add_subcommand("simulate", "Run a planned experiment against a noise model");
    add_plan_flags(simulate, o);
    add_noise_flags(simulate, o);
    simulate->add_option("--seed", o.seed, "Shot-noise seed")->capture_default_str();
    simulate->add_option("--from-plan", o.from_plan, "Use nodes and shots from a plan document");

    auto *sweep = app.add_subcommand("sweep", "Bias over lambda0 or eta (CSV)");
    add_noise_flags(sweep, o);
    sweep->add_option("--families", o.families, "Families or 'all'")->delimiter(',');
    sweep->add_option("--n", o.ns, "Node indices")->delimiter(',')->required();
    sweep->add_option("--lambdas", o.lambdas, "Overhead roots")->delimiter(',')->required();
    sweep->add_option("--axis", o.axis, "lambda0|eta")->check(CLI::IsMember({"lambda0", "eta"}));
    sweep->add_option("--axis-values", o.axis_values, "Explicit axis grid")->delimiter(',');
    sweep->add_flag("--fake-square", o.fake_square, "Add the S(x)=x^2 fake-node column");

    auto *grid = app.add_subcommand("grid", "(n+1)!/C_n over families, n and Lambda (CSV)");
    grid->add_option("--families", o.families, "Families or 'all'")->delimiter(',');
    grid->add_option("--nmax", o.n_max, "Use n = 1..nmax");
    grid->add_option("--n", o.ns, "Explicit node indices")->delimiter(',');
    grid->add_option("--lambdas", o.lambdas, "Overhead roots")->delimiter(',')->required();

    auto *verify = app.add_subcommand("verify", "Numerical optimality checks (CSV; exit 2 on failure)");
    verify->require_subcommand(1);
    auto *omega = verify->add_subcommand("omega", "Omega_k identity for n = 1..nmax");
    omega->add_option("--nmax", o.n_max)->required();
    auto *stationarity = verify->add_subcommand("stationarity", "Lagrange conditions at tilted nodes");
    stationarity->add_option("--nmax", o.n_max)->required();
    stationarity->add_option("--lambdas", o.lambdas)->delimiter(',')->required();
    stationarity->add_option("--tol", o.tolerance, "Relative residual threshold")->capture_default_str();
    auto *optimality = verify->add_subcommand("optimality", "Brute-force C_n minimization");
    optimality->add_option("--n", o.verify_n)->required()->check(CLI::Range(2, 4));
    optimality->add_option("--lambda", o.verify_lambda)->required();
    optimality->add_option("--seed", o.seed)->capture_default_str();
    optimality->add_option("--starts", o.starts)->capture_default_str();

    for (auto *cmd : {plan, simulate, sweep, grid, verify}) {
        cmd->add_option("--out", o.out_path, "Output file (default: stdout)");
    }
    for (auto *cmd : {omega, stationarity, optimality}) {
        cmd->add_option("--out", o.out_path, "Output file (default: stdout)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        Outcome outcome;
        if (plan->parsed()) {
            outcome = cmd_plan(o);
        } else if (simulate->parsed()) {
            outcome = cmd_simulate(o, simulate->count("--sigma") > 0);
        } else if (sweep->parsed()) {
            outcome = cmd_sweep(o);
        } else if (grid->parsed()) {
            outcome = cmd_grid(o);
        } else if (omega->parsed()) {
            outcome = cmd_verify_omega(o);
        } else if (stationarity->parsed()) {
            outcome = cmd_verify_stationarity(o);
        } else {
            outcome = cmd_verify_optimality(o, err);
        }
        emit(outcome, o.out_path, out);
        return outcome.status;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv{"zne"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace zne::cli
